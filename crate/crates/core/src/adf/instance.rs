use std::collections::HashSet;

use serde::Serialize;

use super::xreal::XReal;
use super::{AdfError, AdfNum};
use crate::scalar::Rational;

/// Three odd-length lists of distinct values. Index `0` and `k + 1` of each
/// list read as `-inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdfInstance<T> {
    lists: [Vec<T>; 3],
}

impl<T: AdfNum> AdfInstance<T> {
    pub fn new(lists: [Vec<T>; 3]) -> Result<Self, AdfError> {
        for (i, l) in lists.iter().enumerate() {
            if l.len() % 2 == 0 {
                return Err(AdfError::EvenLength { list: i + 1, len: l.len() });
            }
            let distinct: HashSet<&T> = l.iter().collect();
            if distinct.len() != l.len() {
                return Err(AdfError::RepeatedValue { list: i + 1 });
            }
        }
        Ok(AdfInstance { lists })
    }

    pub fn lists(&self) -> &[Vec<T>; 3] {
        &self.lists
    }

    /// Length `k_i` of list `i` (0-based list index).
    pub fn k(&self, i: usize) -> usize {
        self.lists[i].len()
    }

    /// Entry `j` of list `i`, `j` in `0..=k + 1`, with `-inf` padding.
    pub fn y(&self, i: usize, j: usize) -> XReal<T> {
        if j == 0 || j > self.k(i) {
            XReal::NegInf
        } else {
            XReal::Finite(self.lists[i][j - 1].clone())
        }
    }

    /// The consecutive pair `{y_p, y_(p+1)}` of list `i`.
    pub fn pair(&self, i: usize, p: usize) -> [XReal<T>; 2] {
        [self.y(i, p), self.y(i, p + 1)]
    }

    /// `|y_p - y_(p+1)|`, `None` when infinite.
    pub fn gap(&self, i: usize, p: usize) -> Option<T> {
        match (self.y(i, p), self.y(i, p + 1)) {
            (XReal::Finite(a), XReal::Finite(b)) => Some((a - b).abs()),
            _ => None,
        }
    }

    /// `sum_j (-1)^(j-1) y_(i,j)` for one list.
    pub fn list_sum(&self, i: usize) -> T {
        self.lists[i]
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (j, v)| if j % 2 == 0 { acc + v.clone() } else { acc - v.clone() })
    }

    /// Alternating sum over all three lists.
    pub fn alternating_sum(&self) -> T {
        (0..3).fold(T::zero(), |acc, i| acc + self.list_sum(i))
    }

    /// The instance with its lists reordered: list `i` of the result is list
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        AdfInstance { lists: perm.map(|i| self.lists[i].clone()) }
    }

    pub fn map<U: AdfNum>(&self, f: impl Fn(&T) -> U) -> AdfInstance<U> {
        AdfInstance { lists: [0, 1, 2].map(|i| self.lists[i].iter().map(&f).collect()) }
    }
}

impl AdfInstance<i64> {
    pub fn to_rational(&self) -> AdfInstance<Rational> {
        self.map(|v| Rational::from_integer((*v).into()))
    }
}

/// All ordered pairs `(i, i')` of distinct list indices together with the
/// remaining index.
pub fn ordered_pairs() -> [(usize, usize, usize); 6] {
    [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)]
}
