//! Winding profiles as exact step functions.
//!
//! A profile is `W(y) = sum_k w_k H(s_k - y)` with integer weights and
//! `H(u) = 1, 1/2, 0` for `u > 0, = 0, < 0`. Point values are half-integers,
//! so they are reported doubled.

use std::collections::BTreeMap;

use super::cells::V12Partition;
use super::instance::AdfInstance;
use super::xreal::XReal;
use super::AdfNum;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingProfile<T> {
    /// Breakpoints in increasing order with their non-zero weights.
    atoms: Vec<(T, i64)>,
}

/// Position of an atom of a profile's level sets: a breakpoint, or the open
/// plateau immediately to its right. `LeftEnd` is the plateau before the first
/// breakpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom<T> {
    LeftEnd,
    Point(T),
    RightOf(T),
}

impl<T: AdfNum> WindingProfile<T> {
    pub fn from_atoms(atoms: impl IntoIterator<Item = (T, i64)>) -> Self {
        let mut merged: BTreeMap<T, i64> = BTreeMap::new();
        for (s, w) in atoms {
            *merged.entry(s).or_insert(0) += w;
        }
        WindingProfile { atoms: merged.into_iter().filter(|(_, w)| *w != 0).collect() }
    }

    pub fn atoms(&self) -> &[(T, i64)] {
        &self.atoms
    }

    pub fn breakpoints(&self) -> Vec<T> {
        self.atoms.iter().map(|(s, _)| s.clone()).collect()
    }

    /// Value near `-inf`.
    pub fn left_limit(&self) -> i64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    /// Plateau values: before the first breakpoint, then after each one.
    pub fn plateaus(&self) -> Vec<i64> {
        let mut v = self.left_limit();
        let mut out = vec![v];
        for (_, w) in &self.atoms {
            v -= w;
            out.push(v);
        }
        out
    }

    /// Twice the value at `y`.
    pub fn value2(&self, y: &XReal<T>) -> i64 {
        self.atoms
            .iter()
            .map(|(s, w)| {
                let s = XReal::Finite(s.clone());
                w * match s.cmp(y) {
                    std::cmp::Ordering::Greater => 2,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Less => 0,
                }
            })
            .sum()
    }

    pub fn value2_at(&self, y: &T) -> i64 {
        self.value2(&XReal::Finite(y.clone()))
    }

    /// Value on the open plateau just right of `y`.
    pub fn right_of(&self, y: &T) -> i64 {
        self.atoms.iter().filter(|(s, _)| s > y).map(|(_, w)| w).sum()
    }

    /// Value on the open plateau just left of `y`.
    pub fn left_of(&self, y: &T) -> i64 {
        self.atoms.iter().filter(|(s, _)| s >= y).map(|(_, w)| w).sum()
    }

    /// Twice the value of `y -> W(-y)` at an atom of the reflected profile.
    pub fn reflected_value2(&self, atom: &Atom<T>) -> i64 {
        match atom {
            Atom::LeftEnd => 0,
            Atom::Point(y) => self.value2_at(&-y.clone()),
            Atom::RightOf(y) => 2 * self.left_of(&-y.clone()),
        }
    }

    /// Twice the value at an atom.
    pub fn atom_value2(&self, atom: &Atom<T>) -> i64 {
        match atom {
            Atom::LeftEnd => 2 * self.left_limit(),
            Atom::Point(y) => self.value2_at(y),
            Atom::RightOf(y) => 2 * self.right_of(y),
        }
    }

    /// `int_t^inf W(y) dy`, assuming `W` vanishes near `+inf`.
    pub fn integral_from(&self, t: &T) -> T {
        self.atoms.iter().fold(T::zero(), |acc, (s, w)| {
            if s > t {
                acc + T::from_i64(*w).expect("small weight") * (s.clone() - t.clone())
            } else {
                acc
            }
        })
    }

    /// `int_-inf^t (1 - W(y)) dy`, assuming `W` tends to `1` near `-inf`.
    pub fn complement_integral_to(&self, t: &T) -> T {
        self.atoms.iter().fold(T::zero(), |acc, (s, w)| {
            if s < t {
                acc + T::from_i64(*w).expect("small weight") * (t.clone() - s.clone())
            } else {
                acc
            }
        })
    }
}

/// Sorted atoms covering the whole line for the given breakpoints.
pub fn atoms_of<T: AdfNum>(mut points: Vec<T>) -> Vec<Atom<T>> {
    points.sort();
    points.dedup();
    let mut out = vec![Atom::LeftEnd];
    for p in points {
        out.push(Atom::Point(p.clone()));
        out.push(Atom::RightOf(p));
    }
    out
}

/// `W_i(y) = 1/2 + 1/2 sum_j (-1)^(j-1) sgn(y_(i,j) - y)`.
pub fn winding_profile_wi<T: AdfNum>(inst: &AdfInstance<T>, i: usize) -> WindingProfile<T> {
    WindingProfile::from_atoms(
        inst.lists()[i].iter().enumerate().map(|(j, v)| (v.clone(), if j % 2 == 0 { 1 } else { -1 })),
    )
}

/// `W_(ii')(y) = 1/2 + 1/2 sum_(j,j') (-1)^(j+j') sgn(y_(i,j) + y_(i',j') - y)`.
pub fn winding_profile_wii<T: AdfNum>(inst: &AdfInstance<T>, i: usize, i2: usize) -> WindingProfile<T> {
    let mut atoms = Vec::new();
    for (j, u) in inst.lists()[i].iter().enumerate() {
        for (j2, v) in inst.lists()[i2].iter().enumerate() {
            atoms.push((u.clone() + v.clone(), if (j + j2) % 2 == 0 { 1 } else { -1 }));
        }
    }
    WindingProfile::from_atoms(atoms)
}

/// The winding profile of lists 1 and 2 restricted to the cells of `V^0`.
/// Cells with an infinite coordinate sum to `-inf` and contribute nothing.
pub fn winding_profile_w12_0<T: AdfNum>(inst: &AdfInstance<T>, part: &V12Partition) -> WindingProfile<T> {
    WindingProfile::from_atoms(part.v0.iter().filter_map(|&(a, b)| {
        let s = inst.y(0, a).checked_add(&inst.y(1, b))?;
        s.finite().map(|s| (s.clone(), if (a + b) % 2 == 0 { 1 } else { -1 }))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(a: &[i64], b: &[i64], c: &[i64]) -> AdfInstance<i64> {
        AdfInstance::new([a.to_vec(), b.to_vec(), c.to_vec()]).unwrap()
    }

    #[test]
    fn single_point_profile() {
        let w = winding_profile_wi(&inst(&[0], &[1], &[1]), 0);
        assert_eq!(w.plateaus(), vec![1, 0]);
        assert_eq!(w.value2_at(&0), 1);
    }

    #[test]
    fn three_point_profile() {
        let w = winding_profile_wi(&inst(&[0, 2, 3], &[1], &[1]), 0);
        assert_eq!(w.plateaus(), vec![1, 0, 1, 0]);
        for y in [0, 2, 3] {
            assert_eq!(w.value2_at(&y), 1);
        }
        let bad = winding_profile_wi(&inst(&[-1, -4, -2], &[1], &[1]), 0);
        assert_eq!(bad.right_of(&-4), 2);
    }

    #[test]
    fn integrals() {
        let w = winding_profile_wi(&inst(&[5], &[1], &[1]), 0);
        assert_eq!(w.integral_from(&-10), 15);
        assert_eq!(w.complement_integral_to(&10), 5);
    }

    #[test]
    fn pair_profile_of_singletons() {
        let w = winding_profile_wii(&inst(&[2], &[3], &[1]), 0, 1);
        assert_eq!(w.breakpoints(), vec![5]);
        assert_eq!(w.plateaus(), vec![1, 0]);
    }
}
