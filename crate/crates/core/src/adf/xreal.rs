use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use super::AdfNum;

/// A point of the extended line `[-inf, +inf]`. The derived order puts
/// `NegInf` first and `PosInf` last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XReal<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: AdfNum> XReal<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            XReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XReal::Finite(_))
    }

    /// Sign in `{-1, 0, 1}`; infinities have sign `-1` and `+1`.
    pub fn sgn(&self) -> i32 {
        match self {
            XReal::NegInf => -1,
            XReal::PosInf => 1,
            XReal::Finite(v) => match v.cmp(&T::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
        }
    }

    /// Sum, or `None` for `(+inf) + (-inf)`.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        use XReal::*;
        match (self, other) {
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (Finite(a), Finite(b)) => Some(Finite(a.clone() + b.clone())),
        }
    }

    pub fn map<U>(&self, f: impl FnOnce(&T) -> U) -> XReal<U> {
        match self {
            XReal::NegInf => XReal::NegInf,
            XReal::PosInf => XReal::PosInf,
            XReal::Finite(v) => XReal::Finite(f(v)),
        }
    }
}

impl<T: AdfNum> Neg for XReal<T> {
    type Output = XReal<T>;
    fn neg(self) -> Self {
        match self {
            XReal::NegInf => XReal::PosInf,
            XReal::PosInf => XReal::NegInf,
            XReal::Finite(v) => XReal::Finite(-v),
        }
    }
}

impl<T: AdfNum> From<T> for XReal<T> {
    fn from(v: T) -> Self {
        XReal::Finite(v)
    }
}

impl<T: fmt::Display> fmt::Display for XReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XReal::NegInf => write!(f, "-inf"),
            XReal::PosInf => write!(f, "+inf"),
            XReal::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_arithmetic() {
        let a: XReal<i64> = XReal::Finite(3);
        assert!(XReal::NegInf < a && a < XReal::PosInf);
        assert_eq!(a.checked_add(&XReal::NegInf), Some(XReal::NegInf));
        assert_eq!(XReal::<i64>::PosInf.checked_add(&XReal::NegInf), None);
        assert_eq!(-XReal::<i64>::NegInf, XReal::PosInf);
        assert_eq!(XReal::Finite(-2i64).sgn(), -1);
        assert_eq!(XReal::Finite(0i64).sgn(), 0);
    }
}
