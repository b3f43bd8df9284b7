use serde::Serialize;

use super::xreal::XReal;
use super::{AdfError, AdfNum};

/// Which axiom of the non-crossing definition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NcsViolation {
    /// Both `+inf` and `-inf` occur among the members.
    MixedInfinities,
    /// Some choice of one member per pair sums to zero.
    ZeroSum,
    /// The signed count of positive sums does not cancel.
    NoCancellation,
}

/// Checks the three axioms for `pairs`; `Ok(())` means non-crossing sums.
pub fn ncs_check<T: AdfNum>(pairs: &[[XReal<T>; 2]]) -> Result<(), NcsViolation> {
    let has_pos = pairs.iter().flatten().any(|v| *v == XReal::PosInf);
    let has_neg = pairs.iter().flatten().any(|v| *v == XReal::NegInf);
    if has_pos && has_neg {
        return Err(NcsViolation::MixedInfinities);
    }
    let m = pairs.len();
    let mut balance = 0i32;
    for choice in 0u32..(1 << m) {
        let mut sum = XReal::Finite(T::zero());
        for (i, pair) in pairs.iter().enumerate() {
            let member = &pair[(choice >> i & 1) as usize];
            sum = sum.checked_add(member).expect("mixed infinities screened out");
        }
        let s = sum.sgn();
        if s == 0 {
            return Err(NcsViolation::ZeroSum);
        }
        // Index sum parity equals the number of second members chosen.
        let sign = if choice.count_ones() % 2 == 0 { 1 } else { -1 };
        balance += sign * s;
    }
    if balance == 0 {
        Ok(())
    } else {
        Err(NcsViolation::NoCancellation)
    }
}

pub fn non_crossing_sums<T: AdfNum>(pairs: &[[XReal<T>; 2]]) -> bool {
    ncs_check(pairs).is_ok()
}

/// Whether the finite pair with the smallest gap never changes the sign of a
/// triple sum, all eight sums being non-zero. Equivalent to
/// [`non_crossing_sums`] for three finite pairs with distinct gaps.
pub fn influence_free<T: AdfNum>(pairs: &[[T; 2]; 3]) -> Result<bool, AdfError> {
    let gaps: Vec<T> = pairs.iter().map(|p| (p[0].clone() - p[1].clone()).abs()).collect();
    if gaps[0] == gaps[1] || gaps[1] == gaps[2] || gaps[0] == gaps[2] {
        return Err(AdfError::TiedGaps);
    }
    let small = (0..3).min_by(|&a, &b| gaps[a].cmp(&gaps[b])).expect("three pairs");
    let others: Vec<usize> = (0..3).filter(|&i| i != small).collect();
    for u in &pairs[others[0]] {
        for v in &pairs[others[1]] {
            let rest = u.clone() + v.clone();
            let s0 = (pairs[small][0].clone() + rest.clone()).signum();
            let s1 = (pairs[small][1].clone() + rest).signum();
            if s0.is_zero() || s1.is_zero() || s0 != s1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(p: [i64; 2]) -> [XReal<i64>; 2] {
        p.map(XReal::Finite)
    }

    #[test]
    fn worked_examples() {
        assert!(non_crossing_sums(&[fin([0, 1]), fin([0, 6]), fin([-5, 1])]));
        assert_eq!(ncs_check(&[fin([-3, 5]), fin([-3, 5]), fin([-3, 5])]), Err(NcsViolation::NoCancellation));
    }

    #[test]
    fn mixed_infinities_fail_axiom_one() {
        let r = ncs_check(&[[XReal::NegInf, XReal::Finite(1)], [XReal::PosInf, XReal::Finite(2)]]);
        assert_eq!(r, Err(NcsViolation::MixedInfinities));
    }

    #[test]
    fn nested_and_disjoint_pairs() {
        // {a1, a2} and {-b1, -b2} with a1 < a2 < b1 < b2.
        assert!(non_crossing_sums(&[fin([1, 2]), fin([-3, -4])]));
        // Interleaved: a1 < b1 < a2 < b2.
        assert!(!non_crossing_sums(&[fin([1, 3]), fin([-2, -4])]));
    }

    #[test]
    fn influence_free_example() {
        let p = [[0, 1], [0, 100], [-1000, 1000]];
        assert!(influence_free(&p).unwrap());
        assert!(non_crossing_sums(&p.map(fin)));
        assert_eq!(influence_free(&[[-3, 5], [-3, 5], [-3, 5]]), Err(AdfError::TiedGaps));
    }
}
