use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cylinder::CylCurve;
use super::point::Point;
use super::GeomError;
use crate::scalar::{mod_period, Rational};

/// Number of fresh draws before giving up.
pub const RETRY_BUDGET: u32 = 64;

const GRID_BITS: u32 = 32;

/// Seed for attempt `attempt` of a run seeded with `seed`.
pub fn derived_seed(seed: u64, attempt: u64) -> u64 {
    // SplitMix64 finaliser over the pair.
    let mut z = seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Jitters every lift vertex by at most `magnitude` per coordinate, on a grid
/// of spacing `magnitude / 2^32`, until the curves are in general position.
pub fn perturb_generic(
    curves: &[CylCurve<Rational>],
    seed: u64,
    magnitude: &Rational,
) -> Result<Vec<CylCurve<Rational>>, GeomError> {
    if !magnitude.is_positive() {
        return Err(GeomError::NonPositiveMagnitude);
    }
    let step = magnitude / Rational::from_integer(BigInt::from(1u64 << GRID_BITS));
    let span = 1i64 << GRID_BITS;
    for attempt in 0..RETRY_BUDGET {
        let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, attempt as u64));
        let mut jitter = || &step * Rational::from_integer(BigInt::from(rng.gen_range(-span..=span)));
        let mut out = Vec::with_capacity(curves.len());
        let mut ok = true;
        for c in curves {
            let lift: Vec<Point<Rational>> =
                c.lift().iter().map(|p| Point::new(&p.x + jitter(), &p.y + jitter())).collect();
            match CylCurve::new(c.period().clone(), lift, c.degree()) {
                Ok(curve) => out.push(curve),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && general_position_violation(&out).is_none() {
            return Ok(out);
        }
    }
    Err(GeomError::PerturbationBudget(RETRY_BUDGET))
}

/// What makes a set of curves fail the general-position checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionViolation {
    SharedAbscissa,
    VerticalEdge,
    QuarterTurnMultiple,
}

/// First violated check, or `None` when the curves are in general position.
pub fn general_position_violation(curves: &[CylCurve<Rational>]) -> Option<PositionViolation> {
    let mut seen = HashSet::new();
    for c in curves {
        for p in c.lift() {
            if !seen.insert(mod_period(&p.x, c.period())) {
                return Some(PositionViolation::SharedAbscissa);
            }
        }
    }
    let mut dirs = Vec::new();
    for c in curves {
        for k in 0..c.vertex_count() as i64 {
            let (a, b) = c.edge(k);
            let d = &b - &a;
            if d.x.is_zero() {
                return Some(PositionViolation::VerticalEdge);
            }
            dirs.push(d);
        }
    }
    for i in 0..dirs.len() {
        for j in (i + 1)..dirs.len() {
            if quarter_turn_multiple(&dirs[i], &dirs[j]) {
                return Some(PositionViolation::QuarterTurnMultiple);
            }
        }
    }
    None
}

/// Whether the angle between `u` and `v` is a multiple of 45 degrees.
pub fn quarter_turn_multiple(u: &Point<Rational>, v: &Point<Rational>) -> bool {
    let cross = u.cross(v);
    let dot = u.dot(v);
    cross.is_zero() || dot.is_zero() || cross.abs() == dot.abs()
}
