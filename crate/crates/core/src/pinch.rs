//! The `tanh` pinch that squeezes a horizontally periodic set into the strip
//! `|x| < n`, and its inverse. Float arithmetic only.

use rayon::prelude::*;
use thiserror::Error;

use crate::geom::{CylCurve, Point, Polyline};
use crate::scalar::Scalar;

/// Subdivision cap per input edge.
pub const MAX_SUBDIVISIONS: usize = 1 << 14;
/// Chord error allowed per unit of `n`.
pub const CHORD_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PinchError {
    #[error("pinch scale must be at least 1")]
    BadScale,
    #[error("need at least one period")]
    NoPeriods,
    #[error("|x| = {x} must be below the pinch scale {n}")]
    OutsideStrip { x: f64, n: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinchParams {
    pub n: u32,
    pub periods: u32,
}

impl PinchParams {
    pub fn new(n: u32, periods: u32) -> Result<Self, PinchError> {
        if n < 1 {
            return Err(PinchError::BadScale);
        }
        if periods < 1 {
            return Err(PinchError::NoPeriods);
        }
        Ok(PinchParams { n, periods })
    }
}

fn sech2(u: f64) -> f64 {
    let c = u.cosh();
    1.0 / (c * c)
}

/// `(n tanh(x/n), y sech^2(x/n))`.
pub fn phi_n(p: &Point<f64>, n: f64) -> Point<f64> {
    let u = p.x / n;
    Point::new(n * u.tanh(), p.y * sech2(u))
}

/// Inverse of [`phi_n`] on the open strip `|x| < n`.
pub fn phi_n_inv(p: &Point<f64>, n: f64) -> Result<Point<f64>, PinchError> {
    if p.x.abs() >= n {
        return Err(PinchError::OutsideStrip { x: p.x, n });
    }
    let x = 0.5 * n * ((n + p.x) / (n - p.x)).ln();
    let r = p.x / n;
    Ok(Point::new(x, p.y / (1.0 - r * r)))
}

/// Image of one edge, subdivided until every chord midpoint sits within the
/// tolerance of the true image of the matching input point. Last point
/// excluded.
fn pinch_edge(a: &Point<f64>, b: &Point<f64>, n: f64) -> Vec<Point<f64>> {
    let tol = CHORD_TOLERANCE * n;
    let mut pieces = 1usize;
    loop {
        let fine_enough = (0..pieces).all(|k| {
            let t0 = k as f64 / pieces as f64;
            let t1 = (k + 1) as f64 / pieces as f64;
            let p0 = phi_n(&a.lerp(b, &t0), n);
            let p1 = phi_n(&a.lerp(b, &t1), n);
            let mid = phi_n(&a.lerp(b, &(0.5 * (t0 + t1))), n);
            mid.dist(&p0.lerp(&p1, &0.5)) < tol
        });
        if fine_enough || pieces >= MAX_SUBDIVISIONS {
            break;
        }
        pieces = (pieces * 2).min(MAX_SUBDIVISIONS);
    }
    (0..pieces).map(|k| phi_n(&a.lerp(b, &(k as f64 / pieces as f64)), n)).collect()
}

/// `periods` periods of the lift of `curve` (centred on the origin period)
/// pushed through `phi_n`, with the limit points `(-n, 0)` and `(n, 0)`
/// attached at the ends.
pub fn compress_curve<S: Scalar>(curve: &CylCurve<S>, params: PinchParams) -> Polyline<f64> {
    let c = curve.to_f64();
    let n = params.n as f64;
    let first = -((params.periods as i64 - 1) / 2);
    let mut lift = c.lift_window(first, params.periods as i64);
    if c.degree() < 0 {
        lift.reverse();
    }
    let mut pts: Vec<Point<f64>> = lift
        .par_windows(2)
        .map(|w| pinch_edge(&w[0], &w[1], n))
        .collect::<Vec<_>>()
        .concat();
    pts.push(phi_n(lift.last().expect("non-empty lift"), n));
    let mut out = vec![Point::new(-n, 0.0)];
    for p in pts {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    if out.last() != Some(&Point::new(n, 0.0)) {
        out.push(Point::new(n, 0.0));
    }
    Polyline::open(out).expect("distinct consecutive vertices")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixes_the_vertical_axis() {
        let p = phi_n(&Point::new(0.0, 3.5), 8.0);
        assert_eq!(p, Point::new(0.0, 3.5));
        assert_eq!(phi_n_inv(&p, 8.0).unwrap(), p);
    }

    #[test]
    fn axis_is_monotone() {
        let xs: Vec<f64> = (-50..=50).map(|k| phi_n(&Point::new(k as f64, 0.0), 10.0).x).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!(xs.iter().all(|x| x.abs() < 10.0));
    }

    #[test]
    fn rejects_points_outside_strip() {
        assert!(phi_n_inv(&Point::new(4.0, 0.0), 4.0).is_err());
    }

    #[test]
    fn graph_of_zero_stays_on_axis() {
        let g = CylCurve::new(4.0, vec![Point::new(0.0, 0.0)], 1).unwrap();
        let out = compress_curve(&g, PinchParams::new(16, 5).unwrap());
        assert!(out.vertices().iter().all(|p| p.y == 0.0));
        assert!(out.vertices().windows(2).all(|w| w[0].x < w[1].x));
    }
}
