use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::point::Point;
use super::polyline::{area_under_points, is_simple_points};
use super::GeomError;
use crate::scalar::{Rational, Scalar};

/// Closed curve on the cylinder `(R / L Z) x R`, stored as one period of its
/// lift. The lift continues as `v[k + n] = v[k] + (degree * L, 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylCurve<S> {
    period: S,
    lift: Vec<Point<S>>,
    degree: i64,
}

impl<S: Scalar> CylCurve<S> {
    /// Builds from one period of the lift, the end vertex `v[0] + (dL, 0)`
    /// left implicit.
    pub fn new(period: S, lift: Vec<Point<S>>, degree: i64) -> Result<Self, GeomError> {
        if period <= S::zero() {
            return Err(GeomError::NonPositivePeriod);
        }
        if lift.is_empty() {
            return Err(GeomError::TooFewVertices(0));
        }
        if degree == 0 && lift.len() < 2 {
            return Err(GeomError::TooFewVertices(lift.len()));
        }
        let curve = CylCurve { period, lift, degree };
        for k in 0..curve.lift.len() {
            if curve.vertex(k as i64) == curve.vertex(k as i64 + 1) {
                return Err(GeomError::RepeatedVertex(k + 1));
            }
        }
        Ok(curve)
    }

    /// Builds from an explicit lift whose last vertex closes the period.
    pub fn from_lift(period: S, mut lift_with_end: Vec<Point<S>>) -> Result<Self, GeomError> {
        if lift_with_end.len() < 2 {
            return Err(GeomError::TooFewVertices(lift_with_end.len()));
        }
        let end = lift_with_end.pop().expect("length checked");
        let degree = homology_degree(&period, &lift_with_end[0], &end)?;
        Self::new(period, lift_with_end, degree)
    }

    pub fn period(&self) -> &S {
        &self.period
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// One period of lift vertices, end vertex excluded.
    pub fn lift(&self) -> &[Point<S>] {
        &self.lift
    }

    pub fn vertex_count(&self) -> usize {
        self.lift.len()
    }

    /// Horizontal displacement of one full period of the lift.
    pub fn shift(&self) -> S {
        self.period.clone() * S::from_i64(self.degree).expect("small integer")
    }

    /// Vertex `k` of the infinite lift, for any integer `k`.
    pub fn vertex(&self, k: i64) -> Point<S> {
        let n = self.lift.len() as i64;
        let (q, r) = k.div_mod_floor(&n);
        let dx = self.shift() * S::from_i64(q).expect("small integer");
        self.lift[r as usize].shifted(&dx)
    }

    /// Edge `k` of the infinite lift: `(vertex(k), vertex(k + 1))`.
    pub fn edge(&self, k: i64) -> (Point<S>, Point<S>) {
        (self.vertex(k), self.vertex(k + 1))
    }

    /// Lift vertices of one period with the end vertex included.
    pub fn closed_lift(&self) -> Vec<Point<S>> {
        let mut v = self.lift.clone();
        v.push(self.vertex(self.lift.len() as i64));
        v
    }

    /// Lift covering periods `start..start + count`, end vertex included.
    pub fn lift_window(&self, start: i64, count: i64) -> Vec<Point<S>> {
        let n = self.lift.len() as i64;
        (start * n..=(start + count) * n).map(|k| self.vertex(k)).collect()
    }

    /// `y dx` integrated over one period of the lift.
    pub fn area_one_period(&self) -> S {
        area_under_points(&self.closed_lift(), false)
    }

    /// Traversal in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut v = self.closed_lift();
        v.reverse();
        v.pop();
        CylCurve { period: self.period.clone(), lift: v, degree: -self.degree }
    }

    /// Lift re-based to start at vertex `k`.
    pub fn rebased(&self, k: i64) -> Self {
        let n = self.lift.len() as i64;
        CylCurve {
            period: self.period.clone(),
            lift: (k..k + n).map(|j| self.vertex(j)).collect(),
            degree: self.degree,
        }
    }

    /// Horizontal extent of one period of the lift.
    pub fn x_range(&self) -> (S, S) {
        let v = self.closed_lift();
        let lo = v.iter().map(|p| p.x.clone()).fold(v[0].x.clone(), S::min_s);
        let hi = v.iter().map(|p| p.x.clone()).fold(v[0].x.clone(), S::max_s);
        (lo, hi)
    }

    pub fn y_range(&self) -> (S, S) {
        let lo = self.lift.iter().map(|p| p.y.clone()).fold(self.lift[0].y.clone(), S::min_s);
        let hi = self.lift.iter().map(|p| p.y.clone()).fold(self.lift[0].y.clone(), S::max_s);
        (lo, hi)
    }

    /// Whether the curve is embedded in the cylinder (degree +-1 only).
    pub fn is_simple(&self) -> Result<bool, GeomError> {
        if self.degree.abs() != 1 {
            return Err(GeomError::UnsupportedDegree(self.degree));
        }
        // A degree-one curve is embedded iff its infinite lift is; a point of
        // period 0 can only meet periods within the horizontal width.
        let (lo, hi) = self.x_range();
        let width = (hi - lo).to_f64();
        let reach = (width / self.period.to_f64()).ceil() as i64 + 1;
        Ok(is_simple_points(&self.lift_window(-reach, 2 * reach + 1), false))
    }

    pub fn to_f64(&self) -> CylCurve<f64> {
        CylCurve {
            period: self.period.to_f64(),
            lift: self.lift.iter().map(Point::to_f64).collect(),
            degree: self.degree,
        }
    }
}

impl CylCurve<Rational> {
    /// Horizontal line `y = c` traversed rightwards.
    pub fn constant(period: Rational, height: Rational) -> Self {
        CylCurve::new(period, vec![Point::new(Rational::zero(), height)], 1).expect("valid constant curve")
    }
}

/// Degree of a lift from `start` to `end` on a cylinder of circumference `L`.
pub fn homology_degree<S: Scalar>(period: &S, start: &Point<S>, end: &Point<S>) -> Result<i64, GeomError> {
    if end.y != start.y {
        return Err(GeomError::BadLiftDisplacement);
    }
    let q = (end.x.clone() - start.x.clone()) / period.clone();
    let rounded = q.to_f64().round();
    let k = S::from_f64(rounded).ok_or(GeomError::BadLiftDisplacement)?;
    if q != k {
        return Err(GeomError::BadLiftDisplacement);
    }
    Ok(rounded as i64)
}

/// Integer shifts `k` with `[lo + kL, hi + kL]` meeting `[a, b]`, padded by one.
pub fn overlapping_shifts(lo: f64, hi: f64, a: f64, b: f64, period: f64) -> std::ops::RangeInclusive<i64> {
    let kmin = ((a - hi) / period).floor() as i64 - 1;
    let kmax = ((b - lo) / period).ceil() as i64 + 1;
    kmin..=kmax
}
