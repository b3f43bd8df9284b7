use serde::{Deserialize, Serialize};

use super::SquareError;
use crate::geom::{area_under_points, Point};
use crate::scalar::Scalar;

/// A possibly degenerate square: first vertex `(x, y)` and first side `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareQuad<S> {
    pub x: S,
    pub y: S,
    pub a: S,
    pub b: S,
}

impl<S: Scalar> SquareQuad<S> {
    pub fn new(x: S, y: S, a: S, b: S) -> Self {
        SquareQuad { x, y, a, b }
    }

    /// Vertices in anticlockwise order.
    pub fn vertices(&self) -> [Point<S>; 4] {
        Shape::square().vertices(self)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The same square with its vertex list cycled by one.
    pub fn next_vertex_first(&self) -> Self {
        SquareQuad {
            x: self.x.clone() + self.a.clone(),
            y: self.y.clone() + self.b.clone(),
            a: -self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn to_f64(&self) -> SquareQuad<f64> {
        SquareQuad { x: self.x.to_f64(), y: self.y.to_f64(), a: self.a.to_f64(), b: self.b.to_f64() }
    }
}

/// Quadrilateral similar to `(0,0), (1,0), (s+1, r), (-s, r)`; the square is
/// `s = 0, r = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shape<S> {
    pub s: S,
    pub r: S,
}

impl<S: Scalar> Shape<S> {
    pub fn square() -> Self {
        Shape { s: S::zero(), r: S::one() }
    }

    pub fn trapezoid(s: S, r: S) -> Result<Self, SquareError> {
        if s < S::zero() || r <= S::zero() {
            return Err(SquareError::BadShape);
        }
        Ok(Shape { s, r })
    }

    /// The four vertices of the shape placed with first side `(a, b)`.
    pub fn vertices(&self, q: &SquareQuad<S>) -> [Point<S>; 4] {
        let (x, y, a, b) = (q.x.clone(), q.y.clone(), q.a.clone(), q.b.clone());
        let (s, r) = (self.s.clone(), self.r.clone());
        let s1 = s.clone() + S::one();
        [
            Point::new(x.clone(), y.clone()),
            Point::new(x.clone() + a.clone(), y.clone() + b.clone()),
            Point::new(
                x.clone() + s1.clone() * a.clone() - r.clone() * b.clone(),
                y.clone() + s1 * b.clone() + r.clone() * a.clone(),
            ),
            Point::new(x - s.clone() * a.clone() - r.clone() * b.clone(), y - s * b + r * a),
        ]
    }

    /// Weight `2s + 1` on the first two curves in the conserved identity.
    fn side_weight(&self) -> S {
        self.s.clone() + self.s.clone() + S::one()
    }

    /// Largest admissible Lipschitz constant, `tan(alpha / 2)` with
    /// `alpha = atan2(r, s)`.
    pub fn lipschitz_bound(&self) -> f64 {
        (self.r.to_f64().atan2(self.s.to_f64()) / 2.0).tan()
    }
}

/// A family of quadruples sampled on a parameter grid; linear in between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareTrace<S> {
    pub grid: Vec<S>,
    pub x: Vec<S>,
    pub y: Vec<S>,
    pub a: Vec<S>,
    pub b: Vec<S>,
}

impl<S: Scalar> SquareTrace<S> {
    pub fn new(grid: Vec<S>, x: Vec<S>, y: Vec<S>, a: Vec<S>, b: Vec<S>) -> Result<Self, SquareError> {
        let n = grid.len();
        if [x.len(), y.len(), a.len(), b.len()].iter().any(|&m| m != n) {
            return Err(SquareError::TraceLengthMismatch);
        }
        if n < 2 {
            return Err(SquareError::TraceTooShort);
        }
        Ok(SquareTrace { grid, x, y, a, b })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn quad(&self, i: usize) -> SquareQuad<S> {
        SquareQuad::new(self.x[i].clone(), self.y[i].clone(), self.a[i].clone(), self.b[i].clone())
    }

    /// The four vertex curves of the family under `shape`.
    pub fn curves(&self, shape: &Shape<S>) -> [Vec<Point<S>>; 4] {
        let mut out: [Vec<Point<S>>; 4] = Default::default();
        for i in 0..self.len() {
            for (k, v) in shape.vertices(&self.quad(i)).into_iter().enumerate() {
                out[k].push(v);
            }
        }
        out
    }

    pub fn to_f64(&self) -> SquareTrace<f64> {
        let conv = |v: &[S]| v.iter().map(S::to_f64).collect();
        SquareTrace { grid: conv(&self.grid), x: conv(&self.x), y: conv(&self.y), a: conv(&self.a), b: conv(&self.b) }
    }
}

/// `LHS - RHS` of the conserved area identity for squares.
pub fn conserved_residual<S: Scalar>(trace: &SquareTrace<S>) -> S {
    shaped_residual(trace, &Shape::square())
}

/// Weighted identity for the shape `(s, r)`:
/// `(2s+1)(A1 - A2) + A3 - A4 = r (2s+1) / 2 * [a^2 - b^2]` from start to end.
pub fn shaped_residual<S: Scalar>(trace: &SquareTrace<S>, shape: &Shape<S>) -> S {
    let [c1, c2, c3, c4] = trace.curves(shape);
    let area = |c: &[Point<S>]| area_under_points(c, false);
    let w = shape.side_weight();
    let lhs = w.clone() * (area(&c1) - area(&c2)) + area(&c3) - area(&c4);
    let n = trace.len() - 1;
    let q = |i: usize| trace.a[i].clone() * trace.a[i].clone() - trace.b[i].clone() * trace.b[i].clone();
    let rhs = shape.r.clone() * w * S::half() * (q(n) - q(0));
    lhs - rhs
}
