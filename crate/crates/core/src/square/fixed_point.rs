use super::quad::Shape;
use super::SquareError;
use crate::geom::PlFunction;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

/// The map whose fixed point places the second vertex on `f` and the last
/// vertex on `g`, for the shape `(s, r)`:
///
/// `b = f(t + a) - f(t)`, `a = (g(t - s a - r b) - f(t) + s b) / r`.
///
/// For the square this is `(a, b) -> (g(t - b) - f(t), f(t + a) - f(t))`.
#[derive(Debug, Clone)]
pub struct VertexMap<'a> {
    pub f: &'a PlFunction<f64>,
    pub g: &'a PlFunction<f64>,
    pub s: f64,
    pub r: f64,
}

impl<'a> VertexMap<'a> {
    pub fn square(f: &'a PlFunction<f64>, g: &'a PlFunction<f64>) -> Self {
        VertexMap { f, g, s: 0.0, r: 1.0 }
    }

    pub fn with_shape(f: &'a PlFunction<f64>, g: &'a PlFunction<f64>, shape: &Shape<f64>) -> Self {
        VertexMap { f, g, s: shape.s, r: shape.r }
    }

    pub fn apply(&self, t: f64, (a, b): (f64, f64)) -> (f64, f64) {
        let ft = self.f.eval(&t);
        let nb = self.f.eval(&(t + a)) - ft;
        let na = (self.g.eval(&(t - self.s * a - self.r * b)) - ft + self.s * b) / self.r;
        (na, nb)
    }

    /// Exact solve of the affine model of the map at `(a, b)`; this is the
    /// fixed point itself whenever it stays on the same linear pieces.
    fn affine_solve(&self, t: f64, (a, b): (f64, f64)) -> Option<(f64, f64)> {
        let ft = self.f.eval(&t);
        let (f1, sf) = self.f.eval_with_slope(&(t + a));
        let u = t - self.s * a - self.r * b;
        let (g1, sg) = self.g.eval_with_slope(&u);
        // r a = g1 + sg (u' - u) - ft + s b,  u' = t - s a' - r b'
        // b   = f1 + sf (a' - a) - ft
        let (s, r) = (self.s, self.r);
        let m11 = r + sg * s;
        let m12 = sg * r - s;
        let c1 = g1 + sg * (s * a + r * b) - ft;
        let m21 = -sf;
        let c2 = f1 - sf * a - ft;
        let det = m11 + m12 * sf;
        if det.abs() < 1e-300 {
            return None;
        }
        let na = (c1 - m12 * c2) / det;
        let nb = c2 - m21 * na;
        let out = (na, nb);
        (out.0.is_finite() && out.1.is_finite()).then_some(out)
    }
}

fn gap((a, b): (f64, f64), (c, d): (f64, f64)) -> f64 {
    (a - c).abs().max((b - d).abs())
}

/// Fixed point of the square map at parameter `t`, started from `(0, 0)`.
pub fn solve_vertex_fixed_point(
    f: &PlFunction<f64>,
    g: &PlFunction<f64>,
    t: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, f64), SquareError> {
    solve_from(&VertexMap::square(f, g), t, (0.0, 0.0), tol, max_iter)
}

/// Picard iteration with an affine acceleration step: whichever candidate
/// moves less under the map is kept.
pub fn solve_from(
    map: &VertexMap<'_>,
    t: f64,
    start: (f64, f64),
    tol: f64,
    max_iter: usize,
) -> Result<(f64, f64), SquareError> {
    if tol <= 0.0 {
        return Err(SquareError::BadTolerance);
    }
    let mut p = start;
    let mut last = f64::INFINITY;
    for _ in 0..max_iter {
        let next = map.apply(t, p);
        let d = gap(next, p);
        last = d;
        if d < tol {
            return Ok(next);
        }
        p = next;
        if let Some(cand) = map.affine_solve(t, p) {
            let dc = gap(map.apply(t, cand), cand);
            if dc < gap(map.apply(t, p), p) {
                p = cand;
            }
        }
    }
    Err(SquareError::NoConvergence { t, iterations: max_iter, displacement: last })
}
