use serde::{Deserialize, Serialize};

use super::fixed_point::{solve_from, VertexMap, DEFAULT_MAX_ITER};
use super::quad::{Shape, SquareQuad, SquareTrace};
use super::SquareError;
use crate::geom::{lipschitz_constant, point_segment_distance, PlFunction, Point};

/// Fixed-point tolerance used inside the finder.
const SOLVE_TOL: f64 = 1e-13;
/// How far a traced vertex may sit off its graph before the trace is rejected.
const ON_GRAPH_TOL: f64 = 1e-9;
const BISECTION_STEPS: usize = 60;

/// A square-traversing family together with its four vertex curves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SquareFamily {
    pub trace: SquareTrace<f64>,
    pub curves: [Vec<Point<f64>>; 4],
}

/// An inscribed square (or shape) located by bracketing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InscriptionResult {
    pub square: SquareQuad<f64>,
    pub vertices: [Point<f64>; 4],
    /// Distance of each vertex to its curve: `f`, `f`, `g`, `g`.
    pub residuals: [f64; 4],
    pub t: f64,
    pub t_lo: f64,
    pub t_hi: f64,
    /// `|y3 - g(x3)|` at the refined parameter.
    pub crossing_residual: f64,
}

impl InscriptionResult {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }
}

/// Checks the standing hypotheses on the pair `(f, g)`.
pub fn check_pair(f: &PlFunction<f64>, g: &PlFunction<f64>, lipschitz_bound: f64) -> Result<(f64, f64), SquareError> {
    let (t0, t1) = f.interval().ok_or(SquareError::NotInterval)?;
    let (u0, u1) = g.interval().ok_or(SquareError::NotInterval)?;
    if t0 != u0 || t1 != u1 {
        return Err(SquareError::DomainMismatch);
    }
    if (f.eval(&t0) - g.eval(&t0)).abs() > ON_GRAPH_TOL || (f.eval(&t1) - g.eval(&t1)).abs() > ON_GRAPH_TOL {
        return Err(SquareError::EndpointsDiffer);
    }
    let mut probes: Vec<f64> = f.breakpoints().iter().chain(g.breakpoints()).cloned().filter(|&t| t > t0 && t < t1).collect();
    probes.sort_by(f64::total_cmp);
    probes.dedup();
    if probes.is_empty() || probes.iter().any(|t| g.eval(t) - f.eval(t) <= 0.0) {
        return Err(SquareError::NotStrictlyBelow);
    }
    for h in [f, g] {
        if lipschitz_constant(h) >= lipschitz_bound {
            return Err(SquareError::LipschitzTooLarge { bound: lipschitz_bound });
        }
    }
    Ok((t0, t1))
}

fn uniform_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { t1 } else { t0 + (t1 - t0) * i as f64 / (n - 1) as f64 }).collect()
}

/// Square family over a uniform `n`-point grid.
pub fn trace_square_family(f: &PlFunction<f64>, g: &PlFunction<f64>, n: usize) -> Result<SquareFamily, SquareError> {
    trace_shape_family(f, g, &Shape::square(), n)
}

/// Family for the shape `(s, r)` over a uniform `n`-point grid.
pub fn trace_shape_family(
    f: &PlFunction<f64>,
    g: &PlFunction<f64>,
    shape: &Shape<f64>,
    n: usize,
) -> Result<SquareFamily, SquareError> {
    if n < 2 {
        return Err(SquareError::TraceTooShort);
    }
    let (t0, t1) = check_pair(f, g, shape.lipschitz_bound())?;
    let map = VertexMap::with_shape(f, g, shape);
    let grid = uniform_grid(t0, t1, n);
    let mut p = (0.0, 0.0);
    let (mut xs, mut ys, mut as_, mut bs) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &t in &grid {
        p = solve_from(&map, t, p, SOLVE_TOL, DEFAULT_MAX_ITER)?;
        xs.push(t);
        ys.push(f.eval(&t));
        as_.push(p.0);
        bs.push(p.1);
    }
    let trace = SquareTrace::new(grid, xs, ys, as_, bs)?;
    let curves = trace.curves(shape);
    for (k, h) in [(1usize, f), (3, g)] {
        for q in &curves[k] {
            let off = (q.y - h.eval(&q.x)).abs();
            if off > ON_GRAPH_TOL {
                return Err(SquareError::OffGraph { vertex: k + 1, x: q.x, offset: off });
            }
        }
    }
    Ok(SquareFamily { trace, curves })
}

struct Prober<'a> {
    f: &'a PlFunction<f64>,
    g: &'a PlFunction<f64>,
    shape: Shape<f64>,
    map: VertexMap<'a>,
}

impl Prober<'_> {
    /// Quad at `t` and the crossing function `y3 - g(x3)`.
    fn probe(&self, t: f64, start: (f64, f64)) -> Result<(SquareQuad<f64>, f64), SquareError> {
        let (a, b) = solve_from(&self.map, t, start, SOLVE_TOL, DEFAULT_MAX_ITER)?;
        let quad = SquareQuad::new(t, self.f.eval(&t), a, b);
        let v3 = &self.shape.vertices(&quad)[2];
        Ok((quad, v3.y - self.g.eval(&v3.x)))
    }

    fn result(&self, quad: SquareQuad<f64>, h: f64, t_lo: f64, t_hi: f64) -> InscriptionResult {
        let vertices = self.shape.vertices(&quad);
        let gf = self.f.graph();
        let gg = self.g.graph();
        let dist = |p: &Point<f64>, graph: &crate::geom::Polyline<f64>| {
            graph.edges().map(|(a, b)| point_segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
        };
        let residuals = [dist(&vertices[0], &gf), dist(&vertices[1], &gf), dist(&vertices[2], &gg), dist(&vertices[3], &gg)];
        InscriptionResult { t: quad.x, square: quad, vertices, residuals, t_lo, t_hi, crossing_residual: h.abs() }
    }
}

/// Inscribed square with the smallest crossing residual (ties: smaller `t`).
pub fn find_inscribed_square(
    f: &PlFunction<f64>,
    g: &PlFunction<f64>,
    n: usize,
    tol: f64,
) -> Result<InscriptionResult, SquareError> {
    best(find_all(f, g, &Shape::square(), n, tol)?)
}

/// Shape-generalised finder; `s = 0, r = 1` is the square.
pub fn find_inscribed_trapezoid(
    f: &PlFunction<f64>,
    g: &PlFunction<f64>,
    s: f64,
    r: f64,
    n: usize,
    tol: f64,
) -> Result<InscriptionResult, SquareError> {
    best(find_all(f, g, &Shape::trapezoid(s, r)?, n, tol)?)
}

fn best(mut all: Vec<InscriptionResult>) -> Result<InscriptionResult, SquareError> {
    all.sort_by(|a, b| a.crossing_residual.total_cmp(&b.crossing_residual).then(a.t.total_cmp(&b.t)));
    all.into_iter().next().ok_or(SquareError::NoCrossing)
}

/// Every bracketed crossing of the third vertex with `g`, refined by
/// bisection, in increasing `t`.
pub fn find_all(
    f: &PlFunction<f64>,
    g: &PlFunction<f64>,
    shape: &Shape<f64>,
    n: usize,
    tol: f64,
) -> Result<Vec<InscriptionResult>, SquareError> {
    if tol <= 0.0 {
        return Err(SquareError::BadTolerance);
    }
    let family = trace_shape_family(f, g, shape, n)?;
    let prober = Prober { f, g, shape: shape.clone(), map: VertexMap::with_shape(f, g, shape) };
    let tr = &family.trace;
    let h: Vec<f64> = (0..tr.len())
        .map(|i| {
            let v3 = &family.curves[2][i];
            v3.y - g.eval(&v3.x)
        })
        .collect();
    let mut out = Vec::new();
    // Endpoints are degenerate squares; only interior grid points count.
    for i in 1..tr.len().saturating_sub(2) {
        let (h0, h1) = (h[i], h[i + 1]);
        let (mut lo, mut hi) = (tr.grid[i], tr.grid[i + 1]);
        let start = (tr.a[i], tr.b[i]);
        let found = if h0 == 0.0 {
            Some(prober.probe(lo, start)?)
        } else if h0.signum() != h1.signum() && h1 != 0.0 {
            let mut sign_lo = h0.signum();
            let mut guess = start;
            let mut last = None;
            for _ in 0..BISECTION_STEPS {
                if hi - lo <= tol {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let (quad, hm) = prober.probe(mid, guess)?;
                guess = (quad.a, quad.b);
                if hm == 0.0 {
                    lo = mid;
                    hi = mid;
                    last = Some((quad, hm));
                    break;
                }
                if hm.signum() == sign_lo {
                    lo = mid;
                    sign_lo = hm.signum();
                } else {
                    hi = mid;
                }
                last = Some((quad, hm));
            }
            let mid = 0.5 * (lo + hi);
            Some(match last {
                Some((q, hm)) if q.x == mid => (q, hm),
                _ => prober.probe(mid, guess)?,
            })
        } else {
            None
        };
        if let Some((quad, hm)) = found {
            if quad.a.hypot(quad.b) > ON_GRAPH_TOL {
                out.push(prober.result(quad, hm, lo, hi));
            }
        }
    }
    if out.is_empty() {
        return Err(SquareError::NoCrossing);
    }
    Ok(out)
}
