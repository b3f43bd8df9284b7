use super::BridgeError;
use crate::geom::{overlapping_shifts, CylCurve};
use crate::scalar::{Rational, Scalar};

type Q = Rational;

/// A point where the lift of a curve meets a vertical line.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    /// Index of the lift edge; increases with the curve parameter.
    pub edge: i64,
    pub y: Q,
}

pub(crate) fn check_degree_one(curve: &CylCurve<Q>) -> Result<(), BridgeError> {
    if curve.degree() != 1 {
        return Err(BridgeError::NotDegreeOne);
    }
    Ok(())
}

pub(crate) fn is_vertex_abscissa(curve: &CylCurve<Q>, x: &Q) -> bool {
    curve.lift().iter().any(|v| ((x - &v.x) / curve.period()).is_integer())
}

/// Crossings of the infinite lift with the line through `x`, in parameter
/// order.
pub fn crossings(curve: &CylCurve<Q>, x: &Q) -> Result<Vec<Crossing>, BridgeError> {
    check_degree_one(curve)?;
    if is_vertex_abscissa(curve, x) {
        return Err(BridgeError::VertexAbscissa { x: crate::format_rational(x) });
    }
    let n = curve.vertex_count() as i64;
    let (lo, hi) = curve.x_range();
    let xf = Scalar::to_f64(x);
    let mut out = Vec::new();
    for s in overlapping_shifts(Scalar::to_f64(&lo), Scalar::to_f64(&hi), xf, xf, Scalar::to_f64(curve.period())) {
        for e in s * n..(s + 1) * n {
            let (a, b) = curve.edge(e);
            let below_a = a.x < *x;
            let below_b = b.x < *x;
            if below_a != below_b {
                let y = &a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x);
                out.push(Crossing { edge: e, y });
            }
        }
    }
    out.sort_by_key(|c| c.edge);
    Ok(out)
}

/// Ordinates of the three fibers over `x`, each in parameter order.
pub fn fiber_extract(curves: &[CylCurve<Q>; 3], x: &Q) -> Result<[Vec<Q>; 3], BridgeError> {
    let mut out: [Vec<Q>; 3] = Default::default();
    for (slot, c) in out.iter_mut().zip(curves) {
        *slot = crossings(c, x)?.into_iter().map(|c| c.y).collect();
    }
    Ok(out)
}
