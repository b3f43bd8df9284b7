use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::point::{on_segment, orient, segments_intersect, Point};
use super::GeomError;
use crate::scalar::Scalar;

/// Planar polyline. When `closed`, the closing edge is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline<S> {
    vertices: Vec<Point<S>>,
    closed: bool,
}

impl<S: Scalar> Polyline<S> {
    pub fn new(vertices: Vec<Point<S>>, closed: bool) -> Result<Self, GeomError> {
        if vertices.len() < 2 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        for (i, w) in vertices.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(GeomError::RepeatedVertex(i + 1));
            }
        }
        if closed && vertices.first() == vertices.last() {
            return Err(GeomError::RepeatedVertex(vertices.len() - 1));
        }
        Ok(Polyline { vertices, closed })
    }

    pub fn open(vertices: Vec<Point<S>>) -> Result<Self, GeomError> {
        Self::new(vertices, false)
    }

    pub fn closed(vertices: Vec<Point<S>>) -> Result<Self, GeomError> {
        Self::new(vertices, true)
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn edge_count(&self) -> usize {
        edge_count(self.vertices.len(), self.closed)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point<S>, &Point<S>)> + '_ {
        let n = self.vertices.len();
        (0..self.edge_count()).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline { vertices: v, closed: self.closed }
    }

    pub fn to_f64(&self) -> Polyline<f64> {
        Polyline { vertices: self.vertices.iter().map(Point::to_f64).collect(), closed: self.closed }
    }
}

fn edge_count(n: usize, closed: bool) -> usize {
    if closed {
        n
    } else {
        n - 1
    }
}

/// Riemann-Stieltjes integral of `y dx` along the curve.
pub fn area_under<S: Scalar>(curve: &Polyline<S>) -> S {
    area_under_points(curve.vertices(), curve.is_closed())
}

/// [`area_under`] on a raw vertex list; repeated vertices are harmless here.
pub fn area_under_points<S: Scalar>(pts: &[Point<S>], closed: bool) -> S {
    let n = pts.len();
    if n < 2 {
        return S::zero();
    }
    let mut sum = S::zero();
    for i in 0..edge_count(n, closed) {
        let p = &pts[i];
        let q = &pts[(i + 1) % n];
        sum = sum + (p.y.clone() + q.y.clone()) * (q.x.clone() - p.x.clone());
    }
    sum * S::half()
}

/// Shoelace area of a closed simple polyline, positive when anticlockwise.
pub fn signed_area<S: Scalar>(curve: &Polyline<S>) -> Result<S, GeomError> {
    if !curve.is_closed() {
        return Err(GeomError::NotClosed);
    }
    if !is_simple(curve) {
        return Err(GeomError::NotSimple);
    }
    let mut sum = S::zero();
    for (p, q) in curve.edges() {
        sum = sum + p.cross(q);
    }
    Ok(sum * S::half())
}

pub fn is_simple<S: Scalar>(curve: &Polyline<S>) -> bool {
    is_simple_points(curve.vertices(), curve.is_closed())
}

/// Pairwise edge test: non-adjacent edges must be disjoint and adjacent
/// edges may share only their common vertex.
pub fn is_simple_points<S: Scalar>(pts: &[Point<S>], closed: bool) -> bool {
    let n = pts.len();
    if n < 2 {
        return false;
    }
    let m = edge_count(n, closed);
    if closed && n < 3 {
        return false;
    }
    let edge = |i: usize| (&pts[i], &pts[(i + 1) % n]);
    let boxes: Vec<_> = (0..m)
        .map(|i| {
            let (a, b) = edge(i);
            let (x0, x1) = if a.x <= b.x { (a.x.clone(), b.x.clone()) } else { (b.x.clone(), a.x.clone()) };
            let (y0, y1) = if a.y <= b.y { (a.y.clone(), b.y.clone()) } else { (b.y.clone(), a.y.clone()) };
            (x0, x1, y0, y1)
        })
        .collect();
    for i in 0..m {
        let (a, b) = edge(i);
        if a.coincides(b) {
            return false;
        }
        for j in (i + 1)..m {
            let next = j == i + 1;
            let wrap = closed && i == 0 && j == m - 1;
            if next || wrap {
                // Shared vertex: `b` of i and `a` of j, or the other way round
                // for the closing pair.
                let (shared, u, v) = if next { (b, a, edge(j).1) } else { (a, b, edge(j).0) };
                if adjacent_overlap(shared, u, v) {
                    return false;
                }
                continue;
            }
            let (bi, bj) = (&boxes[i], &boxes[j]);
            if bi.1.cmp_s(&bj.0) == Ordering::Less
                || bj.1.cmp_s(&bi.0) == Ordering::Less
                || bi.3.cmp_s(&bj.2) == Ordering::Less
                || bj.3.cmp_s(&bi.2) == Ordering::Less
            {
                continue;
            }
            let (c, d) = edge(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Adjacent edges `u-shared` and `shared-v` overlap beyond `shared` exactly
/// when they are collinear and fold back.
fn adjacent_overlap<S: Scalar>(shared: &Point<S>, u: &Point<S>, v: &Point<S>) -> bool {
    if orient(u, shared, v) != Ordering::Equal {
        return false;
    }
    let du = u - shared;
    let dv = v - shared;
    du.dot(&dv) > S::zero()
}

/// Winding number of a closed polyline around `p`.
pub fn winding_number<S: Scalar>(curve: &Polyline<S>, p: &Point<S>) -> Result<i64, GeomError> {
    if !curve.is_closed() {
        return Err(GeomError::NotClosed);
    }
    let mut w = 0i64;
    for (a, b) in curve.edges() {
        if on_segment(a, b, p) {
            return Err(GeomError::PointOnCurve);
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) == Ordering::Greater {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) == Ordering::Less {
            w -= 1;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn poly(pts: &[(i64, i64)], closed: bool) -> Polyline<Rational> {
        Polyline::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect(), closed).unwrap()
    }

    fn unit_square() -> Polyline<Rational> {
        poly(&[(0, 0), (1, 0), (1, 1), (0, 1)], true)
    }

    #[test]
    fn area_under_examples() {
        assert_eq!(area_under(&unit_square()), int(-1));
        assert_eq!(area_under(&poly(&[(0, 0), (1, 1)], false)), rat(1, 2));
        let there_and_back = poly(&[(0, 0), (2, 3), (5, -1), (2, 3), (0, 0)], false);
        assert_eq!(area_under(&there_and_back), int(0));
    }

    #[test]
    fn signed_area_examples() {
        assert_eq!(signed_area(&unit_square()).unwrap(), int(1));
        assert_eq!(signed_area(&unit_square().reversed()).unwrap(), int(-1));
        assert_eq!(signed_area(&poly(&[(0, 0), (2, 0), (0, 2)], true)).unwrap(), int(2));
        let bowtie = poly(&[(0, 0), (1, 1), (1, 0), (0, 1)], true);
        assert_eq!(signed_area(&bowtie), Err(GeomError::NotSimple));
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple(&unit_square()));
        assert!(!is_simple(&poly(&[(0, 0), (1, 1), (1, 0), (0, 1)], true)));
        assert!(is_simple(&poly(&[(0, 0), (1, 0), (1, 1)], false)));
        assert!(!is_simple(&poly(&[(0, 0), (2, 0), (1, 0)], false)));
        assert!(!is_simple(&poly(&[(0, 0), (2, 0), (2, 2), (1, 0), (1, -1)], false)));
        assert!(!is_simple(&poly(&[(0, 0), (1, 0)], true)));
        // Straight continuation through a vertex is fine.
        assert!(is_simple(&poly(&[(0, 0), (1, 0), (2, 0)], false)));
        // Touching a non-adjacent vertex is not.
        assert!(!is_simple(&poly(&[(0, 0), (2, 0), (2, 1), (1, 0)], true)));
    }

    #[test]
    fn winding_examples() {
        let sq = unit_square();
        let mid = Point::new(rat(1, 2), rat(1, 2));
        assert_eq!(winding_number(&sq, &mid).unwrap(), 1);
        assert_eq!(winding_number(&sq, &Point::from_ints(2, 2)).unwrap(), 0);
        let twice = poly(&[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (1, 0), (1, 1), (0, 1)], true);
        assert_eq!(winding_number(&twice, &mid).unwrap(), 2);
        assert_eq!(winding_number(&sq.reversed(), &mid).unwrap(), -1);
        assert_eq!(winding_number(&sq, &Point::new(rat(1, 2), int(0))), Err(GeomError::PointOnCurve));
    }

    #[test]
    fn validation() {
        assert!(Polyline::<Rational>::new(vec![Point::from_ints(0, 0)], false).is_err());
        assert!(Polyline::new(vec![Point::from_ints(0, 0), Point::from_ints(0, 0)], false).is_err());
        assert!(Polyline::new(vec![Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(0, 0)], true).is_err());
    }

    #[test]
    fn float_mode_agrees_on_simple_shapes() {
        let sq = unit_square().to_f64();
        assert!(is_simple(&sq));
        assert!((area_under(&sq) + 1.0).abs() < 1e-15);
        assert_eq!(winding_number(&sq, &Point::new(0.5, 0.5)).unwrap(), 1);
    }
}
