use std::cmp::Ordering;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{Rational, Scalar};

/// A point of the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point { x: S::zero(), y: S::zero() }
    }

    /// Horizontal translate by `dx`.
    pub fn shifted(&self, dx: &S) -> Self {
        Point { x: self.x.clone() + dx.clone(), y: self.y.clone() }
    }

    pub fn scale(&self, k: &S) -> Self {
        Point { x: self.x.clone() * k.clone(), y: self.y.clone() * k.clone() }
    }

    /// Quarter turn anticlockwise about the origin.
    pub fn rot90(&self) -> Self {
        Point { x: -self.y.clone(), y: self.x.clone() }
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    /// L1 norm, used as a cheap size for tolerance scaling.
    pub fn l1(&self) -> S {
        self.x.abs() + self.y.abs()
    }

    pub fn lerp(&self, other: &Self, t: &S) -> Self {
        Point {
            x: self.x.clone() + (other.x.clone() - self.x.clone()) * t.clone(),
            y: self.y.clone() + (other.y.clone() - self.y.clone()) * t.clone(),
        }
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point { x: self.x.to_f64(), y: self.y.to_f64() }
    }

    /// Equality under the scalar's own sign test.
    pub fn coincides(&self, other: &Self) -> bool {
        self.x.cmp_s(&other.x) == Ordering::Equal && self.y.cmp_s(&other.y) == Ordering::Equal
    }
}

impl Point<Rational> {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: crate::scalar::int(x), y: crate::scalar::int(y) }
    }
}

impl Point<f64> {
    pub fn dist(&self, other: &Self) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl<S: Scalar> Add for &Point<S> {
    type Output = Point<S>;
    fn add(self, rhs: Self) -> Point<S> {
        Point { x: self.x.clone() + rhs.x.clone(), y: self.y.clone() + rhs.y.clone() }
    }
}

impl<S: Scalar> Sub for &Point<S> {
    type Output = Point<S>;
    fn sub(self, rhs: Self) -> Point<S> {
        Point { x: self.x.clone() - rhs.x.clone(), y: self.y.clone() - rhs.y.clone() }
    }
}

/// Orientation of the triple `(a, b, c)`: `Greater` for a left turn.
pub fn orient<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>) -> Ordering {
    let u = b - a;
    let v = c - a;
    let scale = u.l1() * v.l1();
    u.cross(&v).sign_scaled(&scale)
}

/// Whether `p`, already known to be collinear with `a`-`b`, lies on the
/// closed segment.
fn within_box<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> bool {
    let (xlo, xhi) = ordered(&a.x, &b.x);
    let (ylo, yhi) = ordered(&a.y, &b.y);
    p.x.cmp_s(xlo) != Ordering::Less
        && p.x.cmp_s(xhi) != Ordering::Greater
        && p.y.cmp_s(ylo) != Ordering::Less
        && p.y.cmp_s(yhi) != Ordering::Greater
}

fn ordered<'a, S: Scalar>(a: &'a S, b: &'a S) -> (&'a S, &'a S) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Whether `p` lies on the closed segment `a`-`b`.
pub fn on_segment<S: Scalar>(a: &Point<S>, b: &Point<S>, p: &Point<S>) -> bool {
    orient(a, b, p) == Ordering::Equal && within_box(a, b, p)
}

/// Closed-segment intersection test, touching and collinear overlap included.
pub fn segments_intersect<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>, d: &Point<S>) -> bool {
    if !boxes_overlap(a, b, c, d) {
        return false;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Ordering::Equal && within_box(a, b, c))
        || (o2 == Ordering::Equal && within_box(a, b, d))
        || (o3 == Ordering::Equal && within_box(c, d, a))
        || (o4 == Ordering::Equal && within_box(c, d, b))
}

fn boxes_overlap<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>, d: &Point<S>) -> bool {
    let (ax0, ax1) = ordered(&a.x, &b.x);
    let (cx0, cx1) = ordered(&c.x, &d.x);
    let (ay0, ay1) = ordered(&a.y, &b.y);
    let (cy0, cy1) = ordered(&c.y, &d.y);
    ax0.cmp_s(cx1) != Ordering::Greater
        && cx0.cmp_s(ax1) != Ordering::Greater
        && ay0.cmp_s(cy1) != Ordering::Greater
        && cy0.cmp_s(ay1) != Ordering::Greater
}

/// Euclidean distance from `p` to the segment `a`-`b` (float only).
pub fn point_segment_distance(p: &Point<f64>, a: &Point<f64>, b: &Point<f64>) -> f64 {
    let d = b - a;
    let len2 = d.dot(&d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(&d) / len2).clamp(0.0, 1.0);
    p.dist(&a.lerp(b, &t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(x: i64, y: i64) -> Point<Rational> {
        Point::from_ints(x, y)
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Ordering::Greater);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, -1)), Ordering::Less);
        assert_eq!(orient(&p(0, 0), &p(1, 1), &p(3, 3)), Ordering::Equal);
    }

    #[test]
    fn crossing_and_touching_segments() {
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 5)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 1), &p(0, 1), &p(-1, 3)));
    }

    #[test]
    fn on_segment_is_exact() {
        let a = p(0, 0);
        let b = p(3, 1);
        assert!(on_segment(&a, &b, &Point::new(rat(3, 2), rat(1, 2))));
        assert!(!on_segment(&a, &b, &Point::new(rat(3, 2), rat(1, 2) + rat(1, 1_000_000_000_000))));
    }

    #[test]
    fn rotation_is_quarter_turn() {
        assert_eq!(p(1, 2).rot90(), p(-2, 1));
    }

    #[test]
    fn float_distance() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        assert!((point_segment_distance(&Point::new(1.0, 1.0), &a, &b) - 1.0).abs() < 1e-15);
        assert!((point_segment_distance(&Point::new(3.0, 0.0), &a, &b) - 1.0).abs() < 1e-15);
    }
}
