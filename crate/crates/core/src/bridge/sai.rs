use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::fiber::check_degree_one;
use super::BridgeError;
use crate::geom::{overlapping_shifts, CylCurve, Point};
use crate::scalar::{Rational, Scalar};

type Q = Rational;

/// Three points on one vertical line, one per curve, with zero height sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumWitness {
    pub x: Q,
    pub y: [Q; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaiReport {
    pub witness: Option<ZeroSumWitness>,
    /// `y dx` over one period of each curve, summed.
    pub area: Q,
    /// A witness exists or the area is nonzero.
    pub consistent: bool,
}

#[derive(Clone)]
struct Seg {
    a: Point<Q>,
    b: Point<Q>,
    lo: Q,
    hi: Q,
}

impl Seg {
    fn new(a: Point<Q>, b: Point<Q>) -> Self {
        let (lo, hi) = if a.x <= b.x { (a.x.clone(), b.x.clone()) } else { (b.x.clone(), a.x.clone()) };
        Seg { a, b, lo, hi }
    }

    fn shifted(&self, dx: &Q) -> Self {
        Seg::new(self.a.shifted(dx), self.b.shifted(dx))
    }

    fn vertical(&self) -> bool {
        self.a.x == self.b.x
    }

    fn at(&self, x: &Q) -> Q {
        &self.a.y + (&self.b.y - &self.a.y) * (x - &self.a.x) / (&self.b.x - &self.a.x)
    }

    /// Range of heights over abscissa `x` (inside the span).
    fn heights(&self, x: &Q) -> (Q, Q) {
        if self.vertical() {
            let (l, h) = (self.a.y.clone(), self.b.y.clone());
            if l <= h {
                (l, h)
            } else {
                (h, l)
            }
        } else {
            let y = self.at(x);
            (y.clone(), y)
        }
    }
}

fn segments(curve: &CylCurve<Q>) -> Vec<Seg> {
    (0..curve.vertex_count() as i64)
        .map(|k| {
            let (a, b) = curve.edge(k);
            Seg::new(a, b)
        })
        .collect()
}

/// Zero of `y1 + y2 + y3` over the common span of three segments.
fn triple_zero(s: [&Seg; 3]) -> Option<ZeroSumWitness> {
    let lo = s.iter().map(|t| t.lo.clone()).max().expect("three");
    let hi = s.iter().map(|t| t.hi.clone()).min().expect("three");
    if lo > hi {
        return None;
    }
    if s.iter().any(|t| t.vertical()) || lo == hi {
        let x = lo;
        let ranges: Vec<(Q, Q)> = s.iter().map(|t| t.heights(&x)).collect();
        let min: Q = ranges.iter().map(|r| r.0.clone()).sum();
        let max: Q = ranges.iter().map(|r| r.1.clone()).sum();
        if min.is_positive() || max.is_negative() {
            return None;
        }
        // Raise from the minimal heights until the sum reaches zero.
        let mut need = -min;
        let y = [0, 1, 2].map(|i| {
            let room = &ranges[i].1 - &ranges[i].0;
            let take = room.min(need.clone());
            need -= &take;
            &ranges[i].0 + take
        });
        return Some(ZeroSumWitness { x, y });
    }
    let sum = |x: &Q| -> Q { s.iter().map(|t| t.at(x)).sum() };
    let (f_lo, f_hi) = (sum(&lo), sum(&hi));
    if (f_lo.is_positive() && f_hi.is_positive()) || (f_lo.is_negative() && f_hi.is_negative()) {
        return None;
    }
    let x = if f_lo.is_zero() { lo } else { &lo + (&hi - &lo) * &f_lo / (&f_lo - &f_hi) };
    let y = [0, 1, 2].map(|i| s[i].at(&x));
    Some(ZeroSumWitness { x, y })
}

/// Exact search for a zero-sum fiber, and the total area.
pub fn sai_check(curves: &[CylCurve<Q>; 3]) -> Result<SaiReport, BridgeError> {
    for c in curves {
        check_degree_one(c)?;
        if c.period() != curves[0].period() {
            return Err(BridgeError::PeriodMismatch);
        }
    }
    let period = curves[0].period().clone();
    let pf = Scalar::to_f64(&period);
    let segs: Vec<Vec<Seg>> = curves.iter().map(segments).collect();
    let f = |q: &Q| Scalar::to_f64(q);
    let witness = segs[0].par_iter().find_map_first(|s1| {
        for base2 in &segs[1] {
            for k2 in overlapping_shifts(f(&base2.lo), f(&base2.hi), f(&s1.lo), f(&s1.hi), pf) {
                let s2 = base2.shifted(&(&period * Q::from_integer(k2.into())));
                if s2.lo > s1.hi || s2.hi < s1.lo {
                    continue;
                }
                let (lo, hi) = (s1.lo.clone().max(s2.lo.clone()), s1.hi.clone().min(s2.hi.clone()));
                for base3 in &segs[2] {
                    for k3 in overlapping_shifts(f(&base3.lo), f(&base3.hi), f(&lo), f(&hi), pf) {
                        let s3 = base3.shifted(&(&period * Q::from_integer(k3.into())));
                        if let Some(w) = triple_zero([s1, &s2, &s3]) {
                            return Some(w);
                        }
                    }
                }
            }
        }
        None
    });
    let area: Q = curves.iter().map(|c| c.area_one_period()).sum();
    let consistent = witness.is_some() || !area.is_zero();
    Ok(SaiReport { witness, area, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn constant_heights() {
        let zero = [int(1), int(2), int(-3)].map(|c| CylCurve::constant(int(10), c));
        let r = sai_check(&zero).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.y.iter().cloned().sum::<Q>(), Q::zero());
        assert!(r.consistent);

        let off = [int(1), int(2), int(-4)].map(|c| CylCurve::constant(int(10), c));
        let r = sai_check(&off).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.area, int(-10));
    }

    #[test]
    fn vertical_edge_witness() {
        // A step curve whose vertical edge crosses height -1 at x = 3.
        let step = CylCurve::new(
            int(10),
            vec![Point::from_ints(0, -5), Point::from_ints(3, -5), Point::from_ints(3, 5), Point::from_ints(8, 5), Point::from_ints(8, -5)],
            1,
        )
        .unwrap();
        let flat = CylCurve::constant(int(10), rat(1, 2));
        let r = sai_check(&[step, flat.clone(), flat]).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.y.iter().cloned().sum::<Q>(), Q::zero());
        assert_eq!(w.x, int(3));
    }
}
