//! The 1-cycle of squares with vertices 1, 2 and 4 on three cylinder curves.
//!
//! A square is recorded as `(x, y, a, b)` with `(x, y)` its first vertex and
//! `(a, b)` its first side. Requiring the first, second and fourth vertices to
//! lie on given edges of `s1`, `s2`, `s4` leaves two linear equations in the
//! three edge parameters, so every edge triple contributes a segment (or
//! nothing). The segments are oriented as the transverse intersection of the
//! three constraint hypersurfaces and stitched by exact endpoint matching.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::quad::SquareQuad;
use super::SquareError;
use crate::geom::{derived_seed, on_segment, overlapping_shifts, perturb_generic, CylCurve, Point, RETRY_BUDGET};
use crate::scalar::{mod_period, Rational, Scalar};

type Q = Rational;

/// One closed component of the cycle, lifted so that `x` is continuous.
/// The last quad equals the first shifted by `degree * L`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleComponent {
    pub quads: Vec<SquareQuad<Q>>,
    pub degree: i64,
}

impl CycleComponent {
    /// Trace of vertex `k` (0-based) of the squares along the component.
    pub fn vertex_curve(&self, k: usize) -> Vec<Point<Q>> {
        self.quads.iter().map(|q| q.vertices()[k].clone()).collect()
    }

    /// Pushforward to the third vertex, `p1 + (a - b, a + b)`.
    pub fn gamma3(&self) -> Vec<Point<Q>> {
        self.vertex_curve(2)
    }

    pub fn is_degenerate(&self) -> bool {
        self.quads.iter().all(SquareQuad::is_degenerate)
    }
}

/// All components of the cycle for one triple of curves.
#[derive(Debug, Clone, PartialEq)]
pub struct Sigma124 {
    pub period: Q,
    pub components: Vec<CycleComponent>,
}

impl Sigma124 {
    pub fn total_degree(&self) -> i64 {
        self.components.iter().map(|c| c.degree).sum()
    }
}

#[derive(Clone)]
struct Edge {
    start: Point<Q>,
    dir: Point<Q>,
}

impl Edge {
    fn of(curve: &CylCurve<Q>, k: i64) -> Self {
        let (p, q) = curve.edge(k);
        let dir = &q - &p;
        Edge { start: p, dir }
    }

    fn at(&self, s: &Q) -> Point<Q> {
        Point::new(&self.start.x + s * &self.dir.x, &self.start.y + s * &self.dir.y)
    }

    fn x_bounds(&self) -> (f64, f64) {
        let a = Scalar::to_f64(&self.start.x);
        let b = a + Scalar::to_f64(&self.dir.x);
        (a.min(b), a.max(b))
    }
}

/// Stitching key of a square on the cylinder.
type Key = (Q, Q, Q, Q);

#[derive(Clone, Debug)]
struct Piece {
    start: SquareQuad<Q>,
    end: SquareQuad<Q>,
}

#[allow(clippy::large_enum_variant)]
enum TripleOutcome {
    Empty,
    Point(SquareQuad<Q>),
    Segment(Piece),
}

fn det2(a: &Q, b: &Q, c: &Q, d: &Q) -> Q {
    a * d - b * c
}

fn det3(m: [[&Q; 3]; 3]) -> Q {
    m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) - m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2])
        + m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1])
}

/// Tangent of the solution curve in `(x, y, a, b)` space, from the gradients
/// of the three incidence constraints. Signed so that the diagonal of three
/// rightward curves runs rightwards.
fn tangent(d1: &Point<Q>, d2: &Point<Q>, d4: &Point<Q>) -> [Q; 4] {
    let z = Q::zero();
    let rows = [
        [-d1.y.clone(), d1.x.clone(), z.clone(), z.clone()],
        [-d2.y.clone(), d2.x.clone(), -d2.y.clone(), d2.x.clone()],
        [-d4.y.clone(), d4.x.clone(), d4.x.clone(), d4.y.clone()],
    ];
    let mut out: [Q; 4] = Default::default();
    for (k, slot) in out.iter_mut().enumerate() {
        let cols: Vec<usize> = (0..4).filter(|&c| c != k).collect();
        let m = [0, 1, 2].map(|r| [&rows[r][cols[0]], &rows[r][cols[1]], &rows[r][cols[2]]]);
        let minor = det3(m);
        *slot = if k % 2 == 0 { -minor } else { minor };
    }
    out
}

fn quad_at(e1: &Edge, e2: &Edge, s: &[Q; 3]) -> SquareQuad<Q> {
    let p1 = e1.at(&s[0]);
    let p2 = e2.at(&s[1]);
    let a = &p2.x - &p1.x;
    let b = &p2.y - &p1.y;
    SquareQuad::new(p1.x, p1.y, a, b)
}

fn unit_interval_contains(v: &Q) -> bool {
    !v.is_negative() && *v <= Q::one()
}

/// Squares with vertices 1, 2, 4 on the given edges.
fn solve_triple(e1: &Edge, e2: &Edge, e4: &Edge, ids: (usize, usize, usize)) -> Result<TripleOutcome, SquareError> {
    // s4 D4 - s2 R D2 - s1 (I - R) D1 = (I - R) A1 + R A2 - A4, with R the
    // quarter turn (x, y) -> (-y, x).
    let (d1, d2, d4) = (&e1.dir, &e2.dir, &e4.dir);
    let (a1, a2, a4) = (&e1.start, &e2.start, &e4.start);
    let m = [
        [-(&d1.x + &d1.y), d2.y.clone(), d4.x.clone()],
        [-(&d1.y - &d1.x), -d2.x.clone(), d4.y.clone()],
    ];
    let rhs = [&a1.x + &a1.y - &a2.y - &a4.x, &a1.y - &a1.x + &a2.x - &a4.y];
    let null = [
        det2(&m[0][1], &m[0][2], &m[1][1], &m[1][2]),
        det2(&m[0][2], &m[0][0], &m[1][2], &m[1][0]),
        det2(&m[0][0], &m[0][1], &m[1][0], &m[1][1]),
    ];
    let Some(pivot) = (0..3).find(|&i| !null[i].is_zero()) else {
        return rank_deficient(&m, &rhs, ids);
    };
    // Particular solution with the pivot coordinate set to zero.
    let (j, k) = match pivot {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    let det = det2(&m[0][j], &m[0][k], &m[1][j], &m[1][k]);
    let mut base: [Q; 3] = Default::default();
    base[j] = det2(&rhs[0], &m[0][k], &rhs[1], &m[1][k]) / &det;
    base[k] = det2(&m[0][j], &rhs[0], &m[1][j], &rhs[1]) / &det;

    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for i in 0..3 {
        if null[i].is_zero() {
            if !unit_interval_contains(&base[i]) {
                return Ok(TripleOutcome::Empty);
            }
            continue;
        }
        let t0 = -&base[i] / &null[i];
        let t1 = (Q::one() - &base[i]) / &null[i];
        let (a, b) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
        lo = Some(lo.map_or(a.clone(), |l| l.max(a)));
        hi = Some(hi.map_or(b.clone(), |h| h.min(b)));
    }
    let (lo, hi) = (lo.expect("pivot is bounded"), hi.expect("pivot is bounded"));
    if lo > hi {
        return Ok(TripleOutcome::Empty);
    }
    let point = |t: &Q| -> [Q; 3] { [0, 1, 2].map(|i| &base[i] + t * &null[i]) };
    let q_lo = quad_at(e1, e2, &point(&lo));
    if lo == hi {
        return Ok(TripleOutcome::Point(q_lo));
    }
    let q_hi = quad_at(e1, e2, &point(&hi));
    let v = tangent(d1, d2, d4);
    let dq = [&q_hi.x - &q_lo.x, &q_hi.y - &q_lo.y, &q_hi.a - &q_lo.a, &q_hi.b - &q_lo.b];
    let along: Q = (0..4).map(|i| &dq[i] * &v[i]).sum();
    if along.is_zero() {
        return Err(SquareError::NotTransverse);
    }
    Ok(TripleOutcome::Segment(if along.is_positive() {
        Piece { start: q_lo, end: q_hi }
    } else {
        Piece { start: q_hi, end: q_lo }
    }))
}

fn rank_deficient(m: &[[Q; 3]; 2], rhs: &[Q; 2], ids: (usize, usize, usize)) -> Result<TripleOutcome, SquareError> {
    let row = if m[0].iter().any(|v| !v.is_zero()) { 0 } else { 1 };
    if m[row].iter().all(Q::is_zero) {
        return if rhs.iter().all(Q::is_zero) {
            Err(SquareError::DegenerateTriple(ids.0, ids.1, ids.2))
        } else {
            Ok(TripleOutcome::Empty)
        };
    }
    let other = 1 - row;
    let consistent = (0..3).all(|i| det2(&m[row][i], &rhs[row], &m[other][i], &rhs[other]).is_zero());
    if !consistent {
        return Ok(TripleOutcome::Empty);
    }
    // Does the plane `m[row] . s = rhs[row]` meet the unit cube?
    let corners = (0..8u8).map(|bits| {
        (0..3).filter(|i| bits >> i & 1 == 1).map(|i| m[row][i].clone()).sum::<Q>()
    });
    let (mut below, mut above) = (false, false);
    for c in corners {
        below |= c <= rhs[row];
        above |= c >= rhs[row];
    }
    if below && above {
        Err(SquareError::DegenerateTriple(ids.0, ids.1, ids.2))
    } else {
        Ok(TripleOutcome::Empty)
    }
}

fn key(q: &SquareQuad<Q>, period: &Q) -> Key {
    (mod_period(&q.x, period), q.y.clone(), q.a.clone(), q.b.clone())
}

fn check_inputs(curves: &[&CylCurve<Q>]) -> Result<Q, SquareError> {
    let period = curves[0].period().clone();
    for c in curves {
        if c.degree() != 1 {
            return Err(SquareError::NotDegreeOne);
        }
        if *c.period() != period {
            return Err(SquareError::PeriodMismatch);
        }
    }
    Ok(period)
}

fn f64_range((lo, hi): (Q, Q)) -> (f64, f64) {
    (Scalar::to_f64(&lo), Scalar::to_f64(&hi))
}

/// The cycle of squares whose first, second and fourth vertices lie on `s1`,
/// `s2`, `s4`, split into closed components.
pub fn sigma124_cycle(s1: &CylCurve<Q>, s2: &CylCurve<Q>, s4: &CylCurve<Q>) -> Result<Sigma124, SquareError> {
    let period = check_inputs(&[s1, s2, s4])?;
    let lf = Scalar::to_f64(&period);
    let (y1lo, y1hi) = f64_range(s1.y_range());
    let (y2lo, y2hi) = f64_range(s2.y_range());
    let (y4lo, y4hi) = f64_range(s4.y_range());
    let edges2: Vec<Edge> = (0..s2.vertex_count() as i64).map(|k| Edge::of(s2, k)).collect();
    let edges4: Vec<Edge> = (0..s4.vertex_count() as i64).map(|k| Edge::of(s4, k)).collect();

    let per_edge: Vec<Result<Vec<TripleOutcome>, SquareError>> = (0..s1.vertex_count())
        .into_par_iter()
        .map(|i1| {
            let e1 = Edge::of(s1, i1 as i64);
            let (xlo, xhi) = e1.x_bounds();
            // Second vertex sits at x + a with a = y4 - y1; fourth at x - b
            // with b = y2 - y1.
            let win2 = (xlo + y4lo - y1hi, xhi + y4hi - y1lo);
            let win4 = (xlo - (y2hi - y1lo), xhi - (y2lo - y1hi));
            let mut out = Vec::new();
            for (i2, base2) in edges2.iter().enumerate() {
                let (lo2, hi2) = base2.x_bounds();
                for k2 in overlapping_shifts(lo2, hi2, win2.0, win2.1, lf) {
                    let e2 = shifted(base2, &period, k2);
                    for (i4, base4) in edges4.iter().enumerate() {
                        let (lo4, hi4) = base4.x_bounds();
                        for k4 in overlapping_shifts(lo4, hi4, win4.0, win4.1, lf) {
                            let e4 = shifted(base4, &period, k4);
                            out.push(solve_triple(&e1, &e2, &e4, (i1, i2, i4))?);
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();

    let mut pieces = Vec::new();
    let mut isolated = Vec::new();
    let mut seen = BTreeSet::new();
    for outcomes in per_edge {
        for o in outcomes? {
            match o {
                TripleOutcome::Empty => {}
                TripleOutcome::Point(q) => isolated.push(q),
                TripleOutcome::Segment(p) => {
                    if seen.insert((key(&p.start, &period), key(&p.end, &period))) {
                        pieces.push(p);
                    }
                }
            }
        }
    }
    let components = stitch(&pieces, &isolated, &period)?;
    Ok(Sigma124 { period, components })
}

fn shifted(e: &Edge, period: &Q, k: i64) -> Edge {
    Edge { start: e.start.shifted(&(period * Q::from_integer(k.into()))), dir: e.dir.clone() }
}

fn stitch(pieces: &[Piece], isolated: &[SquareQuad<Q>], period: &Q) -> Result<Vec<CycleComponent>, SquareError> {
    let mut by_start: BTreeMap<Key, usize> = BTreeMap::new();
    let mut ends: BTreeSet<Key> = BTreeSet::new();
    for (i, p) in pieces.iter().enumerate() {
        if by_start.insert(key(&p.start, period), i).is_some() || !ends.insert(key(&p.end, period)) {
            return Err(SquareError::NotTransverse);
        }
    }
    if by_start.keys().ne(ends.iter()) {
        return Err(SquareError::NotTransverse);
    }
    if isolated.iter().any(|q| !ends.contains(&key(q, period))) {
        return Err(SquareError::NotTransverse);
    }
    let mut used = vec![false; pieces.len()];
    let mut out = Vec::new();
    for first in 0..pieces.len() {
        if used[first] {
            continue;
        }
        let mut quads = vec![pieces[first].start.clone()];
        let mut cur = first;
        loop {
            used[cur] = true;
            let last = quads.last().expect("non-empty").clone();
            // Re-lift the piece so that it starts where the previous one ended.
            let dx = &last.x - &pieces[cur].start.x;
            let mut end = pieces[cur].end.clone();
            end.x += dx;
            quads.push(end);
            let next = by_start[&key(&pieces[cur].end, period)];
            if next == first {
                break;
            }
            cur = next;
        }
        let shift = &quads.last().expect("non-empty").x - &quads[0].x;
        let degree = shift / period;
        if !degree.is_integer() {
            return Err(SquareError::NotTransverse);
        }
        let degree = degree.to_integer().to_i64().ok_or(SquareError::NotTransverse)?;
        out.push(CycleComponent { quads, degree });
    }
    Ok(out)
}

/// [`sigma124_cycle`] on the input, falling back to seeded general-position
/// perturbations of size `magnitude` when the input is not transverse. Returns
/// the curves actually used.
pub fn sigma124_cycle_generic(
    curves: [&CylCurve<Q>; 3],
    seed: u64,
    magnitude: &Q,
) -> Result<(Sigma124, Vec<CylCurve<Q>>), SquareError> {
    with_retries(&curves, seed, magnitude, |c| sigma124_cycle(&c[0], &c[1], &c[2]))
}

fn with_retries<T>(
    curves: &[&CylCurve<Q>],
    seed: u64,
    magnitude: &Q,
    run: impl Fn(&[CylCurve<Q>]) -> Result<T, SquareError>,
) -> Result<(T, Vec<CylCurve<Q>>), SquareError> {
    let owned: Vec<CylCurve<Q>> = curves.iter().map(|c| (*c).clone()).collect();
    match run(&owned) {
        Ok(v) => return Ok((v, owned)),
        Err(SquareError::NotTransverse | SquareError::DegenerateTriple(..)) => {}
        Err(e) => return Err(e),
    }
    let mut last = SquareError::NotTransverse;
    for attempt in 0..RETRY_BUDGET as u64 {
        let moved = perturb_generic(&owned, derived_seed(seed, attempt), magnitude)?;
        match run(&moved) {
            Ok(v) => return Ok((v, moved)),
            Err(e @ (SquareError::NotTransverse | SquareError::DegenerateTriple(..))) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Parameter `u` in `[0, 1]` of the first point of `p + u (q - p)` on the
/// closed segment `c`-`d`, if any.
fn first_hit(p: &Point<Q>, q: &Point<Q>, c: &Point<Q>, d: &Point<Q>) -> Option<Q> {
    let dir = q - p;
    let e = d - c;
    let w = c - p;
    let denom = dir.cross(&e);
    if !denom.is_zero() {
        let u = w.cross(&e) / &denom;
        let v = w.cross(&dir) / &denom;
        return (unit_interval_contains(&u) && unit_interval_contains(&v)).then_some(u);
    }
    if dir.is_zero_vec() {
        return on_segment(c, d, p).then(Q::zero);
    }
    if !w.cross(&dir).is_zero() {
        return None;
    }
    // Collinear: project the other segment onto this one.
    let len2 = dir.dot(&dir);
    let u0 = w.dot(&dir) / &len2;
    let u1 = (d - p).dot(&dir) / &len2;
    let (lo, hi) = if u0 < u1 { (u0, u1) } else { (u1, u0) };
    let lo = lo.max(Q::zero());
    let hi = hi.min(Q::one());
    (lo <= hi).then_some(lo)
}

trait ZeroVec {
    fn is_zero_vec(&self) -> bool;
}

impl ZeroVec for Point<Q> {
    fn is_zero_vec(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// A square (possibly degenerate) with vertex `k` on `s_k` for every `k`, or
/// `None`. The first witness in component and segment order is returned.
pub fn joint_inscribe(
    s1: &CylCurve<Q>,
    s2: &CylCurve<Q>,
    s3: &CylCurve<Q>,
    s4: &CylCurve<Q>,
) -> Result<Option<SquareQuad<Q>>, SquareError> {
    let period = check_inputs(&[s1, s2, s3, s4])?;
    let cycle = sigma124_cycle(s1, s2, s4)?;
    let lf = Scalar::to_f64(&period);
    let edges3: Vec<Edge> = (0..s3.vertex_count() as i64).map(|k| Edge::of(s3, k)).collect();
    for comp in &cycle.components {
        let g3 = comp.gamma3();
        for i in 0..g3.len() - 1 {
            let (p, q) = (&g3[i], &g3[i + 1]);
            let (px, qx) = (Scalar::to_f64(&p.x), Scalar::to_f64(&q.x));
            let mut best: Option<Q> = None;
            for base in &edges3 {
                let (lo, hi) = base.x_bounds();
                for k in overlapping_shifts(lo, hi, px.min(qx), px.max(qx), lf) {
                    let e = shifted(base, &period, k);
                    let end = &e.start + &e.dir;
                    if let Some(u) = first_hit(p, q, &e.start, &end) {
                        best = Some(best.map_or(u.clone(), |b| b.min(u)));
                    }
                }
            }
            if let Some(u) = best {
                let (a, b) = (&comp.quads[i], &comp.quads[i + 1]);
                let mix = |x: &Q, y: &Q| x + &u * (y - x);
                return Ok(Some(SquareQuad::new(mix(&a.x, &b.x), mix(&a.y, &b.y), mix(&a.a, &b.a), mix(&a.b, &b.b))));
            }
        }
    }
    Ok(None)
}

/// A square, if any, and the curves it was found on.
pub type JointOutcome = (Option<SquareQuad<Q>>, Vec<CylCurve<Q>>);

/// [`joint_inscribe`] with the perturbation fallback of
/// [`sigma124_cycle_generic`] applied to all four curves together.
pub fn joint_inscribe_generic(
    curves: [&CylCurve<Q>; 4],
    seed: u64,
    magnitude: &Q,
) -> Result<JointOutcome, SquareError> {
    with_retries(&curves, seed, magnitude, |c| joint_inscribe(&c[0], &c[1], &c[2], &c[3]))
}

/// `A(s1) - A(s2) + A(s3) - A(s4)` over one period, `A` the area under.
pub fn area_ineq_value(s1: &CylCurve<Q>, s2: &CylCurve<Q>, s3: &CylCurve<Q>, s4: &CylCurve<Q>) -> Q {
    s1.area_one_period() - s2.area_one_period() + s3.area_one_period() - s4.area_one_period()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn flat(c: Q) -> CylCurve<Q> {
        CylCurve::constant(int(10), c)
    }

    #[test]
    fn diagonal_cycle_for_equal_graphs() {
        let g = flat(int(0));
        let cyc = sigma124_cycle(&g, &g, &g).unwrap();
        assert_eq!(cyc.total_degree(), 1);
        assert_eq!(cyc.components.len(), 1);
        let comp = &cyc.components[0];
        assert!(comp.is_degenerate());
        assert!(comp.gamma3().iter().all(|p| p.y.is_zero()));
    }

    #[test]
    fn constant_heights_give_constant_side() {
        let (c1, c2, c4) = (int(0), rat(3, 2), int(2));
        let cyc = sigma124_cycle(&flat(c1.clone()), &flat(c2.clone()), &flat(c4.clone())).unwrap();
        assert_eq!(cyc.total_degree(), 1);
        for comp in &cyc.components {
            for q in &comp.quads {
                assert_eq!(q.a, &c4 - &c1);
                assert_eq!(q.b, &c2 - &c1);
            }
            assert!(comp.gamma3().iter().all(|p| p.y == &c2 + &c4 - &c1));
        }
    }

    #[test]
    fn joint_inscription_of_constant_heights() {
        let g = flat(int(0));
        let w = joint_inscribe(&g, &g, &g, &g).unwrap().unwrap();
        assert!(w.is_degenerate());
        let (c1, c2, c4) = (int(1), int(3), int(2));
        let good = &c2 + &c4 - &c1;
        assert!(joint_inscribe(&flat(c1.clone()), &flat(c2.clone()), &flat(good), &flat(c4.clone())).unwrap().is_some());
        assert!(joint_inscribe(&flat(c1), &flat(c2), &flat(int(7)), &flat(c4)).unwrap().is_none());
    }

    #[test]
    fn area_sum_of_constant_heights() {
        let v = area_ineq_value(&flat(int(1)), &flat(int(2)), &flat(int(4)), &flat(int(8)));
        assert_eq!(v, int(10) * int(1 - 2 + 4 - 8));
    }

    #[test]
    fn bumpy_triple_has_total_degree_one() {
        let l = int(10);
        let bump = |h: i64| {
            CylCurve::from_lift(
                l.clone(),
                vec![Point::new(int(0), int(0)), Point::new(int(3), int(h)), Point::new(int(7), rat(-1, 3)), Point::new(int(10), int(0))],
            )
            .unwrap()
        };
        let curves = [bump(1), bump(2), bump(-1)];
        let (cyc, _) = sigma124_cycle_generic([&curves[0], &curves[1], &curves[2]], 7, &rat(1, 100)).unwrap();
        assert_eq!(cyc.total_degree(), 1);
    }
}
