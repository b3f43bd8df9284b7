use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::fiber::{check_degree_one, crossings};
use super::BridgeError;
use crate::geom::CylCurve;
use crate::scalar::{int, Rational};

type Q = Rational;

/// Events allowed before a trajectory is declared non-periodic.
const EVENT_CAP: usize = 1_000_000;

/// Three particles on one vertical line, one per curve, each on a lift edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceState {
    pub edges: [i64; 3],
    pub x: Q,
    /// `+1` or `-1`.
    pub direction: i8,
}

/// One closed orbit of the dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Start state, the state after every event, then the start shifted by
    /// `degree` periods.
    pub states: Vec<TraceState>,
    /// Net number of periods travelled in `x`.
    pub degree: i64,
    /// Constant sign of `Y1 + Y2 + Y3`, `None` when it vanishes somewhere.
    pub sign: Option<Ordering>,
    /// First abscissa where the sum vanishes.
    pub zero_sum_at: Option<Q>,
    /// Number of direction reversals per period.
    pub collisions: usize,
}

impl Trajectory {
    /// `(x, [Y1, Y2, Y3])` at every recorded state.
    pub fn points(&self, curves: &[CylCurve<Q>; 3]) -> Vec<(Q, [Q; 3])> {
        self.states.iter().map(|s| (s.x.clone(), heights(curves, &s.edges, &s.x))).collect()
    }
}

fn height(curve: &CylCurve<Q>, edge: i64, x: &Q) -> Q {
    let (a, b) = curve.edge(edge);
    &a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x)
}

fn heights(curves: &[CylCurve<Q>; 3], edges: &[i64; 3], x: &Q) -> [Q; 3] {
    [0, 1, 2].map(|i| height(&curves[i], edges[i], x))
}

fn check_curves(curves: &[CylCurve<Q>; 3]) -> Result<(), BridgeError> {
    for c in curves {
        check_degree_one(c)?;
        if c.period() != curves[0].period() {
            return Err(BridgeError::PeriodMismatch);
        }
        for k in 0..c.vertex_count() as i64 {
            let (a, b) = c.edge(k);
            if a.x == b.x {
                return Err(BridgeError::NotGeneric(crate::geom::PositionViolation::VerticalEdge));
            }
        }
    }
    Ok(())
}

/// The state whose particles sit on crossing `picks[i]` (0-based, parameter
/// order) of each fiber over `x`.
pub fn start_state(curves: &[CylCurve<Q>; 3], x: &Q, picks: [usize; 3], direction: i8) -> Result<TraceState, BridgeError> {
    let mut edges = [0i64; 3];
    for i in 0..3 {
        let cs = crossings(&curves[i], x)?;
        edges[i] = cs.get(picks[i]).ok_or(BridgeError::BadStart)?.edge;
    }
    Ok(TraceState { edges, x: x.clone(), direction })
}

/// Runs the dynamics from `start` until it closes up modulo a shift by whole
/// periods.
pub fn trace_cycle(curves: &[CylCurve<Q>; 3], start: &TraceState) -> Result<Trajectory, BridgeError> {
    trace_inner(curves, start, None).map(|(t, _)| t)
}

fn shift_index(e: i64, n: i64, m: i64) -> i64 {
    e + m * n
}

fn trace_inner(
    curves: &[CylCurve<Q>; 3],
    start: &TraceState,
    probe: Option<&Q>,
) -> Result<(Trajectory, Vec<[i64; 3]>), BridgeError> {
    check_curves(curves)?;
    if start.direction.abs() != 1 {
        return Err(BridgeError::BadStart);
    }
    for i in 0..3 {
        let (a, b) = curves[i].edge(start.edges[i]);
        let inside = (a.x < start.x && start.x < b.x) || (b.x < start.x && start.x < a.x);
        if !inside {
            return Err(BridgeError::BadStart);
        }
    }
    let n = [0, 1, 2].map(|i| curves[i].vertex_count() as i64);
    let period = curves[0].period().clone();
    let mut cur = start.clone();
    let mut states = vec![start.clone()];
    let mut passes = Vec::new();
    let mut zero_sum_at: Option<Q> = None;
    let s0: Q = heights(curves, &start.edges, &start.x).into_iter().sum();
    let mut collisions = 0;
    for _ in 0..EVENT_CAP {
        let d = Q::from_integer(cur.direction.into());
        // Distance to the far end of each current edge.
        let targets: Vec<(i64, Q)> = (0..3)
            .map(|i| {
                let e = cur.edges[i];
                let (a, b) = curves[i].edge(e);
                let (v, vx) = if (&b.x - &a.x) * &d > Q::zero() { (e + 1, b.x) } else { (e, a.x) };
                (v, (vx - &cur.x) * &d)
            })
            .collect();
        let step = targets.iter().map(|t| t.1.clone()).min().expect("three particles");
        let x_new = &cur.x + &d * &step;

        let s_from: Q = heights(curves, &cur.edges, &cur.x).into_iter().sum();
        let s_to: Q = heights(curves, &cur.edges, &x_new).into_iter().sum();
        if zero_sum_at.is_none() && (s_from.is_zero() || s_to.is_zero() || s_from.is_positive() != s_to.is_positive()) {
            let at = if s_from == s_to { cur.x.clone() } else { &cur.x + (&x_new - &cur.x) * &s_from / (&s_from - &s_to) };
            zero_sum_at = Some(at);
        }

        // Does the move pass a shifted copy of the start or of the probe line?
        let lo = cur.x.clone().min(x_new.clone());
        let hi = cur.x.clone().max(x_new.clone());
        let m = (cur.edges[0] - start.edges[0]).div_euclid(n[0]);
        let aligned = (0..3).all(|i| cur.edges[i] == shift_index(start.edges[i], n[i], m));
        if aligned && cur.direction == start.direction && !(m == 0 && states.len() == 1) {
            let sx = &start.x + &period * int(m);
            if lo < sx && sx <= hi && sx != cur.x {
                let closing = TraceState {
                    edges: [0, 1, 2].map(|i| shift_index(start.edges[i], n[i], m)),
                    x: sx,
                    direction: start.direction,
                };
                states.push(closing);
                let sign = if zero_sum_at.is_some() { None } else { Some(s0.cmp(&Q::zero())) };
                let traj = Trajectory { states, degree: m, sign, zero_sum_at, collisions };
                return Ok((traj, passes));
            }
        }
        if let Some(px) = probe {
            let jlo = ((&lo - px) / &period).floor().to_integer();
            let jhi = ((&hi - px) / &period).ceil().to_integer();
            let (jlo, jhi): (i64, i64) = (jlo.try_into().unwrap_or(0), jhi.try_into().unwrap_or(0));
            for j in jlo..=jhi {
                let line = px + &period * int(j);
                if lo < line && line < hi {
                    passes.push([0, 1, 2].map(|i| shift_index(cur.edges[i], n[i], -j)));
                }
            }
        }

        let hitters: Vec<usize> = (0..3).filter(|&i| targets[i].1 == step).collect();
        let mut turned = 0;
        let mut next = cur.edges;
        for &i in &hitters {
            let (v, _) = targets[i];
            let new_edge = if v == cur.edges[i] + 1 { v } else { v - 1 };
            let (a, b) = curves[i].edge(new_edge);
            let (here, there) = if new_edge == v { (a, b) } else { (b, a) };
            if (&there.x - &here.x) * &d < Q::zero() {
                turned += 1;
            }
            next[i] = new_edge;
        }
        if turned > 0 && hitters.len() > 1 {
            return Err(BridgeError::SimultaneousCollision { x: crate::format_rational(&x_new) });
        }
        cur = TraceState { edges: next, x: x_new, direction: if turned > 0 { -cur.direction } else { cur.direction } };
        collisions += turned;
        states.push(cur.clone());
    }
    Err(BridgeError::NoPeriod(EVENT_CAP))
}

/// Every orbit through the fiber over `x`, each traced once starting
/// rightwards from its first unvisited crossing triple.
pub fn trace_components(curves: &[CylCurve<Q>; 3], x: &Q) -> Result<Vec<Trajectory>, BridgeError> {
    let fibers: Vec<Vec<i64>> =
        curves.iter().map(|c| crossings(c, x).map(|cs| cs.into_iter().map(|c| c.edge).collect())).collect::<Result<_, _>>()?;
    let mut seen: BTreeSet<[i64; 3]> = BTreeSet::new();
    let mut out = Vec::new();
    for &e1 in &fibers[0] {
        for &e2 in &fibers[1] {
            for &e3 in &fibers[2] {
                let edges = [e1, e2, e3];
                if seen.contains(&edges) {
                    continue;
                }
                let start = TraceState { edges, x: x.clone(), direction: 1 };
                let (traj, passes) = trace_inner(curves, &start, Some(x))?;
                seen.insert(edges);
                seen.extend(passes);
                out.push(traj);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::scalar::{mod_period, rat};

    #[test]
    fn constant_curves_trivial_orbit() {
        let curves = [int(1), int(2), int(-5)].map(|c| CylCurve::constant(int(10), c));
        let start = start_state(&curves, &rat(1, 2), [0, 0, 0], 1).unwrap();
        let t = trace_cycle(&curves, &start).unwrap();
        assert_eq!(t.degree, 1);
        assert_eq!(t.sign, Some(Ordering::Less));
        assert_eq!(t.collisions, 0);
        let back = trace_cycle(&curves, &TraceState { direction: -1, ..start }).unwrap();
        assert_eq!(back.degree, -1);
    }

    fn zigzag(y0: i64) -> CylCurve<Q> {
        let lift = vec![Point::from_ints(0, y0), Point::from_ints(6, y0 + 1), Point::from_ints(2, y0 + 3)];
        CylCurve::new(int(10), lift, 1).unwrap()
    }

    #[test]
    fn reversal_retraces_the_orbit() {
        let curves = [
            zigzag(0),
            CylCurve::new(int(10), vec![Point::new(rat(1, 3), int(1))], 1).unwrap(),
            CylCurve::new(int(10), vec![Point::new(rat(7, 5), int(-20))], 1).unwrap(),
        ];
        let start = start_state(&curves, &int(4), [1, 0, 0], 1).unwrap();
        let fwd = trace_cycle(&curves, &start).unwrap();
        let back = trace_cycle(&curves, &TraceState { direction: -1, ..start.clone() }).unwrap();
        assert_eq!(fwd.degree, -back.degree);
        assert_eq!(fwd.collisions, back.collisions);
        let xs = |t: &Trajectory| t.states.iter().map(|s| mod_period(&s.x, &int(10))).collect::<BTreeSet<Q>>();
        assert_eq!(xs(&fwd), xs(&back));
        assert_eq!(fwd.sign, Some(Ordering::Less));
    }

    #[test]
    fn components_cover_every_fiber_triple() {
        let curves = [
            zigzag(0),
            CylCurve::new(int(10), vec![Point::new(rat(1, 3), int(1))], 1).unwrap(),
            CylCurve::new(int(10), vec![Point::new(rat(7, 5), int(-20))], 1).unwrap(),
        ];
        let comps = trace_components(&curves, &int(4)).unwrap();
        // The zigzag's single orbit with the two lines: all three crossings
        // lie on one component of degree one.
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].degree, 1);
    }
}
