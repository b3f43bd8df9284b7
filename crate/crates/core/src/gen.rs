//! Seeded random inputs for tests, benchmarks and the command-line tool.
//!
//! Exact generators draw rationals on a dyadic grid so results are
//! reproducible and cheap to compare.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{is_simple_points, CylCurve, PlFunction, Point, Polyline};
use crate::scalar::{rat, Rational};
use crate::square::SquareTrace;

/// Denominator of exact random coordinates.
pub const GRID: i64 = 64;

/// Attempts before a rejection sampler gives up.
pub const MAX_ATTEMPTS: usize = 10_000;

/// The generator used by every seeded entry point.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn grid_value<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound * GRID..=bound * GRID), GRID)
}

/// A family of `points` quadruples with coordinates in `[-bound, bound]`
/// on an increasing grid.
pub fn random_trace<R: Rng>(rng: &mut R, points: usize, bound: i64) -> SquareTrace<Rational> {
    let points = points.max(2);
    let mut t = Rational::from_integer(BigInt::from(0));
    let mut grid = Vec::with_capacity(points);
    for _ in 0..points {
        grid.push(t.clone());
        t += rat(rng.gen_range(1..=GRID), GRID);
    }
    let mut column = || (0..points).map(|_| grid_value(rng, bound)).collect::<Vec<_>>();
    let (x, y, a, b) = (column(), column(), column(), column());
    SquareTrace::new(grid, x, y, a, b).expect("equal lengths")
}

/// Squares centred at the origin corner turning from angle `0` to `pi / 4`,
/// sampled at `n` points.
pub fn rotating_square_trace(n: usize) -> SquareTrace<f64> {
    let n = n.max(2);
    let end = std::f64::consts::FRAC_PI_4;
    let grid: Vec<f64> = (0..n).map(|i| end * i as f64 / (n - 1) as f64).collect();
    let zeros = vec![0.0; n];
    let a = grid.iter().map(|t| t.cos()).collect();
    let b = grid.iter().map(|t| t.sin()).collect();
    SquareTrace::new(grid.clone(), zeros.clone(), zeros, a, b).expect("equal lengths")
}

/// A simple anticlockwise polygon with `n >= 3` integer-grid vertices,
/// star-shaped about its first vertex's opposite side.
pub fn random_simple_polygon<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Polyline<Rational> {
    let n = n.max(3);
    for _ in 0..MAX_ATTEMPTS {
        // Sort by angle around the origin, which every vertex surrounds.
        let mut pts: Vec<(f64, Point<Rational>)> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = Point::new(grid_value(rng, bound), grid_value(rng, bound));
            let (x, y) = (crate::Scalar::to_f64(&p.x), crate::Scalar::to_f64(&p.y));
            if x == 0.0 && y == 0.0 {
                continue;
            }
            pts.push((y.atan2(x), p));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let verts: Vec<Point<Rational>> = pts.into_iter().map(|(_, p)| p).collect();
        if let Ok(poly) = Polyline::closed(verts.clone()) {
            let area2: Rational = (0..n).map(|i| verts[i].cross(&verts[(i + 1) % n])).sum();
            if area2 > Rational::from_integer(0.into()) && is_simple_points(&verts, true) {
                return poly;
            }
        }
    }
    panic!("no simple polygon found in {MAX_ATTEMPTS} attempts");
}

/// `(f, g)` on `[-1, 1]` with equal end values, `f < g` inside and both
/// Lipschitz constants at most `lipschitz`. `pieces` interior breakpoints.
pub fn random_lipschitz_pair<R: Rng>(rng: &mut R, pieces: usize, lipschitz: f64) -> (PlFunction<f64>, PlFunction<f64>) {
    let half = lipschitz / 2.0;
    let mut ts: Vec<f64> = (0..pieces).map(|_| rng.gen_range(-0.95..0.95)).collect();
    ts.push(-1.0);
    ts.push(1.0);
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    // Upper function: random walk with slopes in [-half, half].
    let mut g = vec![rng.gen_range(-0.5..0.5)];
    for w in ts.windows(2) {
        let slope = rng.gen_range(-half..=half);
        g.push(g.last().expect("non-empty") + slope * (w[1] - w[0]));
    }
    // Lower function: g minus a tent vanishing at both ends.
    let apex = rng.gen_range(-0.8..0.8);
    let height = half * (apex + 1.0_f64).min(1.0 - apex) * rng.gen_range(0.2..1.0);
    let tent = |t: f64| if t <= apex { height * (t + 1.0) / (apex + 1.0) } else { height * (1.0 - t) / (1.0 - apex) };
    let mut bt = ts.clone();
    let mut gv = g.clone();
    if !ts.contains(&apex) {
        let pos = ts.partition_point(|t| *t < apex);
        let (t0, t1) = (ts[pos - 1], ts[pos]);
        let gi = g[pos - 1] + (g[pos] - g[pos - 1]) * (apex - t0) / (t1 - t0);
        bt.insert(pos, apex);
        gv.insert(pos, gi);
    }
    let fv: Vec<f64> = bt.iter().zip(&gv).map(|(t, y)| y - tent(*t)).collect();
    let f = PlFunction::on_interval(bt.clone(), fv).expect("increasing breakpoints");
    let g = PlFunction::on_interval(bt, gv).expect("increasing breakpoints");
    (f, g)
}

/// A simple degree-one cylinder curve of circumference `period` with
/// `vertices` lift vertices. `wobble` in `[0, 1)` is how far, in units of the
/// mean spacing, each vertex may stray horizontally; above one half the
/// curve may double back.
pub fn random_cylinder_curve<R: Rng>(
    rng: &mut R,
    period: i64,
    vertices: usize,
    y_bound: i64,
    wobble: f64,
) -> CylCurve<Rational> {
    let n = vertices.max(1);
    let l = Rational::from_integer(period.into());
    let step = period as f64 / n as f64;
    for _ in 0..MAX_ATTEMPTS {
        let lift: Vec<Point<Rational>> = (0..n)
            .map(|k| {
                let jitter = rng.gen_range(-wobble..=wobble) * step;
                let x = ((k as f64 * step + jitter) * GRID as f64).round() as i64;
                Point::new(rat(x, GRID), grid_value(rng, y_bound))
            })
            .collect();
        if let Ok(c) = CylCurve::new(l.clone(), lift, 1) {
            if c.is_simple().unwrap_or(false) {
                return c;
            }
        }
    }
    panic!("no simple curve found in {MAX_ATTEMPTS} attempts");
}

/// Graph of a random function: a cylinder curve that never doubles back.
pub fn random_graph_curve<R: Rng>(rng: &mut R, period: i64, vertices: usize, y_bound: i64) -> CylCurve<Rational> {
    random_cylinder_curve(rng, period, vertices, y_bound, 0.45)
}

/// Three finite integer pairs in `[-bound, bound]` with pairwise distinct
/// gaps, the domain on which the smallest-gap criterion applies.
pub fn random_admissible_triple<R: Rng>(rng: &mut R, bound: i64) -> [[i64; 2]; 3] {
    loop {
        let t = [0; 3].map(|_| [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)]);
        let g = t.map(|p| (p[0] - p[1]).abs());
        if g[0] != g[1] && g[1] != g[2] && g[0] != g[2] {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{lipschitz_constant, signed_area};

    #[test]
    fn polygons_are_simple_and_anticlockwise() {
        let mut rng = seeded_rng(3);
        for _ in 0..20 {
            let p = random_simple_polygon(&mut rng, 7, 5);
            assert!(signed_area(&p).unwrap() > Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn lipschitz_pairs_meet_preconditions() {
        let mut rng = seeded_rng(4);
        for _ in 0..50 {
            let (f, g) = random_lipschitz_pair(&mut rng, 6, 0.9);
            assert!(lipschitz_constant(&f) <= 0.9 + 1e-12 && lipschitz_constant(&g) <= 0.9 + 1e-12);
            assert_eq!(f.values()[0], g.values()[0]);
            assert_eq!(f.values().last(), g.values().last());
            let inner = &f.breakpoints()[1..f.breakpoints().len() - 1];
            assert!(inner.iter().all(|t| f.eval(t) < g.eval(t)));
        }
    }

    #[test]
    fn cylinder_curves_can_double_back() {
        let mut rng = seeded_rng(5);
        let backtracks = (0..30)
            .map(|_| random_cylinder_curve(&mut rng, 40, 8, 5, 0.9))
            .filter(|c| c.closed_lift().windows(2).any(|w| w[1].x < w[0].x))
            .count();
        assert!(backtracks > 0);
    }
}
