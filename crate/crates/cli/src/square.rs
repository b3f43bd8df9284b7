//! Squares, areas, pinching, joint inscription and plotting.

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::Args;
use peglab::adf::{horizon, winding_profile_wi};
use peglab::gen::{random_trace, rotating_square_trace, seeded_rng};
use peglab::geom::{area_under, is_simple, signed_area, CylCurve, Point};
use peglab::io::{CurveData, Svg};
use peglab::pinch::{compress_curve, PinchParams};
use peglab::scalar::ArithMode;
use peglab::square::{
    area_ineq_value, conserved_residual, find_all, joint_inscribe_generic, trace_shape_family, InscriptionResult, Shape,
};
use peglab::{Rational, Scalar};
use serde_json::{json, Value};

use crate::files::{self, emit, load_curve, load_cylinder, load_cylinders, load_instance, load_pair, point_f, q, Outcome};
use crate::{ConservedArgs, FindArgs, QuadArgs};

const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Coordinate bound of random exact families.
const RANDOM_TRACE_BOUND: i64 = 10;

fn result_json(r: &InscriptionResult) -> Value {
    json!({
        "square": { "x": r.square.x, "y": r.square.y, "a": r.square.a, "b": r.square.b },
        "side": r.square.a.hypot(r.square.b),
        "vertices": r.vertices.iter().map(point_f).collect::<Vec<_>>(),
        "residuals": r.residuals,
        "max_residual": r.max_residual(),
        "t": r.t,
        "bracket": [r.t_lo, r.t_hi],
    })
}

pub fn find(a: &FindArgs, trapezoid: Option<(f64, f64)>, out: Option<&Path>) -> Result<Outcome> {
    let (f, g) = load_pair(&a.curves)?;
    let (f, g) = (f.to_f64(), g.to_f64());
    let shape = match trapezoid {
        Some((s, r)) => Shape::trapezoid(s, r)?,
        None => Shape::square(),
    };
    let mut found = find_all(&f, &g, &shape, a.grid, a.tol)?;
    // Same ordering as the single-answer finders.
    found.sort_by(|x, y| x.crossing_residual.total_cmp(&y.crossing_residual).then(x.t.total_cmp(&y.t)));
    let Some(best) = found.first() else { bail!("no crossing found at this resolution; increase --grid") };
    let mut report = json!({
        "shape": match trapezoid { Some((s, r)) => json!({ "s": s, "r": r }), None => json!("square") },
        "grid": a.grid,
        "tol": a.tol,
        "result": result_json(best),
    });
    if a.all {
        let mut all = found.clone();
        all.sort_by(|x, y| x.t.total_cmp(&y.t));
        report["all"] = Value::Array(all.iter().map(result_json).collect());
    }
    if let Some(path) = &a.svg {
        let family = trace_shape_family(&f, &g, &shape, a.grid)?;
        let mut svg = Svg::new();
        svg.polyline(f.graph().vertices(), false, COLORS[0]).polyline(g.graph().vertices(), false, COLORS[1]);
        svg.dashed(&family.curves[2], COLORS[3]);
        svg.polyline(&best.vertices, true, COLORS[2]);
        files::write_text(path, &svg.render())?;
    }
    let summary = format!("found at t = {}, side {:.12}, max residual {:.3e}", best.t, best.square.a.hypot(best.square.b), best.max_residual());
    emit(&report, &summary, out)?;
    Ok(Outcome::Pass)
}

pub fn conserved(a: &ConservedArgs, mode: ArithMode, out: Option<&Path>) -> Result<Outcome> {
    let (source, residual, exact) = if let Some(path) = &a.curves {
        let (f, g) = load_pair(path)?;
        let family = trace_shape_family(&f.to_f64(), &g.to_f64(), &Shape::square(), a.grid)?;
        ("pair", json!(conserved_residual(&family.trace)), false)
    } else if let Some(n) = a.rotating {
        ("rotating", json!(conserved_residual(&rotating_square_trace(n))), false)
    } else {
        let points = a.points.unwrap_or(50);
        let trace = random_trace(&mut seeded_rng(a.seed), points, RANDOM_TRACE_BOUND);
        match mode {
            ArithMode::Exact => ("random", q(&conserved_residual(&trace)), true),
            ArithMode::Float => ("random", json!(conserved_residual(&trace.to_f64())), false),
        }
    };
    let nonzero = exact && residual != json!("0");
    let report = json!({ "source": source, "exact": exact, "residual": residual });
    emit(&report, &format!("residual = {}", files::plain(&residual)), out)?;
    Ok(Outcome::finding_if(nonzero))
}

pub fn area(path: &Path, mode: ArithMode, out: Option<&Path>) -> Result<Outcome> {
    let report = match (load_curve(path)?, mode) {
        (CurveData::Cylinder(c), ArithMode::Exact) => json!({
            "kind": "cylinder", "degree": c.degree(), "simple": c.is_simple()?, "area_one_period": q(&c.area_one_period()),
        }),
        (CurveData::Cylinder(c), ArithMode::Float) => {
            let c = c.to_f64();
            json!({ "kind": "cylinder", "degree": c.degree(), "simple": c.is_simple()?, "area_one_period": c.area_one_period() })
        }
        (CurveData::Planar(p), ArithMode::Exact) => json!({
            "kind": "planar", "closed": p.is_closed(), "simple": is_simple(&p),
            "area_under": q(&area_under(&p)),
            "signed_area": signed_area(&p).ok().map(|s| q(&s)),
        }),
        (CurveData::Planar(p), ArithMode::Float) => {
            let p = p.to_f64();
            json!({
                "kind": "planar", "closed": p.is_closed(), "simple": is_simple(&p),
                "area_under": area_under(&p), "signed_area": signed_area(&p).ok(),
            })
        }
    };
    emit(&report, &format!("area = {}", files::plain(report.get("area_under").unwrap_or(&report["area_one_period"]))), out)?;
    Ok(Outcome::Pass)
}

pub fn pinch(path: &Path, n: u32, periods: u32, svg: Option<&Path>, out: Option<&Path>) -> Result<Outcome> {
    let curve = load_cylinder(path)?;
    let image = compress_curve(&curve, PinchParams::new(n, periods)?);
    let v = image.vertices();
    let max_abs_y = v.iter().map(|p| p.y.abs()).fold(0.0, f64::max);
    let report = json!({
        "n": n,
        "periods": periods,
        "vertex_count": v.len(),
        "x_range": [v.iter().map(|p| p.x).fold(f64::INFINITY, f64::min), v.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max)],
        "max_abs_y": max_abs_y,
    });
    if let Some(p) = svg {
        files::write_text(p, &Svg::new().polyline(v, false, COLORS[0]).render())?;
    }
    emit(&report, &format!("{} vertices, max |y| = {max_abs_y}", v.len()), out)?;
    Ok(Outcome::Pass)
}

pub fn joint(a: &QuadArgs, out: Option<&Path>) -> Result<Outcome> {
    let curves: [CylCurve<Rational>; 4] = load_cylinders(&a.curves)?;
    let (witness, used) = joint_inscribe_generic([&curves[0], &curves[1], &curves[2], &curves[3]], a.seed, &a.magnitude)?;
    let value = area_ineq_value(&used[0], &used[1], &used[2], &used[3]);
    let perturbed = used.as_slice() != curves.as_slice();
    let report = json!({
        "witness": witness.as_ref().map(|w| json!({
            "x": q(&w.x), "y": q(&w.y), "a": q(&w.a), "b": q(&w.b), "degenerate": w.is_degenerate(),
        })),
        "perturbed": perturbed,
        "area_ineq_value": q(&value),
    });
    // No square and zero alternating area would contradict the area inequality.
    let finding = witness.is_none() && value == peglab::int(0);
    let summary = match (&witness, finding) {
        (Some(_), _) => "jointly inscribed square found".to_string(),
        (None, false) => format!("no square; alternating area {}", peglab::format_rational(&value)),
        (None, true) => "no square and zero alternating area".to_string(),
    };
    emit(&report, &summary, out)?;
    Ok(Outcome::finding_if(finding))
}

pub fn area_ineq(paths: &[PathBuf], mode: ArithMode, out: Option<&Path>) -> Result<Outcome> {
    let c: [CylCurve<Rational>; 4] = load_cylinders(paths)?;
    let value = match mode {
        ArithMode::Exact => q(&area_ineq_value(&c[0], &c[1], &c[2], &c[3])),
        ArithMode::Float => {
            let areas: Vec<f64> = c.iter().map(|x| x.to_f64().area_one_period()).collect();
            json!(areas[0] - areas[1] + areas[2] - areas[3])
        }
    };
    emit(&json!({ "value": value }), &format!("value = {}", files::plain(&value)), out)?;
    Ok(Outcome::Pass)
}

#[derive(Args)]
pub struct PlotArgs {
    /// Curve files, drawn in order.
    #[arg(long)]
    curve: Vec<PathBuf>,
    /// Pair file; both graphs are drawn.
    #[arg(long)]
    pair: Option<PathBuf>,
    /// Instance file; the three winding profiles are drawn as step plots.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Periods of each cylinder curve to draw.
    #[arg(long, default_value_t = 1)]
    periods: u32,
    #[arg(long)]
    svg: PathBuf,
}

fn to_f64_points(v: &[Point<Rational>]) -> Vec<Point<f64>> {
    v.iter().map(Point::to_f64).collect()
}

pub fn plot(a: &PlotArgs) -> Result<Outcome> {
    let mut svg = Svg::new();
    let mut color = COLORS.iter().cycle();
    for path in &a.curve {
        match load_curve(path)? {
            CurveData::Cylinder(c) => {
                svg.polyline(&to_f64_points(&c.lift_window(0, a.periods.max(1) as i64)), false, color.next().expect("cycle"));
            }
            CurveData::Planar(p) => {
                svg.polyline(&to_f64_points(p.vertices()), p.is_closed(), color.next().expect("cycle"));
            }
        }
    }
    if let Some(path) = &a.pair {
        let (f, g) = load_pair(path)?;
        svg.polyline(&to_f64_points(f.graph().vertices()), false, COLORS[0]);
        svg.polyline(&to_f64_points(g.graph().vertices()), false, COLORS[1]);
    }
    if let Some(path) = &a.instance {
        let inst = load_instance(path)?;
        let t = Scalar::to_f64(&horizon(&inst));
        // Profiles take values in {0, 1}; scale them to a tenth of the span
        // and stack them.
        let unit = 0.1 * 2.0 * t;
        for i in 0..3 {
            let w = winding_profile_wi(&inst, i);
            let xs: Vec<f64> = std::iter::once(-t).chain(w.breakpoints().iter().map(Scalar::to_f64)).chain([t]).collect();
            let mut values: Vec<f64> = w.plateaus().iter().map(|&v| (v as f64 + 1.5 * i as f64) * unit).collect();
            values.push(*values.last().expect("non-empty"));
            svg.steps(&xs, &values, COLORS[i]);
        }
    }
    if a.curve.is_empty() && a.pair.is_none() && a.instance.is_none() {
        bail!("nothing to plot: pass --curve, --pair or --instance");
    }
    files::write_text(&a.svg, &svg.render())?;
    eprintln!("wrote {}", a.svg.display());
    Ok(Outcome::Pass)
}
