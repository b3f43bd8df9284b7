//! `peglab bridge ...` and `peglab sai ...`

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::Subcommand;
use peglab::bridge::{area_breakdown, build_curves, fiber_extract, sai_check, trace_components, RecipeParams};
use peglab::geom::{general_position_violation, perturb_generic, CylCurve, Point};
use peglab::io::{curve_to_json, CurveData, Svg};
use peglab::{Rational, Scalar};
use serde_json::json;

use crate::files::{emit, load_cylinders, load_instance, q, qs, rational_arg, write_text, Outcome};

#[derive(Subcommand)]
pub enum BridgeCommand {
    /// Three cylinder curves whose fibers read back an instance.
    Build {
        #[arg(long)]
        instance: PathBuf,
        /// Three output curve files.
        #[arg(long, num_args = 3)]
        out: Vec<PathBuf>,
        #[arg(long, value_parser = rational_arg)]
        period: Option<Rational>,
        /// Minus the total area of the end graphs.
        #[arg(long, value_parser = rational_arg)]
        area_target: Option<Rational>,
    },
    /// Heights where three curves cross a vertical line, as an instance.
    Fiber {
        #[arg(long, num_args = 3, required = true)]
        curves: Vec<PathBuf>,
        #[arg(long, value_parser = rational_arg)]
        x: Rational,
    },
    /// Orbits of the collision dynamics started on the fiber over `x`.
    Trace {
        #[arg(long, num_args = 3, required = true)]
        curves: Vec<PathBuf>,
        #[arg(long, default_value = "1/3", value_parser = rational_arg)]
        x: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Jitter used when the curves are not in general position.
        #[arg(long, default_value = "1/64", value_parser = rational_arg)]
        magnitude: Rational,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum SaiCommand {
    /// Exact search for a vertical line where the three heights sum to zero.
    Check {
        #[arg(long, num_args = 3, required = true)]
        curves: Vec<PathBuf>,
    },
}

pub fn run(cmd: BridgeCommand, report: Option<&Path>) -> Result<Outcome> {
    match cmd {
        BridgeCommand::Build { instance, out, period, area_target } => build(&instance, &out, period, area_target, report),
        BridgeCommand::Fiber { curves, x } => fiber(&curves, &x, report),
        BridgeCommand::Trace { curves, x, seed, magnitude, svg } => trace(&curves, &x, seed, &magnitude, svg.as_deref(), report),
    }
}

fn build(
    path: &Path,
    out: &[PathBuf],
    period: Option<Rational>,
    area_target: Option<Rational>,
    report: Option<&Path>,
) -> Result<Outcome> {
    if !out.is_empty() && out.len() != 3 {
        bail!("--out takes three files");
    }
    let inst = load_instance(path)?;
    let recipe = build_curves(&inst, &RecipeParams { period, area_target })?;
    for (file, curve) in out.iter().zip(&recipe.curves) {
        write_text(file, &(curve_to_json(&CurveData::Cylinder(curve.clone())) + "\n"))?;
    }
    let areas = area_breakdown(&recipe);
    let sum = inst.alternating_sum();
    let (lo, hi) = recipe.reading_window();
    let rep = json!({
        "period": q(&recipe.period),
        "area_target": q(&recipe.area_target),
        "bump": q(&recipe.bump),
        "reading_window": [q(&lo), q(&hi)],
        "probe_abscissa": q(&recipe.probe_abscissa()),
        "alternating_sum": q(&sum),
        "area": { "total": q(&areas.total), "middle": q(&areas.middle), "ends": q(&areas.ends), "graphs": q(&areas.graphs) },
        "area_identity_holds": areas.identity_holds(&recipe, &sum),
    });
    emit(&rep, &format!("built with L = {}, total area {}", peglab::format_rational(&recipe.period), peglab::format_rational(&areas.total)), report)?;
    Ok(Outcome::Pass)
}

fn fiber(paths: &[PathBuf], x: &Rational, report: Option<&Path>) -> Result<Outcome> {
    let curves: [CylCurve<Rational>; 3] = load_cylinders(paths)?;
    let lists = fiber_extract(&curves, x)?;
    let rep = json!({ "x": q(x), "y": lists.iter().map(|l| qs(l)).collect::<Vec<_>>() });
    let lens: Vec<usize> = lists.iter().map(Vec::len).collect();
    emit(&rep, &format!("fiber lengths {lens:?}"), report)?;
    Ok(Outcome::Pass)
}

fn trace(paths: &[PathBuf], x: &Rational, seed: u64, magnitude: &Rational, svg: Option<&Path>, report: Option<&Path>) -> Result<Outcome> {
    let mut curves: [CylCurve<Rational>; 3] = load_cylinders(paths)?;
    let perturbed = general_position_violation(&curves).is_some();
    if perturbed {
        let jittered = perturb_generic(&curves, seed, magnitude)?;
        curves = jittered.try_into().unwrap_or_else(|_| unreachable!("three curves in, three out"));
    }
    let orbits = trace_components(&curves, x)?;
    let sign = |s: Option<Ordering>| match s {
        Some(Ordering::Less) => "negative",
        Some(Ordering::Greater) => "positive",
        _ => "vanishes",
    };
    let rep = json!({
        "x": q(x),
        "perturbed": perturbed,
        "components": orbits.iter().map(|t| json!({
            "degree": t.degree,
            "events": t.states.len() - 1,
            "collisions": t.collisions,
            "sum_sign": sign(t.sign),
            "zero_sum_at": t.zero_sum_at.as_ref().map(q),
        })).collect::<Vec<_>>(),
    });
    if let Some(path) = svg {
        let colors = ["#1f77b4", "#d62728", "#2ca02c"];
        let mut fig = Svg::new();
        for orbit in &orbits {
            let pts = orbit.points(&curves);
            for (i, color) in colors.iter().enumerate() {
                let line: Vec<Point<f64>> = pts.iter().map(|(x, ys)| Point::new(Scalar::to_f64(x), Scalar::to_f64(&ys[i]))).collect();
                fig.polyline(&line, false, color);
            }
            let total: Vec<Point<f64>> = pts
                .iter()
                .map(|(x, ys)| Point::new(Scalar::to_f64(x), ys.iter().map(Scalar::to_f64).sum()))
                .collect();
            fig.dashed(&total, "black");
        }
        write_text(path, &fig.render())?;
    }
    let vanishing = orbits.iter().filter(|t| t.sign.is_none()).count();
    let degrees: Vec<i64> = orbits.iter().map(|t| t.degree).collect();
    emit(&rep, &format!("{} orbits, degrees {degrees:?}, {vanishing} with a zero sum", orbits.len()), report)?;
    Ok(Outcome::finding_if(vanishing > 0))
}

pub fn run_sai(cmd: SaiCommand, report: Option<&Path>) -> Result<Outcome> {
    let SaiCommand::Check { curves } = cmd;
    let curves: [CylCurve<Rational>; 3] = load_cylinders(&curves)?;
    let r = sai_check(&curves)?;
    let rep = json!({
        "witness": r.witness.as_ref().map(|w| json!({ "x": q(&w.x), "y": qs(&w.y) })),
        "area": q(&r.area),
        "consistent": r.consistent,
    });
    let summary = match &r.witness {
        Some(w) => format!("zero-sum fiber at x = {}", peglab::format_rational(&w.x)),
        None => format!("no zero-sum fiber; area {}", peglab::format_rational(&r.area)),
    };
    emit(&rep, &summary, report)?;
    Ok(Outcome::finding_if(!r.consistent))
}
