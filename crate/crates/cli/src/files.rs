//! Input loading and report output shared by the subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use peglab::adf::AdfInstance;
use peglab::geom::{CylCurve, PlFunction, Point};
use peglab::io::{self, CurveData};
use peglab::{format_rational, parse_rational, Rational};
use serde_json::Value;

/// How a command ended when it did not fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Finding,
}

impl Outcome {
    pub fn finding_if(flag: bool) -> Self {
        if flag {
            Outcome::Finding
        } else {
            Outcome::Pass
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Finding => 2,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_curve(path: &Path) -> Result<CurveData> {
    io::curve_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn load_cylinder(path: &Path) -> Result<CylCurve<Rational>> {
    match load_curve(path)? {
        CurveData::Cylinder(c) => Ok(c),
        CurveData::Planar(_) => bail!("{}: expected a cylinder curve (set \"L\")", path.display()),
    }
}

pub fn load_cylinders<const N: usize>(paths: &[PathBuf]) -> Result<[CylCurve<Rational>; N]> {
    if paths.len() != N {
        bail!("expected {N} curve files, got {}", paths.len());
    }
    let curves = paths.iter().map(|p| load_cylinder(p)).collect::<Result<Vec<_>>>()?;
    Ok(curves.try_into().unwrap_or_else(|_| unreachable!("length checked")))
}

pub fn load_pair(path: &Path) -> Result<(PlFunction<Rational>, PlFunction<Rational>)> {
    io::pair_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn load_instance(path: &Path) -> Result<AdfInstance<Rational>> {
    io::instance_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

pub fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn point_f(p: &Point<f64>) -> Value {
    serde_json::json!([p.x, p.y])
}

/// A report value as plain text, without quotes around strings.
pub fn plain(v: &Value) -> String {
    v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())
}

/// Writes the report to `path`, or to stdout, and the summary to stderr.
pub fn emit(report: &Value, summary: &str, path: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => print!("{text}"),
    }
    eprintln!("{summary}");
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
