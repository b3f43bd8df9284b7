use serde::{Deserialize, Serialize};

use super::IoError;
use crate::adf::AdfInstance;
use crate::geom::{CylCurve, Domain, PlFunction, Point, Polyline};
use crate::scalar::{format_rational, parse_rational, Rational};

/// A number as it may appear in input files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Number(serde_json::Number),
}

impl Num {
    pub fn exact(r: &Rational) -> Self {
        Num::Text(format_rational(r))
    }

    pub fn to_rational(&self) -> Result<Rational, IoError> {
        let text = match self {
            Num::Text(s) => s.clone(),
            Num::Number(n) => n.to_string(),
        };
        parse_rational(&text).map_err(|_| IoError::Number(text))
    }
}

fn nums(v: &[Num]) -> Result<Vec<Rational>, IoError> {
    v.iter().map(Num::to_rational).collect()
}

fn texts(v: &[Rational]) -> Vec<Num> {
    v.iter().map(Num::exact).collect()
}

fn invalid(field: &'static str, e: impl std::fmt::Display) -> IoError {
    IoError::Invalid { field, message: e.to_string() }
}

/// Curve file. With a period `L` the vertices are one period of the lift of
/// a cylinder curve (the closing vertex omitted); without one they are a
/// planar polyline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    #[serde(rename = "L", default)]
    pub period: Option<Num>,
    #[serde(default = "one")]
    pub degree: i64,
    #[serde(default)]
    pub closed: bool,
    pub vertices: Vec<[Num; 2]>,
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveData {
    Cylinder(CylCurve<Rational>),
    Planar(Polyline<Rational>),
}

pub fn curve_from_json(text: &str) -> Result<CurveData, IoError> {
    let file: CurveFile = serde_json::from_str(text)?;
    let vertices = file
        .vertices
        .iter()
        .map(|[x, y]| Ok(Point::new(x.to_rational()?, y.to_rational()?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    match &file.period {
        Some(l) => CylCurve::new(l.to_rational()?, vertices, file.degree)
            .map(CurveData::Cylinder)
            .map_err(|e| invalid("vertices", e)),
        None => Polyline::new(vertices, file.closed).map(CurveData::Planar).map_err(|e| invalid("vertices", e)),
    }
}

pub fn curve_to_json(curve: &CurveData) -> String {
    let point = |p: &Point<Rational>| [Num::exact(&p.x), Num::exact(&p.y)];
    let file = match curve {
        CurveData::Cylinder(c) => CurveFile {
            period: Some(Num::exact(c.period())),
            degree: c.degree(),
            closed: true,
            vertices: c.lift().iter().map(point).collect(),
        },
        CurveData::Planar(p) => {
            CurveFile { period: None, degree: 0, closed: p.is_closed(), vertices: p.vertices().iter().map(point).collect() }
        }
    };
    to_pretty(&file)
}

/// Piecewise-linear function file; `period` makes it a function on a circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlfFile {
    pub breakpoints: Vec<Num>,
    pub values: Vec<Num>,
    #[serde(default)]
    pub period: Option<Num>,
}

impl PlfFile {
    fn parse(&self) -> Result<PlFunction<Rational>, IoError> {
        let domain = match &self.period {
            Some(l) => Domain::Circle(l.to_rational()?),
            None => Domain::Interval,
        };
        PlFunction::new(nums(&self.breakpoints)?, nums(&self.values)?, domain).map_err(|e| invalid("breakpoints", e))
    }

    fn of(f: &PlFunction<Rational>) -> Self {
        PlfFile {
            breakpoints: texts(f.breakpoints()),
            values: texts(f.values()),
            period: match f.domain() {
                Domain::Interval => None,
                Domain::Circle(l) => Some(Num::exact(l)),
            },
        }
    }
}

pub fn plf_from_json(text: &str) -> Result<PlFunction<Rational>, IoError> {
    serde_json::from_str::<PlfFile>(text)?.parse()
}

pub fn plf_to_json(f: &PlFunction<Rational>) -> String {
    to_pretty(&PlfFile::of(f))
}

/// A lower function `f` and an upper function `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub f: PlfFile,
    pub g: PlfFile,
}

pub fn pair_from_json(text: &str) -> Result<(PlFunction<Rational>, PlFunction<Rational>), IoError> {
    let file: PairFile = serde_json::from_str(text)?;
    Ok((file.f.parse()?, file.g.parse()?))
}

pub fn pair_to_json(f: &PlFunction<Rational>, g: &PlFunction<Rational>) -> String {
    to_pretty(&PairFile { f: PlfFile::of(f), g: PlfFile::of(g) })
}

/// Three lists of reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub y: Vec<Vec<Num>>,
}

pub fn instance_from_json(text: &str) -> Result<AdfInstance<Rational>, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let lists: [Vec<Num>; 3] =
        file.y.try_into().map_err(|v: Vec<_>| invalid("y", format!("expected 3 lists, found {}", v.len())))?;
    let [a, b, c] = lists;
    AdfInstance::new([nums(&a)?, nums(&b)?, nums(&c)?]).map_err(|e| invalid("y", e))
}

pub fn instance_to_json(inst: &AdfInstance<Rational>) -> String {
    to_pretty(&InstanceFile { y: inst.lists().iter().map(|l| texts(l)).collect() })
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}
