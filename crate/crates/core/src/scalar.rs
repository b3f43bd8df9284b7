//! Number types shared by every module.
//!
//! Geometry is generic over [`Scalar`]. The exact instance is [`Rational`]
//! (arbitrary precision), the numeric instance is `f64` whose sign tests use
//! an absolute tolerance of [`FLOAT_TOL`].

use std::cmp::Ordering;
use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Rational = BigRational;

/// Absolute tolerance used by `f64` comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

/// Arithmetic used by the geometric predicates.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Sign of the value; tolerant for floats.
    fn sign(&self) -> Ordering;

    /// Sign of a product-like quantity whose natural size is `scale`.
    ///
    /// Exact types ignore `scale`; floats treat `|self| <= FLOAT_TOL * scale`
    /// as zero.
    fn sign_scaled(&self, scale: &Self) -> Ordering;

    fn to_f64(&self) -> f64;

    fn from_rational(r: &Rational) -> Self;

    /// True when this type decides predicates exactly.
    const EXACT: bool;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn cmp_s(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }

    fn min_s(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_s(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn sign(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }

    fn sign_scaled(&self, _scale: &Self) -> Ordering {
        self.sign()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn sign(&self) -> Ordering {
        if self.abs() <= FLOAT_TOL {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn sign_scaled(&self, scale: &Self) -> Ordering {
        if self.abs() <= FLOAT_TOL * scale.abs() {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
}

/// Which arithmetic a command should run in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithMode {
    Exact,
    Float,
}

impl ArithMode {
    /// Reads `PEGLAB_MODE`, falling back to `default` when unset.
    pub fn from_env(default: ArithMode) -> Result<ArithMode, ParseModeError> {
        match std::env::var("PEGLAB_MODE") {
            Ok(v) => v.parse(),
            Err(_) => Ok(default),
        }
    }
}

#[derive(Debug, Error)]
#[error("unknown arithmetic mode {0:?} (expected exact or float)")]
pub struct ParseModeError(pub String);

impl FromStr for ArithMode {
    type Err = ParseModeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(ArithMode::Exact),
            "float" => Ok(ArithMode::Float),
            other => Err(ParseModeError(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.125"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i32::from_str(&s[i + 1..]).map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str_radix(if all.is_empty() { "0" } else { &all }, 10).map_err(|_| err())?;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(numer);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Formats as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shorthand constructor used throughout the crate and its tests.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Exact conversion of a finite float.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `x - L * floor(x / L)`, the representative in `[0, L)`.
pub fn mod_period(x: &Rational, period: &Rational) -> Rational {
    let k = (x / period).floor();
    x - period * k
}

/// Integer `floor(x / L)`.
pub fn period_index(x: &Rational, period: &Rational) -> BigInt {
    (x / period).floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-2.50").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("17").unwrap(), int(17));
        assert_eq!(parse_rational("1e3").unwrap(), int(1000));
        assert_eq!(parse_rational("2.5e-1").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1/x", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn format_round_trips() {
        for r in [rat(3, 4), int(-5), rat(-7, 3), int(0)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(format_rational(&int(4)), "4");
        assert_eq!(format_rational(&rat(-1, 10)), "-1/10");
    }

    #[test]
    fn float_sign_uses_tolerance() {
        assert_eq!(1e-12f64.sign(), Ordering::Equal);
        assert_eq!((-1e-3f64).sign(), Ordering::Less);
        assert_eq!(1e-16f64.sign_scaled(&1e-6), Ordering::Equal);
        assert_eq!(1e-12f64.sign_scaled(&1e-6), Ordering::Greater);
    }

    #[test]
    fn mod_period_is_in_range() {
        let l = int(5);
        assert_eq!(mod_period(&int(-1), &l), int(4));
        assert_eq!(mod_period(&int(10), &l), int(0));
        assert_eq!(mod_period(&rat(7, 2), &l), rat(7, 2));
        assert_eq!(period_index(&int(-1), &l), BigInt::from(-1));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exact".parse::<ArithMode>().unwrap(), ArithMode::Exact);
        assert_eq!(" Float ".parse::<ArithMode>().unwrap(), ArithMode::Float);
        assert!("fuzzy".parse::<ArithMode>().is_err());
    }
}
