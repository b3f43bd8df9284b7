//! File formats and figure output.
//!
//! Rationals are written as `"p"` or `"p/q"` strings. Readers also accept
//! decimal strings and bare JSON numbers, converted exactly.

mod json;
mod svg;

use thiserror::Error;

pub use json::{
    curve_from_json, curve_to_json, instance_from_json, instance_to_json, pair_from_json, pair_to_json, plf_from_json,
    plf_to_json, CurveData, CurveFile, InstanceFile, Num, PairFile, PlfFile,
};
pub use svg::{Bounds, Svg};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("bad number {0:?}")]
    Number(String),
    #[error("field {field}: {message}")]
    Invalid { field: &'static str, message: String },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }
}
