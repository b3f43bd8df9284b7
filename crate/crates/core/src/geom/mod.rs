//! Exact piecewise-linear geometry in the plane and on the cylinder.

mod cylinder;
mod perturb;
mod plfunc;
mod point;
mod polyline;

use thiserror::Error;

pub use cylinder::{homology_degree, overlapping_shifts, CylCurve};
pub use perturb::{derived_seed, general_position_violation, perturb_generic, quarter_turn_multiple, PositionViolation, RETRY_BUDGET};
pub use plfunc::{lipschitz_constant, Domain, PlFunction};
pub use point::{on_segment, orient, point_segment_distance, segments_intersect, Point};
pub use polyline::{area_under, area_under_points, is_simple, is_simple_points, signed_area, winding_number, Polyline};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("curve needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} repeats its predecessor")]
    RepeatedVertex(usize),
    #[error("curve is not closed")]
    NotClosed,
    #[error("curve is not simple")]
    NotSimple,
    #[error("point lies on the curve")]
    PointOnCurve,
    #[error("lift displacement is not an integer multiple of (L, 0)")]
    BadLiftDisplacement,
    #[error("period must be positive")]
    NonPositivePeriod,
    #[error("breakpoints must be strictly increasing")]
    BreakpointsNotIncreasing,
    #[error("breakpoints of a circular domain must lie in [0, L)")]
    BreakpointOutsidePeriod,
    #[error("{left} breakpoints but {right} values")]
    LengthMismatch { left: usize, right: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("perturbation magnitude must be positive")]
    NonPositiveMagnitude,
    #[error("no general-position perturbation found within {0} draws")]
    PerturbationBudget(u32),
    #[error("operation needs a curve of degree +-1, got {0}")]
    UnsupportedDegree(i64),
}
