//! Cylinder curves built from three-list data, and the reverse direction:
//! fibers of three curves, the particle dynamics along a common vertical
//! line, and the exact zero-sum fiber search.

mod fiber;
mod recipe;
mod sai;
mod trace;

use thiserror::Error;

use crate::geom::{GeomError, PositionViolation};

pub use fiber::{crossings, fiber_extract, Crossing};
pub use recipe::{area_breakdown, build_curves, gadget, AreaBreakdown, Recipe, RecipeParams};
pub use sai::{sai_check, SaiReport, ZeroSumWitness};
pub use trace::{start_state, trace_components, trace_cycle, TraceState, Trajectory};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum BridgeError {
    #[error("instance violates the non-crossing hypotheses")]
    Hypotheses,
    #[error("instance has two equal gaps")]
    TiedGaps,
    #[error("area target below {min}")]
    AreaTargetTooSmall { min: String },
    #[error("period must exceed 4")]
    PeriodTooSmall,
    #[error("no period up to {tried} gives simple curves")]
    NotSimple { tried: String },
    #[error("curves must have degree 1")]
    NotDegreeOne,
    #[error("curves must share their period")]
    PeriodMismatch,
    #[error("x = {x} is a vertex abscissa; perturb it")]
    VertexAbscissa { x: String },
    #[error("curves are not in general position: {0:?}")]
    NotGeneric(PositionViolation),
    #[error("start state is inconsistent with the curves")]
    BadStart,
    #[error("two particles collide at once at x = {x}")]
    SimultaneousCollision { x: String },
    #[error("trajectory did not close within {0} events")]
    NoPeriod(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}
