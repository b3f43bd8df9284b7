//! Squares, square-traversing families and joint inscription on the cylinder.

mod cycle;
mod finder;
mod fixed_point;
mod quad;

use thiserror::Error;

use crate::geom::GeomError;

pub use cycle::{
    area_ineq_value, joint_inscribe, joint_inscribe_generic, sigma124_cycle, sigma124_cycle_generic, CycleComponent,
    JointOutcome, Sigma124,
};
pub use finder::{
    check_pair, find_all, find_inscribed_square, find_inscribed_trapezoid, trace_shape_family, trace_square_family,
    InscriptionResult, SquareFamily,
};
pub use fixed_point::{solve_from, solve_vertex_fixed_point, VertexMap, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use quad::{conserved_residual, shaped_residual, Shape, SquareQuad, SquareTrace};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SquareError {
    #[error("shape needs s >= 0 and r > 0")]
    BadShape,
    #[error("trace lists have different lengths")]
    TraceLengthMismatch,
    #[error("trace needs at least 2 grid points")]
    TraceTooShort,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("fixed point at t = {t} did not converge in {iterations} steps (last displacement {displacement:e})")]
    NoConvergence { t: f64, iterations: usize, displacement: f64 },
    #[error("functions must be defined on an interval")]
    NotInterval,
    #[error("functions must share their domain")]
    DomainMismatch,
    #[error("functions must agree at both endpoints")]
    EndpointsDiffer,
    #[error("lower function must lie strictly below the upper one inside the domain")]
    NotStrictlyBelow,
    #[error("Lipschitz constant must be below {bound}")]
    LipschitzTooLarge { bound: f64 },
    #[error("vertex {vertex} left its graph at x = {x} by {offset:e}")]
    OffGraph { vertex: usize, x: f64, offset: f64 },
    #[error("no crossing found at this resolution; increase the grid size")]
    NoCrossing,
    #[error("curves must all have degree 1")]
    NotDegreeOne,
    #[error("curves must share their period")]
    PeriodMismatch,
    #[error("degenerate edge triple ({0}, {1}, {2})")]
    DegenerateTriple(usize, usize, usize),
    #[error("solution set is not a transverse 1-cycle")]
    NotTransverse,
    #[error(transparent)]
    Geom(#[from] GeomError),
}
