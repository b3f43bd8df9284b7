//! Computational tools for the inscribed-square problem.
//!
//! * [`geom`]: exact polylines, cylinder curves, areas, simplicity, winding.
//! * [`square`]: square-traversing families, the conserved area integral, the
//!   contraction-mapping square finder and joint inscription on the cylinder.
//! * [`pinch`]: the `tanh` compression of periodic curves into bounded ones.
//! * [`adf`]: non-crossing sums, hypothesis checks, winding profiles, the
//!   cell graph, the identity suite and a counterexample search.
//! * [`bridge`]: curves built from combinatorial data and back again.
//! * [`io`]: JSON formats shared with the command-line tool.

pub mod adf;
pub mod bridge;
pub mod gen;
pub mod geom;
pub mod io;
pub mod pinch;
pub mod scalar;
pub mod square;

pub use scalar::{parse_rational, format_rational, rat, int, Rational, Scalar};
