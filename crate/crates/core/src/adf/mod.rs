//! The three-list combinatorial conjecture: non-crossing sums, the two
//! hypotheses, winding profiles, the cell graph and counterexample search.

mod cells;
mod hypotheses;
mod identities;
mod instance;
mod ncs;
mod profile;
mod search;
mod tap;
mod xreal;

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{FromPrimitive, Signed};
use thiserror::Error;

pub use cells::{build_g12, partition_v12, Cell, CellGraph, V12Partition};
pub use hypotheses::{
    adf_verdict, check_hypothesis_i, check_hypothesis_ii, hypotheses_hold, hypothesis_i_holds, hypothesis_ii_holds,
    list_is_non_crossing, AdfVerdict, ListViolation, TripleViolation,
};
pub use identities::{horizon, identity_suite, inclusio, inclusion_on_atoms, IdentityCheck, IdentityReport};
pub use instance::{ordered_pairs, AdfInstance};
pub use ncs::{influence_free, ncs_check, non_crossing_sums, NcsViolation};
pub use profile::{
    atoms_of, winding_profile_w12_0, winding_profile_wi, winding_profile_wii, Atom, WindingProfile,
};
pub use search::{
    canonical_form, has_distinct_gaps, random_instance, random_valid_instance, search_counterexamples, SearchConfig,
    SearchMode, SearchReport, RANDOM_DENOMINATOR,
};
pub use tap::{tap_check, zero_components, Endpoint, TapPath, TapReport, ZeroComponent};
pub use xreal::XReal;

/// Number types the combinatorics runs on: `i64` for bulk search and
/// [`crate::Rational`] for reports.
pub trait AdfNum: Clone + Debug + Ord + Hash + Signed + FromPrimitive + Send + Sync + 'static {}

impl<T: Clone + Debug + Ord + Hash + Signed + FromPrimitive + Send + Sync + 'static> AdfNum for T {}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AdfError {
    #[error("list {list} has even length {len}")]
    EvenLength { list: usize, len: usize },
    #[error("list {list} repeats a value")]
    RepeatedValue { list: usize },
    #[error("two compared gaps are equal")]
    TiedGaps,
    #[error("doubled winding number {value2} at cell ({p}, {q}) is neither 0 nor 2")]
    WindingOutOfRange { p: usize, q: usize, value2: i64 },
    #[error("edge from {from:?} to {to:?} leaves the cell set")]
    EdgeLeavesCells { from: Cell, to: Cell },
    #[error("cell {cell:?} does not have in- and out-degree one")]
    DegreeViolation { cell: Cell },
    #[error("search needs at least one odd list length")]
    NoLengths,
    #[error("list length {0} is not odd")]
    EvenSearchLength(usize),
    #[error("value grid must be non-empty")]
    EmptyGrid,
}
