//! Exact counting of proper colorings and list colorings of uniform hypergraphs.
//!
//! Every count in this crate is computed with arbitrary-precision integers,
//! by at least two independent routes:
//!
//! * a full expansion over all `2^m` edge subsets,
//! * a pruned expansion over the subsets that contain no broken cycle
//!   (a δ-cycle with its maximum edge removed), optionally stratified by
//!   subset size and component count,
//! * brute-force enumeration of colorings, used as the oracle.
//!
//! On top of the counting routines sit the inequality checks
//! ([`bounds`]), a search harness that confirms the constant list
//! assignment is the unique minimizer above the threshold
//! `k > (m-1)/ln(1+√2)` ([`verify`]), and the reduction of d-improper graph
//! colorings to hypergraph colorings ([`improper`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line tool live in the `hypercolor` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod chromatic;
pub mod cycles;
mod error;
pub mod hypercore;
pub mod improper;
pub mod listcount;
mod sum;
pub mod verify;

pub use bounds::{phi, threshold, ThresholdReport};
pub use chromatic::Polynomial;
pub use cycles::{BrokenCycleFamily, DeltaCycleFamily, Stratification};
pub use error::Error;
pub use hypercore::{ComponentLabeling, EdgeSubset, Hypergraph, MAX_ENUM_EDGES};
pub use listcount::ListAssignment;

pub type Result<T, E = Error> = core::result::Result<T, E>;
