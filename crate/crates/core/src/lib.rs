//! Strongly cancellative and recovering sets on the Boolean lattice `B_n` and
//! on products of chains `D_{l1,...,lk}`.
//!
//! * [`lattice`]: points, meet/join/order, enumeration, subset encoding.
//! * [`verifier`]: property checks, violation witnesses, pair statistics.
//! * [`constructions`]: explicit strongly cancellative families.
//! * [`entropy`] and [`bounds`]: entropy kernels, size bounds and constants.
//! * [`search`]: exact branch-and-bound and greedy search.
//! * [`io`], [`tables`], [`cli`]: file formats and the command line.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod entropy;
pub mod error;
pub mod io;
pub mod lattice;
pub mod search;
pub mod tables;
pub mod verifier;

pub use error::{Error, Result};
pub use lattice::{ChainProduct, LatticeOp, Point, PointSet};
pub use search::{SearchConfig, SearchMode, SearchResult};
pub use verifier::{Property, Violation, ViolationKind};
