//! Coxeter groups and their root systems on two levels: real root data built
//! from (possibly non-integral) generalized Cartan matrices, and the abstract
//! root system `T x {+1,-1}` driven by the reflection cocycle.

pub mod abstract_roots;
pub mod error;
pub mod exec;
pub mod group;
pub mod io;
pub mod lp;
pub mod orders;
pub mod real_roots;
pub mod twisting;

pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{CoxeterGroup, CoxeterMatrix, GroupElement};

/// Tolerance for sign and zero tests on floating point root coordinates.
pub const TOL: f64 = 1e-9;

/// Default cap on the number of group elements any enumeration may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Default depth bound for root generation.
pub const DEFAULT_DEPTH: usize = 16;

/// Default reflection length bound for windows over infinite groups.
pub const DEFAULT_MAX_LEN: usize = 12;
