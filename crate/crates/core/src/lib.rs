//! Exact enumeration of consecutive-pattern clusters and r-Stirling
//! permutations.
//!
//! The crate has three layers:
//!
//! * combinatorial objects and brute-force oracles ([`perm`], [`stirling`],
//!   [`clusters`]),
//! * exact polynomial and truncated-series arithmetic ([`polyalg`]) feeding
//!   the fast recurrence and Hadamard-product engines ([`recurrences`],
//!   [`egf`], [`cluster_method`]),
//! * polynomial analytics: Sturm-sequence real-rootedness, interlacing,
//!   moments, and a conjecture harness ([`analysis`]).
//!
//! Everything on a correctness path is computed over arbitrary-precision
//! integers or rationals; floating point appears only in explicitly advisory
//! checks (gamma-function formulas, standardized higher moments).

pub mod analysis;
pub mod cluster_method;
pub mod clusters;
pub mod egf;
mod error;
pub mod golden;
pub mod perm;
pub mod polyalg;
pub mod recurrences;
pub mod stirling;

pub use error::{Error, Result};
