//! Exact enumeration and statistics of 123-avoiding permutations.
//!
//! The crate computes first-ascent counts of 123-avoiding permutations by
//! several independent routes (closed-form Catalan convolutions, a triangular
//! recurrence, a definitional composition sum, brute-force and growth-based
//! enumeration, and good-lattice-path counting) and cross-verifies them with
//! exact arbitrary-precision arithmetic. It also implements the associated
//! bijections to Dyck paths and the exact/limit probability distributions of
//! the first-ascent statistic, with seeded uniform samplers for Monte Carlo.
//!
//! All positions are 1-indexed. A strictly decreasing permutation reports
//! first ascent `n`.

pub mod bijections;
pub mod catalan;
pub mod distributions;
mod error;
pub mod oracle;
pub mod path;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use path::{LatticePath, Step};
pub use perm::{Permutation, RlmDecomposition};
