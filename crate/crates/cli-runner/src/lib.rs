//! Orchestration library behind the `rvq-lab` binary: configuration
//! parsing, grid sweeps with CSV emission, and the required-feedback
//! search.

// Validation comparisons are written negated (`!(x > 0.0)`) so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod feedback;
pub mod sweep;
