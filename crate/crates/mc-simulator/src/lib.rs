//! Finite-size Monte Carlo engine for RVQ signature selection in DS-CDMA.
//!
//! One trial draws interfering signatures, per-user channels, and a random
//! codebook of `2^B` unit vectors, builds the interference-plus-noise
//! covariance, exhaustively evaluates every codeword through the configured
//! receiver, and records the SINR of the best one. Trials are independent
//! and may run concurrently; results are a deterministic function of
//! `(config, master_seed)` regardless of thread count or scheduling.

// Validation comparisons are written negated (`!(x > 0.0)`) so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod channel;
mod config;
mod covariance;
mod engine;
mod receiver;
mod rng;
mod signatures;

pub use channel::{build_channel, Channel};
pub use config::{Receiver, SimConfig, TrialEstimate, DEFAULT_CODEBOOK_CAP};
pub use covariance::{factorize, forward_substitute, interference_covariance, CholeskyFactor};
pub use engine::{run_trials, run_trials_full, write_trial_records, TrialRecord};
pub use receiver::{mf_sinr_eval, mmse_sinr_eval, select_best, Objective};
pub use rng::{complex_normal, trial_seed};
pub use signatures::{gen_signatures, Codebook};

pub use large_system::{ChannelModel, Ensemble};

use thiserror::Error;

pub type Cplx = num_complex::Complex<f64>;

/// Errors produced by the simulation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    /// Exhaustive search over `2^b` codewords exceeds the configured cap.
    #[error("codebook budget exceeded: b = {b} above cap {cap} (2^b codewords)")]
    BudgetExceeded { b: u32, cap: u32 },
    /// Covariance factorization failed; cannot occur with positive noise
    /// variance and signals an internal error.
    #[error("interference covariance is numerically singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, SimError>;
