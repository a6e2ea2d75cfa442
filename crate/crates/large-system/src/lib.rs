//! Asymptotic (large-system) SINR and interference analysis for quantized
//! signature feedback in DS-CDMA.
//!
//! Everything here is deterministic: given a [`ScenarioParams`] the solvers
//! return the limiting interference power of the matched filter or the
//! limiting SINR of the linear MMSE receiver, where processing gain, user
//! count, and feedback bits all grow with fixed ratios `kbar = K/N` and
//! `bbar = B/N`. The selection of the best signature from a random
//! codebook of `2^B` entries enters through a single scalar law: the
//! optimized quantity moves to where the log tail exponent of one random
//! signature equals `bbar ln 2`.
//!
//! Solvers come in two flavors that cross-check each other:
//! * general fixed points driven by the spectral transforms of an arbitrary
//!   interferer [`PowerProfile`] ([`solve_mf_interference`],
//!   [`solve_mmse_sinr`]);
//! * closed forms for equal transmit powers and for orthogonal interferer
//!   signatures ([`mf_closed_form_equal_power`], [`mf_orthogonal`],
//!   [`mmse_equal_power`], [`mmse_orthogonal`]).

// Validation comparisons are written negated (`!(x > 0.0)`) so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod fading;
mod matched_filter;
mod mmse;
mod scenario;
mod solver;
mod spectral;

pub use fading::fold_fading;
pub use matched_filter::{
    mf_closed_form_equal_power, mf_orthogonal, mf_sinr, psi_mf, solve_mf_interference,
};
pub use mmse::{
    beta_max, mmse_equal_power, mmse_orthogonal, phi_mmse, random_signature_mmse_baseline,
    solve_mmse_sinr,
};
pub use scenario::{
    noise_var_for_snr_db, AsymptoticResult, ChannelModel, Ensemble, Regime, ScenarioParams,
};

pub use rmt_transforms::PowerProfile;

use thiserror::Error;

/// Errors produced by the asymptotic solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    /// A root or fixed-point search missed its residual target.
    #[error("no convergence in {context}: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence {
        context: &'static str,
        residual: f64,
        iterations: usize,
    },
    /// Arguments outside the operation's domain.
    #[error("out of domain: {0}")]
    OutOfDomain(String),
}

impl From<rmt_transforms::TransformError> for SolveError {
    fn from(err: rmt_transforms::TransformError) -> Self {
        match err {
            rmt_transforms::TransformError::NoConvergence {
                context,
                residual,
                iterations,
            } => SolveError::NoConvergence {
                context,
                residual,
                iterations,
            },
            rmt_transforms::TransformError::OutOfDomain(msg) => SolveError::OutOfDomain(msg),
        }
    }
}

pub type Result<T> = std::result::Result<T, SolveError>;

/// Absolute residual target for every fixed point and outer root in this
/// crate.
pub const RESIDUAL_TOL: f64 = 1e-10;

pub(crate) const LN2: f64 = std::f64::consts::LN_2;
