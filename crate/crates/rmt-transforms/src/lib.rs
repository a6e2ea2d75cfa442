//! Spectral transforms for large random-matrix ensembles.
//!
//! The building blocks here describe the limiting eigenvalue distribution of
//! matrices of the form `S A S†`, where `S` is an N x M matrix with i.i.d.
//! entries of variance 1/N (normalized load `kbar = M/N`) and `A` is a
//! diagonal matrix whose entries follow a discrete power profile:
//!
//! * [`eta_atoms`] / [`shannon_atoms`] - eta and Shannon transforms of a
//!   discrete [`PowerProfile`].
//! * [`theta_fixed_point`] - the eta transform of the `S A S†` spectrum,
//!   obtained from the load fixed point `kbar = (1 - Θ)/(1 - η_A(xΘ))`.
//! * [`shannon_sas`] - the Shannon transform of the `S A S†` spectrum.
//! * [`sas_support_infimum`] / [`log_moment_below_edge`] - location of the
//!   lower spectral edge and the log moment `∫ ln(τ - d) dG(τ)` for
//!   evaluation points below the edge.
//! * [`mp_density`], [`mp_stieltjes`], [`lemma1_log_integral`] - closed
//!   forms for the equal-power (Marchenko-Pastur) special case.
//!
//! All functions are pure and safe for concurrent use.

// Validation comparisons are written negated (`!(x > 0.0)`) so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod mp;
pub mod profile;
pub mod quad;
mod transforms;

pub use mp::{lemma1_log_integral, mp_density, mp_stieltjes, MpSupport};
pub use profile::PowerProfile;
pub use transforms::{
    eta_atoms, eta_atoms_deriv, log_moment_below_edge, sas_support_infimum, shannon_atoms,
    shannon_sas, theta_fixed_point,
};

use thiserror::Error;

/// Errors produced by the transform kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    /// A fixed-point or root search exhausted its iteration budget.
    #[error("no convergence in {context}: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence {
        context: &'static str,
        residual: f64,
        iterations: usize,
    },
    /// An argument lies outside the mathematical domain of the operation.
    #[error("out of domain: {0}")]
    OutOfDomain(String),
}

pub type Result<T> = std::result::Result<T, TransformError>;
