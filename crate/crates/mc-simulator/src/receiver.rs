//! Receiver-side SINR evaluation and exhaustive codebook search.

use crate::channel::Channel;
use crate::covariance::{forward_substitute, CholeskyFactor};
use crate::signatures::Codebook;
use crate::Cplx;
use nalgebra::{DMatrix, DVector};

/// Matched-filter SINR of a candidate signature:
/// `A₁ (v†H₁†H₁v)² / (v†H₁†R₁H₁v)`.
pub fn mf_sinr_eval(v: &DVector<Cplx>, channel: &Channel, r1: &DMatrix<Cplx>, a1: f64) -> f64 {
    let effective = channel.apply(v);
    let signal = effective.norm_squared();
    let interference = (r1 * &effective).dotc(&effective).re;
    a1 * signal * signal / interference
}

/// MMSE SINR of a candidate signature, `A₁ v†H₁†R₁⁻¹H₁v`, using the
/// per-instance Cholesky factor (one triangular solve per codeword).
pub fn mmse_sinr_eval(
    v: &DVector<Cplx>,
    channel: &Channel,
    factor: &CholeskyFactor,
    a1: f64,
) -> f64 {
    let effective = channel.apply(v);
    let y = forward_substitute(factor, &effective);
    a1 * y.norm_squared()
}

/// What the exhaustive search optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    MaxSinr,
    MinInterference,
}

/// Scans every codeword, returning `(index, value)` of the best one.
/// Ties break to the lowest index.
pub fn select_best(
    codebook: &Codebook,
    mut evaluator: impl FnMut(&DVector<Cplx>) -> f64,
    objective: Objective,
) -> (usize, f64) {
    assert!(!codebook.is_empty(), "codebook must be nonempty");
    let mut best_index = 0;
    let mut best_value = evaluator(&codebook.vectors()[0]);
    for (index, v) in codebook.vectors().iter().enumerate().skip(1) {
        let value = evaluator(v);
        let better = match objective {
            Objective::MaxSinr => value > best_value,
            Objective::MinInterference => value < best_value,
        };
        if better {
            best_index = index;
            best_value = value;
        }
    }
    (best_index, best_value)
}
