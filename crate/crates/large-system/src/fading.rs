//! Folding fading gains into the interferer power profile.
//!
//! A multipath interferer is asymptotically equivalent to a single-path
//! interferer whose power is scaled by the combined gain `Σ_l |h_l|²` - a
//! sum of independent exponentials with means given by the path variances.
//! The combined-gain distribution is folded into the profile by an M-point
//! equal-probability quantization (each bin replaced by its conditional
//! mean); `M = 1` collapses the gain to its mean `Σ_l E|h_l|²`.

use crate::scenario::ChannelModel;
use crate::{Result, SolveError};
use rmt_transforms::PowerProfile;

/// Replaces each base atom power `A` with the quantized distribution of
/// `A · Σ_l |h_l|²`.
pub fn fold_fading(
    base_powers: &PowerProfile,
    channel: &ChannelModel,
    quantization_points: usize,
) -> Result<PowerProfile> {
    if quantization_points == 0 {
        return Err(SolveError::OutOfDomain(
            "quantization_points must be >= 1".into(),
        ));
    }
    channel.validate()?;
    if matches!(channel, ChannelModel::Ideal) {
        return Ok(base_powers.clone());
    }

    let gains = exp_sum_conditional_means(channel.path_vars(), quantization_points)?;
    let bin_weight = 1.0 / quantization_points as f64;
    let mut atoms = Vec::with_capacity(base_powers.atoms().len() * gains.len());
    for &(power, weight) in base_powers.atoms() {
        for &g in &gains {
            atoms.push((power * g, weight * bin_weight));
        }
    }
    PowerProfile::new(atoms).map_err(SolveError::from)
}

/// Conditional means of `Σ_l Exp(mean v_l)` over its `m` equal-probability
/// quantile bins.
fn exp_sum_conditional_means(path_vars: &[f64], m: usize) -> Result<Vec<f64>> {
    let mean: f64 = path_vars.iter().sum();
    if m == 1 {
        return Ok(vec![mean]);
    }

    // Hypoexponential density Σ c_l λ_l e^{-λ_l x}. Coincident rates make
    // the partial-fraction coefficients blow up, so near-equal rates are
    // nudged apart by a relative 1e-7 - far below the quantization error.
    let mut rates: Vec<f64> = path_vars.iter().map(|v| 1.0 / v).collect();
    rates.sort_by(|a, b| a.partial_cmp(b).expect("finite rates"));
    for i in 1..rates.len() {
        if rates[i] - rates[i - 1] < 1e-7 * rates[i] {
            rates[i] = rates[i - 1] * (1.0 + 1e-7);
        }
    }
    let coeffs: Vec<f64> = (0..rates.len())
        .map(|l| {
            (0..rates.len())
                .filter(|&j| j != l)
                .map(|j| rates[j] / (rates[j] - rates[l]))
                .product()
        })
        .collect();

    let cdf = |x: f64| -> f64 {
        1.0 - rates
            .iter()
            .zip(&coeffs)
            .map(|(&lam, &c)| c * (-lam * x).exp())
            .sum::<f64>()
    };
    // ∫_0^x t f(t) dt with f the hypoexponential density.
    let partial_mean = |x: f64| -> f64 {
        rates
            .iter()
            .zip(&coeffs)
            .map(|(&lam, &c)| c / lam * (1.0 - (1.0 + lam * x) * (-lam * x).exp()))
            .sum::<f64>()
    };

    let mut edges = Vec::with_capacity(m - 1);
    let mut hi_guess = mean;
    for i in 1..m {
        let p = i as f64 / m as f64;
        while cdf(hi_guess) < p {
            hi_guess *= 2.0;
        }
        let (mut lo, mut hi) = (0.0, hi_guess);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * hi_guess.max(1.0) {
                break;
            }
        }
        edges.push(0.5 * (lo + hi));
    }

    let mut means = Vec::with_capacity(m);
    let mut below_prev = 0.0;
    for below in edges
        .iter()
        .map(|&edge| partial_mean(edge))
        .chain(std::iter::once(mean))
    {
        means.push((below - below_prev) * m as f64);
        below_prev = below;
    }
    Ok(means)
}
