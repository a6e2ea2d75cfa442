//! Matched-filter interference fixed points.

use crate::scenario::{AsymptoticResult, Ensemble, Regime, ScenarioParams};
use crate::solver::{bisect, golden_max};
use crate::spectral::SasSpectrum;
use crate::{Result, SolveError, LN2, RESIDUAL_TOL};

/// Log tail exponent of the interference of one random signature,
/// `Ψ(ρ, I) = ln(1 + ρσ_n² - ρI) + ν(ξ)` with `ξ = ρ/(1 + ρσ_n² - ρI)`,
/// where `ν` is the Shannon transform of the `S A S†` spectrum.
///
/// Fails with `OutOfDomain` when `1 + ρσ_n² - ρI <= 0`.
pub fn psi_mf(scenario: &ScenarioParams, rho: f64, interference: f64) -> Result<f64> {
    let c = 1.0 + rho * (scenario.noise_var - interference);
    if !(c > 0.0) {
        return Err(SolveError::OutOfDomain(format!(
            "psi_mf needs 1 + rho*(noise_var - I) > 0, got {c}"
        )));
    }
    let spectrum = SasSpectrum::new(&scenario.interferer_profile, scenario.kbar)?;
    Ok(c.ln() + spectrum.shannon(rho / c)?)
}

/// Full-range Ψ evaluation used by the solver, written in terms of
/// `excess = I - σ_n²` so that interference values pinned tightly to the
/// spectrum floor keep full precision. For tilts beyond the point where
/// `1 - ρ·excess` changes sign the Shannon decomposition is replaced by
/// the below-support log moment, `Ψ = ln ρ + M(1/ρ - excess)`.
fn psi_value(spectrum: &SasSpectrum, rho: f64, excess: f64) -> Result<f64> {
    if rho == 0.0 {
        return Ok(0.0);
    }
    let c = 1.0 - rho * excess;
    if c > 0.5 {
        Ok(c.ln() + spectrum.shannon(rho / c)?)
    } else {
        Ok(rho.ln() + spectrum.log_moment_shifted(1.0 / rho - excess)?)
    }
}

/// Maximizes `Ψ(·, I)` over the tilt range `(0, 1/gap)` where
/// `gap = I - λ_min`. Returns `(Ψ*, ρ*, at_boundary)`.
fn psi_star(spectrum: &SasSpectrum, gap: f64) -> Result<(f64, f64, bool)> {
    let excess = spectrum.edge + gap;
    let rho_max = (1.0 - 1e-12) / gap;
    let (rho, value) = golden_max(
        |rho| psi_value(spectrum, rho, excess),
        0.0,
        rho_max,
        rho_max * 1e-11,
    )?;
    Ok((value, rho, rho >= rho_max * (1.0 - 1e-6)))
}

/// Large-system interference power of the matched filter with RVQ
/// signature selection: the root of `max_ρ Ψ(ρ, I) = bbar ln 2`.
///
/// At `bbar = 0` this is exactly the mean interference
/// `σ_n² + kbar E[A]`; as `bbar → ∞` it falls to the infimum `λ_min` of
/// the interference-covariance spectrum.
pub fn solve_mf_interference(scenario: &ScenarioParams) -> Result<AsymptoticResult> {
    if scenario.ensemble != Ensemble::IidGaussian {
        return Err(SolveError::OutOfDomain(
            "solve_mf_interference covers the i.i.d. ensemble; use mf_orthogonal".into(),
        ));
    }
    let noise_var = scenario.noise_var;
    let mean = noise_var + scenario.kbar * scenario.interferer_profile.mean_power();
    if scenario.bbar == 0.0 || scenario.interferer_profile.mean_power() == 0.0 {
        return Ok(AsymptoticResult::exact(mean));
    }

    let spectrum = SasSpectrum::new(&scenario.interferer_profile, scenario.kbar)?;
    let lambda_min = noise_var + spectrum.edge;
    let target = scenario.bbar * LN2;
    // Root search in t = ln(I - λ_min). The maximizing tilt scales like
    // 1/gap, so dΨ*/dt stays O(1) and the residual target is reachable
    // however tight the interference pins to the spectrum floor.
    let objective = |t: f64| -> Result<f64> {
        let (value, _, _) = psi_star(&spectrum, t.exp())?;
        Ok(value - target)
    };

    // Ψ* decreases from +∞ at λ_min to 0 at the mean gap.
    let t_hi = (mean - lambda_min).ln();
    let mut t_lo = t_hi - 5.0 - target;
    let mut f_lo = objective(t_lo)?;
    let mut expansions = 0;
    while f_lo <= 0.0 {
        t_lo -= 20.0;
        f_lo = objective(t_lo)?;
        expansions += 1;
        if expansions > 40 {
            return Err(SolveError::NoConvergence {
                context: "solve_mf_interference bracket",
                residual: f_lo.abs(),
                iterations: expansions,
            });
        }
    }

    let out = bisect(objective, t_lo, t_hi, f_lo, 1e-13, 1e-12, 10_000)?;
    if out.f_x.abs() > RESIDUAL_TOL {
        return Err(SolveError::NoConvergence {
            context: "solve_mf_interference",
            residual: out.f_x.abs(),
            iterations: out.iterations,
        });
    }
    let gap = out.x.exp();
    let (_, rho_star, at_boundary) = psi_star(&spectrum, gap)?;
    Ok(AsymptoticResult {
        value: lambda_min + gap,
        rho_star,
        bracket: (
            lambda_min + out.bracket.0.exp(),
            lambda_min + out.bracket.1.exp(),
        ),
        residual: out.f_x.abs(),
        iterations: out.iterations,
        regime: if at_boundary {
            Regime::Saturated
        } else {
            Regime::Interior
        },
    })
}

/// Feedback threshold `bbar* = (-kbar ln(1 - 1/√kbar) - √kbar)/ln 2`
/// separating the interior and saturated branches for equal powers
/// (defined for `kbar > 1`).
fn mf_bbar_star(kbar: f64) -> f64 {
    (-kbar * (1.0 - 1.0 / kbar.sqrt()).ln() - kbar.sqrt()) / LN2
}

/// Closed-form equal-power interference of the matched filter.
///
/// For `kbar > 1` and `bbar` above the threshold the explicit saturated
/// branch applies; otherwise `I = Q + σ_n²` where
/// `Q = kbar e^{(Q - kbar)/kbar} 2^{-bbar/kbar}`.
pub fn mf_closed_form_equal_power(
    kbar: f64,
    bbar: f64,
    noise_var: f64,
) -> Result<AsymptoticResult> {
    if !(kbar > 0.0) || !(bbar >= 0.0) || !(noise_var > 0.0) {
        return Err(SolveError::OutOfDomain(format!(
            "need kbar > 0, bbar >= 0, noise_var > 0; got ({kbar}, {bbar}, {noise_var})"
        )));
    }
    if bbar == 0.0 {
        return Ok(AsymptoticResult::exact(noise_var + kbar));
    }

    if kbar > 1.0 && bbar > mf_bbar_star(kbar) {
        let root = kbar.sqrt();
        let gap = root * (1.0 - 1.0 / root).powf(1.0 - kbar) * (-root - bbar * LN2).exp();
        let value = noise_var + (1.0 - root) * (1.0 - root) + gap;
        let mut result = AsymptoticResult::exact(value);
        result.rho_star = 1.0 / gap;
        result.regime = Regime::Saturated;
        return Ok(result);
    }

    // h(Q) = kbar e^{(Q - kbar)/kbar} 2^{-bbar/kbar} - Q is strictly
    // decreasing on (0, kbar] for bbar > 0.
    let h = |q: f64| -> Result<f64> {
        Ok(q - kbar * ((q - kbar) / kbar).exp() * (-bbar / kbar * LN2).exp())
    };
    let f_lo = h(kbar * 1e-300)?;
    let out = bisect(h, kbar * 1e-300, kbar, f_lo, 1e-16 * kbar, 1e-14, 10_000)?;
    if out.f_x.abs() > RESIDUAL_TOL {
        return Err(SolveError::NoConvergence {
            context: "mf_closed_form_equal_power",
            residual: out.f_x.abs(),
            iterations: out.iterations,
        });
    }
    let value = out.x + noise_var;
    // No printed tilt exists for this branch; report the maximizer of the
    // general exponent at the solved interference (diagnostic only).
    let scenario = ScenarioParams::equal_power(kbar, bbar, noise_var)?;
    let spectrum = SasSpectrum::new(&scenario.interferer_profile, kbar)?;
    let (_, rho_star, _) = psi_star(&spectrum, value - noise_var - spectrum.edge)?;
    Ok(AsymptoticResult {
        value,
        rho_star,
        bracket: (out.bracket.0 + noise_var, out.bracket.1 + noise_var),
        residual: out.f_x.abs(),
        iterations: out.iterations,
        regime: Regime::Interior,
    })
}

/// Equal-power interference of the matched filter when the interfering
/// signatures are orthonormal (`0 < kbar < 1`):
/// `(I - σ_n²)^kbar (1 + σ_n² - I)^(1-kbar) = kbar^kbar (1-kbar)^(1-kbar) 2^-bbar`
/// on the branch where interference decreases with feedback,
/// `I ∈ (σ_n², σ_n² + kbar]`.
pub fn mf_orthogonal(kbar: f64, bbar: f64, noise_var: f64) -> Result<AsymptoticResult> {
    if !(kbar > 0.0 && kbar < 1.0) {
        return Err(SolveError::OutOfDomain(format!(
            "mf_orthogonal needs 0 < kbar < 1, got {kbar}"
        )));
    }
    if !(bbar >= 0.0) || !(noise_var > 0.0) {
        return Err(SolveError::OutOfDomain(format!(
            "need bbar >= 0 and noise_var > 0, got ({bbar}, {noise_var})"
        )));
    }
    let peak = noise_var + kbar;
    if bbar == 0.0 {
        return Ok(AsymptoticResult::exact(peak));
    }

    // Root search in t = ln(I - σ_n²): g(t) = kbar·t + (1-kbar) ln(1-e^t)
    // minus the right-hand side, strictly increasing up to the peak t = ln kbar.
    let log_rhs = kbar * kbar.ln() + (1.0 - kbar) * (1.0 - kbar).ln() - bbar * LN2;
    let g = |t: f64| -> Result<f64> { Ok(kbar * t + (1.0 - kbar) * (-t.exp()).ln_1p() - log_rhs) };
    let t_hi = kbar.ln();
    let mut t_lo = t_hi - bbar * LN2 / kbar - 5.0;
    let mut f_lo = g(t_lo)?;
    let mut expansions = 0;
    while f_lo >= 0.0 {
        t_lo -= 20.0;
        f_lo = g(t_lo)?;
        expansions += 1;
        if expansions > 40 {
            return Err(SolveError::NoConvergence {
                context: "mf_orthogonal bracket",
                residual: f_lo.abs(),
                iterations: expansions,
            });
        }
    }
    let out = bisect(g, t_lo, t_hi, f_lo, 1e-13, 1e-13, 10_000)?;
    if out.f_x.abs() > RESIDUAL_TOL {
        return Err(SolveError::NoConvergence {
            context: "mf_orthogonal",
            residual: out.f_x.abs(),
            iterations: out.iterations,
        });
    }
    let q = out.x.exp();
    let value = noise_var + q;
    // Interior stationary tilt of the two-atom exponent.
    let rho_star = (kbar - q) / (q * (1.0 - q));
    Ok(AsymptoticResult {
        value,
        rho_star,
        bracket: (
            noise_var + out.bracket.0.exp(),
            noise_var + out.bracket.1.exp(),
        ),
        residual: out.f_x.abs(),
        iterations: out.iterations,
        regime: Regime::Interior,
    })
}

/// Matched-filter output SINR `A₁ α₁ / I∞`.
pub fn mf_sinr(scenario: &ScenarioParams, interference: f64) -> f64 {
    debug_assert!(interference > 0.0);
    scenario.desired_power_eff() / interference
}
