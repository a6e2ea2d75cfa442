//! Linear-MMSE SINR fixed points.

use crate::scenario::{AsymptoticResult, Ensemble, Regime, ScenarioParams};
use crate::solver::{bisect, golden_max};
use crate::spectral::SasSpectrum;
use crate::{Result, SolveError, LN2, RESIDUAL_TOL};

/// Log tail exponent of the MMSE SINR of one random signature,
/// `Φ(ρ, β) = ν(ζ) - ν(1/σ_n²) + ln(1 + ρ(β - A₁/σ_n²))` with
/// `ζ = (1 + ρβ)/(σ_n² + ρβσ_n² - ρA₁)`.
///
/// Fails with `OutOfDomain` when the `ζ` denominator is not positive.
pub fn phi_mmse(scenario: &ScenarioParams, rho: f64, beta: f64) -> Result<f64> {
    let a1 = scenario.desired_power_eff();
    let noise_var = scenario.noise_var;
    let denom = noise_var + rho * beta * noise_var - rho * a1;
    if !(denom > 0.0) {
        return Err(SolveError::OutOfDomain(format!(
            "phi_mmse needs noise_var(1 + rho beta) - rho A1 > 0, got {denom}"
        )));
    }
    let zeta = (1.0 + rho * beta) / denom;
    let spectrum = SasSpectrum::new(&scenario.interferer_profile, scenario.kbar)?;
    Ok(spectrum.shannon(zeta)? - spectrum.shannon(1.0 / noise_var)?
        + (1.0 + rho * (beta - a1 / noise_var)).ln())
}

struct MmseContext<'a> {
    spectrum: SasSpectrum<'a>,
    noise_var: f64,
    a1: f64,
    beta_max: f64,
    /// Cached `M(σ_n²) = ∫ ln(τ + σ_n²) dG(τ)`.
    m_noise: f64,
}

impl<'a> MmseContext<'a> {
    fn new(scenario: &'a ScenarioParams) -> Result<Self> {
        let spectrum = SasSpectrum::new(&scenario.interferer_profile, scenario.kbar)?;
        let noise_var = scenario.noise_var;
        let a1 = scenario.desired_power_eff();
        let beta_max = a1 / (noise_var + spectrum.edge);
        let m_noise = spectrum.log_moment_shifted(noise_var)?;
        Ok(Self {
            spectrum,
            noise_var,
            a1,
            beta_max,
            m_noise,
        })
    }

    /// Φ over the full tilt range: `ln(1 + ρβ) + M(σ_n² - ρA₁/(1 + ρβ)) - M(σ_n²)`,
    /// continuing below the support once the shifted argument turns negative.
    fn phi(&self, rho: f64, beta: f64) -> Result<f64> {
        if rho == 0.0 {
            return Ok(0.0);
        }
        let e = self.noise_var - rho * self.a1 / (1.0 + rho * beta);
        Ok((1.0 + rho * beta).ln() + self.spectrum.log_moment_shifted(e)? - self.m_noise)
    }

    /// Maximizes `Φ(·, β)` over `(0, 1/gap)` where `gap = β_max - β`;
    /// returns `(Φ*, ρ*, at_boundary)`. Parameterized by the gap so the
    /// tilt range keeps full precision when β hugs the ceiling.
    fn phi_star(&self, gap: f64) -> Result<(f64, f64, bool)> {
        let beta = self.beta_max - gap;
        let rho_max = (1.0 - 1e-12) / gap;
        let (rho, value) = golden_max(|rho| self.phi(rho, beta), 0.0, rho_max, rho_max * 1e-11)?;
        Ok((value, rho, rho >= rho_max * (1.0 - 1e-6)))
    }
}

/// Large-system SINR ceiling `A₁α₁ / λ_min(R₁)`, reached as `bbar → ∞`.
pub fn beta_max(scenario: &ScenarioParams) -> Result<f64> {
    let spectrum = SasSpectrum::new(&scenario.interferer_profile, scenario.kbar)?;
    Ok(scenario.desired_power_eff() / (scenario.noise_var + spectrum.edge))
}

/// Large-system MMSE SINR of a randomly drawn (unquantized) signature:
/// `(A₁α₁/σ_n²) η(1/σ_n²)`. Equals the RVQ value at `bbar = 0`.
pub fn random_signature_mmse_baseline(scenario: &ScenarioParams) -> Result<f64> {
    let spectrum = SasSpectrum::new(&scenario.interferer_profile, scenario.kbar)?;
    let theta = spectrum.theta(1.0 / scenario.noise_var)?;
    Ok(scenario.desired_power_eff() / scenario.noise_var * theta)
}

/// Large-system MMSE SINR with RVQ signature selection: the root of
/// `max_ρ Φ(ρ, β) = bbar ln 2` on `[baseline, β_max)`.
pub fn solve_mmse_sinr(scenario: &ScenarioParams) -> Result<AsymptoticResult> {
    if scenario.ensemble != Ensemble::IidGaussian {
        return Err(SolveError::OutOfDomain(
            "solve_mmse_sinr covers the i.i.d. ensemble; use mmse_orthogonal".into(),
        ));
    }
    let baseline = random_signature_mmse_baseline(scenario)?;
    if scenario.bbar == 0.0 {
        return Ok(AsymptoticResult::exact(baseline));
    }
    let ctx = MmseContext::new(scenario)?;
    let target = scenario.bbar * LN2;
    // Root search in t = ln(β_max - β); Φ* falls from +∞ at the ceiling
    // to 0 at the baseline gap, with O(1) slope in t throughout.
    let objective = |t: f64| -> Result<f64> {
        let (value, _, _) = ctx.phi_star(t.exp())?;
        Ok(value - target)
    };

    let t_hi = (ctx.beta_max - baseline).ln();
    let mut t_lo = t_hi - 5.0 - target;
    let mut f_lo = objective(t_lo)?;
    let mut expansions = 0;
    while f_lo <= 0.0 {
        t_lo -= 20.0;
        f_lo = objective(t_lo)?;
        expansions += 1;
        if expansions > 40 {
            return Err(SolveError::NoConvergence {
                context: "solve_mmse_sinr bracket",
                residual: f_lo.abs(),
                iterations: expansions,
            });
        }
    }
    let out = bisect(objective, t_lo, t_hi, f_lo, 1e-13, 1e-12, 10_000)?;
    if out.f_x.abs() > RESIDUAL_TOL {
        return Err(SolveError::NoConvergence {
            context: "solve_mmse_sinr",
            residual: out.f_x.abs(),
            iterations: out.iterations,
        });
    }
    let gap = out.x.exp();
    let (_, rho_star, at_boundary) = ctx.phi_star(gap)?;
    Ok(AsymptoticResult {
        value: ctx.beta_max - gap,
        rho_star,
        bracket: (
            ctx.beta_max - out.bracket.1.exp(),
            ctx.beta_max - out.bracket.0.exp(),
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

/// `w(x)` and `v(x)`, the roots of `z² - (1 + kbar + x) z + kbar = 0`,
/// with `v = kbar/w` so the product identity is exact.
fn wv(kbar: f64, x: f64) -> (f64, f64) {
    let s = 1.0 + kbar + x;
    // x may sit on the branch point (discriminant zero); clamp rounding.
    let r = (s * s - 4.0 * kbar).max(0.0).sqrt();
    let w = 0.5 * (s + r);
    (w, kbar / w)
}

/// Closed-form equal-power baseline: positive root of
/// `σ_n² β² + (kbar - 1 + σ_n²) β - 1 = 0`.
fn equal_power_baseline(kbar: f64, noise_var: f64) -> f64 {
    let b = kbar - 1.0 + noise_var;
    (-b + (b * b + 4.0 * noise_var).sqrt()) / (2.0 * noise_var)
}

/// `p(β)`: the interior stationary point of Φ expressed as a shift,
/// `(1 - βσ_n²)/(kbar β - 1 + βσ_n²) - 1/β + σ_n²`.
fn p_shift(kbar: f64, noise_var: f64, beta: f64) -> f64 {
    (1.0 - beta * noise_var) / (kbar * beta - 1.0 + beta * noise_var) - 1.0 / beta + noise_var
}

fn log_tilt_term(kbar: f64, noise_var: f64, beta: f64) -> f64 {
    (kbar / (1.0 - beta * noise_var) - 1.0 / beta).ln()
}

/// Feedback threshold for `kbar > 1`.
fn mmse_bbar_star(kbar: f64, noise_var: f64) -> f64 {
    let root = kbar.sqrt();
    let (w_n, v_n) = wv(kbar, noise_var);
    ((kbar - root + noise_var).ln() + kbar * root.ln() - kbar * (root - 1.0).ln() - root - w_n.ln()
        + (kbar - 1.0) * (1.0 - v_n / kbar).ln()
        + v_n)
        / LN2
}

/// SINR at which the interior stationary tilt collides with the boundary
/// (`kbar > 1`).
fn mmse_beta_star(kbar: f64, noise_var: f64) -> f64 {
    let d = kbar - kbar.sqrt();
    (d + noise_var) / (d * d + 2.0 * noise_var * d + noise_var * noise_var)
}

/// Closed-form equal-power MMSE SINR (unit powers, ideal channel, i.i.d.
/// interfering signatures), split over the three analytic branches.
pub fn mmse_equal_power(kbar: f64, bbar: f64, noise_var: f64) -> Result<AsymptoticResult> {
    if !(kbar > 0.0) || !(bbar >= 0.0) || !(noise_var > 0.0) {
        return Err(SolveError::OutOfDomain(format!(
            "need kbar > 0, bbar >= 0, noise_var > 0; got ({kbar}, {bbar}, {noise_var})"
        )));
    }
    let baseline = equal_power_baseline(kbar, noise_var);
    if bbar == 0.0 {
        return Ok(AsymptoticResult::exact(baseline));
    }
    let edge = if kbar > 1.0 {
        (kbar.sqrt() - 1.0) * (kbar.sqrt() - 1.0)
    } else {
        0.0
    };
    let beta_ceiling = 1.0 / (noise_var + edge);
    let (w_n, v_n) = wv(kbar, noise_var);
    let target = bbar * LN2;

    if kbar <= 1.0 {
        // Single implicit branch.
        let eq = |beta: f64| -> Result<f64> {
            let p = p_shift(kbar, noise_var, beta);
            let (w_p, v_p) = wv(kbar, p);
            // Terms weighted by 1 - kbar vanish identically at kbar = 1;
            // skip them there so ln of a degenerate argument cannot leak a
            // NaN through 0 * ln(0).
            let light_terms = if kbar < 1.0 {
                (1.0 - kbar) * (p / noise_var).ln()
                    - (1.0 - kbar) * ((1.0 - v_p).ln() - (1.0 - v_n).ln())
            } else {
                0.0
            };
            Ok(
                log_tilt_term(kbar, noise_var, beta) + light_terms + kbar * (w_p.ln() - w_n.ln())
                    - v_p
                    + v_n
                    - target,
            )
        };
        let hi = baseline + (beta_ceiling - baseline) * (1.0 - 1e-12);
        let out = bisect(
            eq,
            baseline,
            hi,
            -target,
            1e-15 * beta_ceiling,
            1e-13,
            10_000,
        )?;
        if out.f_x.abs() > RESIDUAL_TOL {
            return Err(SolveError::NoConvergence {
                context: "mmse_equal_power (light load)",
                residual: out.f_x.abs(),
                iterations: out.iterations,
            });
        }
        let beta = out.x;
        let rho_star = kbar / (beta * (1.0 - beta * noise_var)) - 1.0 / (beta * beta) - 1.0 / beta;
        return Ok(AsymptoticResult {
            value: beta,
            rho_star,
            bracket: out.bracket,
            residual: out.f_x.abs(),
            iterations: out.iterations,
            regime: Regime::Interior,
        });
    }

    let bbar_star = mmse_bbar_star(kbar, noise_var);
    if bbar <= bbar_star {
        let eq = |beta: f64| -> Result<f64> {
            let p = p_shift(kbar, noise_var, beta);
            let (w_p, v_p) = wv(kbar, p);
            Ok(log_tilt_term(kbar, noise_var, beta) + (w_p.ln() - w_n.ln())
                - (kbar - 1.0) * ((kbar - v_p).ln() - (kbar - v_n).ln())
                - v_p
                + v_n
                - target)
        };
        let beta_star = mmse_beta_star(kbar, noise_var);
        let out = bisect(
            eq,
            baseline,
            beta_star,
            -target,
            1e-16 * beta_star,
            1e-13,
            10_000,
        )?;
        if out.f_x.abs() > RESIDUAL_TOL {
            return Err(SolveError::NoConvergence {
                context: "mmse_equal_power (heavy load, interior)",
                residual: out.f_x.abs(),
                iterations: out.iterations,
            });
        }
        let beta = out.x;
        let rho_star = kbar / (beta * (1.0 - beta * noise_var)) - 1.0 / (beta * beta) - 1.0 / beta;
        return Ok(AsymptoticResult {
            value: beta,
            rho_star,
            bracket: out.bracket,
            residual: out.f_x.abs(),
            iterations: out.iterations,
            regime: Regime::Interior,
        });
    }

    // Saturated branch: explicit.
    let root = kbar.sqrt();
    let exponent = 0.5 * kbar * kbar.ln()
        - (kbar - 1.0) * ((kbar * root - kbar) / (kbar - v_n)).ln()
        - w_n.ln()
        + v_n
        - root;
    let gap = beta_ceiling * (-bbar * LN2 + exponent).exp();
    let beta = beta_ceiling - gap;
    let residual = ((beta_ceiling.ln() - gap.ln()) + 0.5 * kbar * kbar.ln()
        - (kbar - 1.0) * (root - 1.0).ln()
        - root
        - w_n.ln()
        + (kbar - 1.0) * (1.0 - v_n / kbar).ln()
        + v_n
        - target)
        .abs();
    Ok(AsymptoticResult {
        value: beta,
        rho_star: 1.0 / gap,
        bracket: (beta, beta),
        residual,
        iterations: 0,
        regime: Regime::Saturated,
    })
}

/// Equal-power MMSE SINR with orthonormal interfering signatures
/// (`0 < kbar < 1`, unit interferer powers, desired power `a1`):
/// `(A₁ - βσ_n²)^kbar (β(1+σ_n²) - A₁)^(1-kbar) =
///  (A₁kbar/(1+σ_n²))^kbar (A₁(1-kbar)/σ_n²)^(1-kbar) 2^-bbar`
/// on the branch where the SINR grows with feedback,
/// `β ∈ [β_peak, A₁/σ_n²)`.
pub fn mmse_orthogonal(kbar: f64, bbar: f64, noise_var: f64, a1: f64) -> Result<AsymptoticResult> {
    if !(kbar > 0.0 && kbar < 1.0) {
        return Err(SolveError::OutOfDomain(format!(
            "mmse_orthogonal needs 0 < kbar < 1, got {kbar}"
        )));
    }
    if !(bbar >= 0.0) || !(noise_var > 0.0) || !(a1 > 0.0) {
        return Err(SolveError::OutOfDomain(format!(
            "need bbar >= 0, noise_var > 0, a1 > 0; got ({bbar}, {noise_var}, {a1})"
        )));
    }
    let peak = a1 * (1.0 + noise_var - kbar) / (noise_var * (1.0 + noise_var));
    if bbar == 0.0 {
        return Ok(AsymptoticResult::exact(peak));
    }
    let ceiling = a1 / noise_var;
    let log_rhs = kbar * (a1 * kbar / (1.0 + noise_var)).ln()
        + (1.0 - kbar) * (a1 * (1.0 - kbar) / noise_var).ln()
        - bbar * LN2;
    // Root search in t = ln(β_max - β) on the feedback-improving branch:
    // A₁ - βσ_n² = σ_n² e^t turns the steep factor affine in t.
    let g = |t: f64| -> Result<f64> {
        let s = t.exp();
        Ok(kbar * (noise_var.ln() + t)
            + (1.0 - kbar) * ((ceiling - s) * (1.0 + noise_var) - a1).ln()
            - log_rhs)
    };
    // g increases in t up to the peak gap, where it equals bbar ln 2.
    let t_hi = (ceiling - peak).ln();
    let mut t_lo = t_hi - bbar * LN2 / kbar - 5.0;
    let mut f_lo = g(t_lo)?;
    let mut expansions = 0;
    while f_lo >= 0.0 {
        t_lo -= 20.0;
        f_lo = g(t_lo)?;
        expansions += 1;
        if expansions > 40 {
            return Err(SolveError::NoConvergence {
                context: "mmse_orthogonal bracket",
                residual: f_lo.abs(),
                iterations: expansions,
            });
        }
    }
    let out = bisect(g, t_lo, t_hi, f_lo, 1e-13, 1e-13, 10_000)?;
    if out.f_x.abs() > RESIDUAL_TOL {
        return Err(SolveError::NoConvergence {
            context: "mmse_orthogonal",
            residual: out.f_x.abs(),
            iterations: out.iterations,
        });
    }
    let gap = out.x.exp();
    let value = ceiling - gap;
    let u = value - a1 / (1.0 + noise_var);
    let s = -gap;
    let rho_star = -(kbar * u + (1.0 - kbar) * s) / (u * s);
    Ok(AsymptoticResult {
        value,
        rho_star,
        bracket: (ceiling - out.bracket.1.exp(), ceiling - out.bracket.0.exp()),
        residual: out.f_x.abs(),
        iterations: out.iterations,
        regime: Regime::Interior,
    })
}
