//! Smallest normalized feedback reaching a target SINR offset.

use crate::config::ScenarioSpec;
use crate::sweep::{analytic_scenario, analytic_sinr};
use large_system::{beta_max, Ensemble, SolveError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FeedbackError {
    /// Even unlimited feedback stays below the target.
    #[error("target unreachable: SINR ceiling is {gap_db:.3} dB below the target")]
    Unreachable { gap_db: f64 },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Smallest `bbar` (bisection resolution 1e-3) whose large-system SINR is
/// within `offset_db` of the single-user SINR `A₁α₁/σ_n²`.
pub fn required_feedback(template: &ScenarioSpec, offset_db: f64) -> Result<f64, FeedbackError> {
    assert!(offset_db > 0.0, "offset must be positive");
    let kbar = template.kbar;
    let probe = analytic_scenario(template, kbar, 0.0)?;
    let target = probe.single_user_sinr() * 10f64.powf(-offset_db / 10.0);

    // SINR ceiling at unlimited feedback: A₁α₁/λ_min for the i.i.d.
    // ensemble (identical expression for both receivers), the single-user
    // SINR for orthogonal interferers (their spectrum floor is the noise).
    let ceiling = match template.ensemble {
        Ensemble::IidGaussian => beta_max(&probe)?,
        Ensemble::Orthogonal => probe.single_user_sinr(),
    };
    if ceiling <= target {
        let gap_db = 10.0 * (target / ceiling).log10();
        return Err(FeedbackError::Unreachable { gap_db });
    }

    let value_at = |bbar: f64| -> Result<f64, SolveError> { analytic_sinr(template, kbar, bbar) };

    if value_at(0.0)? >= target {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    let mut expansions = 0;
    while value_at(hi)? < target {
        hi *= 2.0;
        expansions += 1;
        if expansions > 12 {
            // Ceiling said reachable, but only at absurd feedback depth.
            let gap_db = 10.0 * (target / value_at(hi)?).log10();
            return Err(FeedbackError::Unreachable { gap_db });
        }
    }
    let mut lo = hi / 2.0;
    if hi == 1.0 {
        lo = 0.0;
    }
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if value_at(mid)? >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
