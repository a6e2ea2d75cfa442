//! Scenario parameters and solver result types.

use crate::{Result, SolveError};
use rmt_transforms::PowerProfile;

/// Distribution of the interfering signature columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    /// i.i.d. circular complex Gaussian entries of variance 1/N.
    IidGaussian,
    /// Mutually orthonormal interferer signatures (needs `kbar < 1`).
    Orthogonal,
}

/// Per-user channel law.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelModel {
    Ideal,
    /// Single Rayleigh tap with the given mean-square gain.
    FlatRayleigh {
        var: f64,
    },
    /// L chip-spaced Rayleigh paths with mean-square gains `path_vars`.
    Multipath {
        path_vars: Vec<f64>,
    },
}

impl ChannelModel {
    pub fn path_vars(&self) -> &[f64] {
        match self {
            ChannelModel::Ideal => &[],
            ChannelModel::FlatRayleigh { var } => std::slice::from_ref(var),
            ChannelModel::Multipath { path_vars } => path_vars,
        }
    }

    /// Mean combined gain `Σ E|h_l|²` (one for the ideal channel).
    pub fn mean_gain(&self) -> f64 {
        match self {
            ChannelModel::Ideal => 1.0,
            _ => self.path_vars().iter().sum(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ChannelModel::Ideal => Ok(()),
            _ => {
                let vars = self.path_vars();
                if vars.is_empty() {
                    return Err(SolveError::OutOfDomain(
                        "fading channel needs at least one path".into(),
                    ));
                }
                for &v in vars {
                    if !v.is_finite() || v <= 0.0 {
                        return Err(SolveError::OutOfDomain(format!(
                            "path variances must be finite and > 0, got {v}"
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Full specification of one large-system evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    /// Normalized load `K/N`.
    pub kbar: f64,
    /// Normalized feedback bits `B/N`.
    pub bbar: f64,
    /// Noise variance `σ_n²`.
    pub noise_var: f64,
    /// Received power of the desired user.
    pub desired_power: f64,
    /// Combined fading gain of the desired user (one when nonfading).
    pub desired_gain: f64,
    /// Effective interferer power distribution (after any fading folding).
    pub interferer_profile: PowerProfile,
    pub ensemble: Ensemble,
}

impl ScenarioParams {
    pub fn new(
        kbar: f64,
        bbar: f64,
        noise_var: f64,
        desired_power: f64,
        desired_gain: f64,
        interferer_profile: PowerProfile,
        ensemble: Ensemble,
    ) -> Result<Self> {
        if !(kbar > 0.0) {
            return Err(SolveError::OutOfDomain(format!(
                "kbar must be > 0, got {kbar}"
            )));
        }
        if !(bbar >= 0.0) {
            return Err(SolveError::OutOfDomain(format!(
                "bbar must be >= 0, got {bbar}"
            )));
        }
        if !(noise_var > 0.0) {
            return Err(SolveError::OutOfDomain(format!(
                "noise_var must be > 0, got {noise_var}"
            )));
        }
        if !(desired_power > 0.0) {
            return Err(SolveError::OutOfDomain(format!(
                "desired_power must be > 0, got {desired_power}"
            )));
        }
        if !(desired_gain > 0.0) {
            return Err(SolveError::OutOfDomain(format!(
                "desired_gain must be > 0, got {desired_gain}"
            )));
        }
        if ensemble == Ensemble::Orthogonal && !(kbar < 1.0) {
            return Err(SolveError::OutOfDomain(format!(
                "orthogonal ensemble needs 0 < kbar < 1, got {kbar}"
            )));
        }
        Ok(Self {
            kbar,
            bbar,
            noise_var,
            desired_power,
            desired_gain,
            interferer_profile,
            ensemble,
        })
    }

    /// Equal unit transmit powers, ideal channel, i.i.d. signatures.
    pub fn equal_power(kbar: f64, bbar: f64, noise_var: f64) -> Result<Self> {
        Self::new(
            kbar,
            bbar,
            noise_var,
            1.0,
            1.0,
            PowerProfile::equal_power(),
            Ensemble::IidGaussian,
        )
    }

    /// Effective desired-user power `A₁ α₁`.
    pub fn desired_power_eff(&self) -> f64 {
        self.desired_power * self.desired_gain
    }

    /// Single-user SINR `A₁ α₁ / σ_n²`.
    pub fn single_user_sinr(&self) -> f64 {
        self.desired_power_eff() / self.noise_var
    }

    pub fn with_bbar(&self, bbar: f64) -> Self {
        Self {
            bbar,
            ..self.clone()
        }
    }
}

/// Noise variance from `SNR = A₁/σ_n²` in dB.
pub fn noise_var_for_snr_db(desired_power: f64, snr_db: f64) -> f64 {
    desired_power * 10f64.powf(-snr_db / 10.0)
}

/// Which branch of the extremal fixed point produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// The tilt maximizer is interior.
    Interior,
    /// The tilt maximizer sits on its domain boundary (high-feedback branch).
    Saturated,
}

/// A solved asymptotic quantity with solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticResult {
    /// The interference power or SINR.
    pub value: f64,
    /// Maximizing tilt of the outer fixed point at `value`.
    pub rho_star: f64,
    /// Final bisection bracket containing `value` (degenerate for closed
    /// forms and anchors).
    pub bracket: (f64, f64),
    /// Absolute residual of the defining equation at `value`.
    pub residual: f64,
    /// Outer-iteration count.
    pub iterations: usize,
    pub regime: Regime,
}

impl AsymptoticResult {
    pub(crate) fn exact(value: f64) -> Self {
        Self {
            value,
            rho_star: 0.0,
            bracket: (value, value),
            residual: 0.0,
            iterations: 0,
            regime: Regime::Interior,
        }
    }
}
