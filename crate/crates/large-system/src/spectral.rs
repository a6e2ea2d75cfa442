//! Shared evaluation of the `S A S†` limiting spectrum.

use crate::Result;
use rmt_transforms::{
    log_moment_below_edge, sas_support_infimum, shannon_sas, theta_fixed_point, PowerProfile,
};

/// The limiting spectrum of `S A S†` for one interferer profile and load,
/// with its lower support edge located once up front.
pub(crate) struct SasSpectrum<'a> {
    profile: &'a PowerProfile,
    kbar: f64,
    /// Infimum of the spectral support (zero when the load of nonzero
    /// powers is at most one).
    pub edge: f64,
}

impl<'a> SasSpectrum<'a> {
    pub fn new(profile: &'a PowerProfile, kbar: f64) -> Result<Self> {
        let edge = sas_support_infimum(profile, kbar)?;
        Ok(Self {
            profile,
            kbar,
            edge,
        })
    }

    pub fn theta(&self, x: f64) -> Result<f64> {
        Ok(theta_fixed_point(self.profile, self.kbar, x)?)
    }

    pub fn shannon(&self, w: f64) -> Result<f64> {
        Ok(shannon_sas(self.profile, self.kbar, w)?)
    }

    /// `M(e) = ∫ ln(τ + e) dG(τ)`, valid for `e > -edge`.
    ///
    /// For `e > 0` this is `ν(1/e) + ln e`; for `e <= 0` it continues
    /// below the support through the negative branch of the eta transform.
    pub fn log_moment_shifted(&self, e: f64) -> Result<f64> {
        if e > 0.0 {
            Ok(self.shannon(1.0 / e)? + e.ln())
        } else {
            Ok(log_moment_below_edge(self.profile, self.kbar, -e)?)
        }
    }
}
