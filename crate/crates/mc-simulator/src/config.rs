//! Simulation configuration and trial aggregation.

use crate::{ChannelModel, Ensemble, Result, SimError};

/// Linear receiver applied to the received vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Receiver {
    MatchedFilter,
    Mmse,
}

/// One finite-size experiment: `trials` independent draws of the system at
/// processing gain `n` with `k` users (user 1 is the desired one, so `k-1`
/// interferers) and a `2^b`-entry codebook per trial.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    pub k: usize,
    pub b: u32,
    pub noise_var: f64,
    /// Received powers `A_1 ... A_K` (index 0 is the desired user).
    pub powers: Vec<f64>,
    pub channel: ChannelModel,
    pub ensemble: Ensemble,
    pub receiver: Receiver,
    pub trials: usize,
    pub master_seed: u64,
    /// Hard cap on `b`; exhaustive search beyond `2^cap` is refused.
    pub codebook_cap: u32,
}

/// Default exhaustive-search cap (`2^24` codewords).
pub const DEFAULT_CODEBOOK_CAP: u32 = 24;

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.trials == 0 {
            return Err(SimError::OutOfDomain(
                "n, k, and trials must all be positive".into(),
            ));
        }
        if !(self.noise_var > 0.0) {
            return Err(SimError::OutOfDomain(format!(
                "noise_var must be > 0, got {}",
                self.noise_var
            )));
        }
        if self.powers.len() != self.k {
            return Err(SimError::OutOfDomain(format!(
                "powers must list all {} users, got {}",
                self.k,
                self.powers.len()
            )));
        }
        if self.powers.iter().any(|&p| !(p > 0.0)) {
            return Err(SimError::OutOfDomain("powers must all be > 0".into()));
        }
        if self.ensemble == Ensemble::Orthogonal && self.k - 1 > self.n {
            return Err(SimError::OutOfDomain(format!(
                "orthogonal ensemble needs k - 1 <= n, got k = {}, n = {}",
                self.k, self.n
            )));
        }
        self.channel
            .validate()
            .map_err(|e| SimError::OutOfDomain(e.to_string()))?;
        if self.channel.path_vars().len() > self.n {
            return Err(SimError::OutOfDomain(format!(
                "path count {} exceeds processing gain {}",
                self.channel.path_vars().len(),
                self.n
            )));
        }
        if self.b > self.codebook_cap {
            return Err(SimError::BudgetExceeded {
                b: self.b,
                cap: self.codebook_cap,
            });
        }
        Ok(())
    }

    /// FNV-1a hash of the canonical field dump; tags estimates with the
    /// configuration that produced them.
    pub fn digest(&self) -> String {
        let mut text = format!(
            "n={};k={};b={};nv={};ens={:?};rx={:?};trials={};seed={};cap={};powers=",
            self.n,
            self.k,
            self.b,
            self.noise_var,
            self.ensemble,
            self.receiver,
            self.trials,
            self.master_seed,
            self.codebook_cap
        );
        for p in &self.powers {
            text.push_str(&format!("{p},"));
        }
        text.push_str(&format!("channel={:?}", self.channel));

        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in text.bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{hash:016x}")
    }
}

/// Aggregated Monte Carlo output.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialEstimate {
    pub mean_sinr: f64,
    /// Sample standard deviation over trials divided by `√trials`
    /// (zero when only one trial ran).
    pub std_error: f64,
    pub trials: usize,
    pub config_digest: String,
}
