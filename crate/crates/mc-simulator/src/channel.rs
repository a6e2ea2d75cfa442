//! Per-user channel draws and the banded Toeplitz channel matrix.

use crate::rng::complex_normal;
use crate::{ChannelModel, Cplx, Result, SimConfig, SimError};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// One realization of a user's channel: the taps `h_1 ... h_L` of the
/// lower-banded Toeplitz matrix (identity for the ideal channel).
#[derive(Debug, Clone)]
pub struct Channel {
    taps: Vec<Cplx>,
}

impl Channel {
    /// Draws the taps: independent circular complex Gaussians with the
    /// model's per-path variances. The ideal channel draws nothing.
    pub fn draw(model: &ChannelModel, rng: &mut impl Rng) -> Self {
        let taps = model
            .path_vars()
            .iter()
            .map(|&v| complex_normal(rng, v))
            .collect();
        Self { taps }
    }

    pub fn ideal() -> Self {
        Self { taps: Vec::new() }
    }

    pub fn is_ideal(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn taps(&self) -> &[Cplx] {
        &self.taps
    }

    /// Applies the channel to a signature: the truncated convolution
    /// `out[i] = Σ_l h_l s[i-l]` (inter-symbol spill beyond `n` discarded).
    pub fn apply(&self, s: &DVector<Cplx>) -> DVector<Cplx> {
        if self.is_ideal() {
            return s.clone();
        }
        let n = s.len();
        let mut out = DVector::from_element(n, Cplx::new(0.0, 0.0));
        for (lag, &tap) in self.taps.iter().enumerate() {
            for i in lag..n {
                out[i] += tap * s[i - lag];
            }
        }
        out
    }

    /// The full `n x n` matrix with `H[i][j] = h_{i-j+1}` on the band.
    pub fn matrix(&self, n: usize) -> DMatrix<Cplx> {
        if self.is_ideal() {
            return DMatrix::identity(n, n);
        }
        DMatrix::from_fn(n, n, |i, j| {
            if i >= j && i - j < self.taps.len() {
                self.taps[i - j]
            } else {
                Cplx::new(0.0, 0.0)
            }
        })
    }
}

/// Draws a channel for one user and returns its `n x n` matrix.
pub fn build_channel(config: &SimConfig, rng: &mut impl Rng) -> Result<DMatrix<Cplx>> {
    if config.channel.path_vars().len() > config.n {
        return Err(SimError::OutOfDomain(format!(
            "path count {} exceeds processing gain {}",
            config.channel.path_vars().len(),
            config.n
        )));
    }
    Ok(Channel::draw(&config.channel, rng).matrix(config.n))
}
