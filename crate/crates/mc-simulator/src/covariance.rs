//! Interference covariance assembly and its factorization.

use crate::channel::Channel;
use crate::{Cplx, Result, SimError};
use nalgebra::{DMatrix, DVector};

/// `R₁ = Σ_k A_k s̃_k s̃_k† + σ_n² I` over the interferers, with
/// `s̃_k = H_k s_k`. `powers` and `channels` list the `k - 1` interferers
/// in column order of `s1`.
pub fn interference_covariance(
    s1: &DMatrix<Cplx>,
    powers: &[f64],
    channels: &[Channel],
    noise_var: f64,
) -> DMatrix<Cplx> {
    let n = s1.nrows();
    assert_eq!(powers.len(), s1.ncols());
    assert_eq!(channels.len(), s1.ncols());
    let mut r = DMatrix::from_diagonal_element(n, n, Cplx::new(noise_var, 0.0));
    for (j, (&power, channel)) in powers.iter().zip(channels).enumerate() {
        let effective = channel.apply(&s1.column(j).into_owned());
        for c in 0..n {
            let scaled = effective[c].conj() * power;
            for r_idx in 0..n {
                r[(r_idx, c)] += effective[r_idx] * scaled;
            }
        }
    }
    r
}

/// Lower-triangular Cholesky factor of a Hermitian positive-definite
/// matrix, kept as a plain matrix for cheap repeated forward solves.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    l: DMatrix<Cplx>,
}

impl CholeskyFactor {
    pub fn l(&self) -> &DMatrix<Cplx> {
        &self.l
    }
}

/// Factorizes `R₁` once per instance; every codeword evaluation then costs
/// one triangular solve.
pub fn factorize(r1: &DMatrix<Cplx>) -> Result<CholeskyFactor> {
    let chol = r1.clone().cholesky().ok_or(SimError::Singular)?;
    Ok(CholeskyFactor { l: chol.unpack() })
}

/// Solves `L y = b` for lower-triangular `L`.
pub fn forward_substitute(factor: &CholeskyFactor, b: &DVector<Cplx>) -> DVector<Cplx> {
    let l = &factor.l;
    let n = b.len();
    let mut y = b.clone();
    for j in 0..n {
        y[j] /= l[(j, j)];
        let yj = y[j];
        for i in (j + 1)..n {
            y[i] -= l[(i, j)] * yj;
        }
    }
    y
}
