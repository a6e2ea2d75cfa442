//! Signature ensembles and the RVQ codebook.

use crate::rng::complex_normal;
use crate::{Cplx, Ensemble, Result, SimConfig, SimError};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

fn unit_vector(n: usize, rng: &mut impl Rng) -> DVector<Cplx> {
    let mut v = DVector::from_fn(n, |_, _| complex_normal(rng, 1.0));
    let norm = v.norm();
    v /= Cplx::new(norm, 0.0);
    v
}

/// Draws the `n x (k-1)` interfering signature matrix.
///
/// i.i.d. ensemble: circular complex Gaussian entries of variance `1/n`,
/// each column then normalized to exactly unit norm (finite-size
/// convention; the norm concentrates at one only asymptotically).
/// Orthogonal ensemble: the first `k-1` columns of a Haar unitary.
pub fn gen_signatures(config: &SimConfig, rng: &mut impl Rng) -> Result<DMatrix<Cplx>> {
    let n = config.n;
    let cols = config.k - 1;
    match config.ensemble {
        Ensemble::IidGaussian => {
            let mut s = DMatrix::from_fn(n, cols, |_, _| complex_normal(rng, 1.0 / n as f64));
            for mut col in s.column_iter_mut() {
                let norm = col.norm();
                col /= Cplx::new(norm, 0.0);
            }
            Ok(s)
        }
        Ensemble::Orthogonal => {
            if cols > n {
                return Err(SimError::OutOfDomain(format!(
                    "orthogonal ensemble needs k - 1 <= n, got {cols} > {n}"
                )));
            }
            // QR of a Gaussian matrix with the R-diagonal phase absorbed
            // into Q gives Haar-distributed orthonormal columns.
            let g = DMatrix::from_fn(n, cols, |_, _| complex_normal(rng, 1.0));
            let qr = g.qr();
            let mut q = qr.q();
            let r = qr.r();
            for (j, mut col) in q.column_iter_mut().enumerate() {
                let d = r[(j, j)];
                if d.norm() > 0.0 {
                    col *= d / d.norm();
                }
            }
            Ok(q)
        }
    }
}

/// RVQ codebook: `2^b` independent isotropic unit vectors.
#[derive(Debug, Clone)]
pub struct Codebook {
    vectors: Vec<DVector<Cplx>>,
}

impl Codebook {
    pub fn generate(n: usize, b: u32, rng: &mut impl Rng) -> Self {
        let count = 1usize << b;
        Self {
            vectors: (0..count).map(|_| unit_vector(n, rng)).collect(),
        }
    }

    pub fn vectors(&self) -> &[DVector<Cplx>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}
