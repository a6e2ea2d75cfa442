//! Seed derivation and complex Gaussian sampling.

use crate::Cplx;
use rand::Rng;
use rand_distr::StandardNormal;

/// SplitMix64 step (Steele, Lea, Flood 2014 constants).
fn splitmix64(state: &mut u64) {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    *state = z ^ (z >> 31);
}

/// Derives the 256-bit stream key for one trial.
///
/// The key is four SplitMix64 outputs seeded from
/// `master_seed XOR (trial_index + 1) * 0x9E3779B97F4A7C15`; distinct trial
/// indices therefore start from distinct SplitMix64 states and never share
/// a stream.
pub fn trial_seed(master_seed: u64, trial_index: u64) -> [u8; 32] {
    let mut state = master_seed
        ^ trial_index
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        splitmix64(&mut state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    key
}

/// Circular complex Gaussian with `E|z|² = var`: independent real and
/// imaginary parts of variance `var/2` each.
pub fn complex_normal(rng: &mut impl Rng, var: f64) -> Cplx {
    let sigma = (0.5 * var).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Cplx::new(re * sigma, im * sigma)
}
