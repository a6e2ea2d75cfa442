//! Marchenko-Pastur closed forms.
//!
//! Conventions: the spectrum of `S S†` where `S` is N x M with i.i.d.
//! entries of variance 1/N and `kbar = M/N`. The continuous part lives on
//! `[(1 - √kbar)², (1 + √kbar)²]`; for `kbar < 1` a point mass of weight
//! `1 - kbar` sits at zero.

use crate::{Result, TransformError};

use std::f64::consts::PI;

/// Support of the Marchenko-Pastur law at load `kbar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpSupport {
    /// Lower edge of the continuous part, `(1 - √kbar)²`.
    pub a: f64,
    /// Upper edge of the continuous part, `(1 + √kbar)²`.
    pub b: f64,
    /// Point mass at zero, `max(0, 1 - kbar)`.
    pub zero_mass: f64,
}

impl MpSupport {
    pub fn new(kbar: f64) -> Self {
        assert!(kbar > 0.0, "kbar must be positive, got {kbar}");
        let root = kbar.sqrt();
        Self {
            a: (1.0 - root) * (1.0 - root),
            b: (1.0 + root) * (1.0 + root),
            zero_mass: (1.0 - kbar).max(0.0),
        }
    }
}

/// Continuous part of the Marchenko-Pastur density,
/// `√((x - a)(b - x)) / (2πx)` on `[a, b]` and zero elsewhere.
pub fn mp_density(kbar: f64, x: f64) -> f64 {
    let sup = MpSupport::new(kbar);
    if x < sup.a || x > sup.b || x <= 0.0 {
        return 0.0;
    }
    ((x - sup.a) * (sup.b - x)).sqrt() / (2.0 * PI * x)
}

/// Stieltjes transform `S(y) = ∫ dG(x) / (x - y)` of the full
/// Marchenko-Pastur law (zero atom included) for `y` strictly below the
/// continuous support, `y < a`, `y != 0`.
///
/// Closed form: of the two branches `(kbar - 1 - y ± √((y - kbar - 1)² -
/// 4 kbar)) / (2y)` the one continuous with `S(y) → 0⁻` as `y → -∞` is the
/// minus branch; it is evaluated here in the cancellation-free form
/// `2 / (kbar - 1 - y + √((kbar - 1 - y)² - 4y))`.
pub fn mp_stieltjes(kbar: f64, y: f64) -> Result<f64> {
    let sup = MpSupport::new(kbar);
    if y == 0.0 {
        return Err(TransformError::OutOfDomain(
            "mp_stieltjes is singular at y = 0".into(),
        ));
    }
    if y >= sup.a {
        return Err(TransformError::OutOfDomain(format!(
            "mp_stieltjes needs y < a = {}, got {y}",
            sup.a
        )));
    }
    let u = kbar - 1.0 - y;
    let disc = u * u - 4.0 * y;
    Ok(2.0 / (u + disc.sqrt()))
}

/// `w(α)` and `v(α)`, the roots of `z² - (1 + kbar + α) z + kbar = 0`.
///
/// `v` is computed as `kbar / w` so that `w·v = kbar` holds exactly.
pub(crate) fn lemma1_wv(kbar: f64, alpha: f64) -> (f64, f64) {
    let s = 1.0 + kbar + alpha;
    let r = (s * s - 4.0 * kbar).sqrt();
    let w = 0.5 * (s + r);
    (w, kbar / w)
}

/// Closed form of `∫ ln(x + α) dG(x)` over the Marchenko-Pastur law for
/// `kbar >= 1`:  `ln w(α) - (kbar - 1) ln(1 - v(α)/kbar) - v(α)`.
pub fn lemma1_log_integral(kbar: f64, alpha: f64) -> Result<f64> {
    if kbar < 1.0 {
        return Err(TransformError::OutOfDomain(format!(
            "lemma1_log_integral needs kbar >= 1, got {kbar}"
        )));
    }
    if alpha <= 0.0 {
        return Err(TransformError::OutOfDomain(format!(
            "lemma1_log_integral needs alpha > 0, got {alpha}"
        )));
    }
    let (w, v) = lemma1_wv(kbar, alpha);
    Ok(w.ln() - (kbar - 1.0) * (1.0 - v / kbar).ln() - v)
}
