//! Eta and Shannon transforms of `S A S†` spectra.

use crate::profile::PowerProfile;
use crate::{Result, TransformError};

const RESIDUAL_TOL: f64 = 1e-12;
const MAX_ITER: usize = 10_000;
const DAMPING: f64 = 0.5;

/// Eta transform of a discrete profile: `Σ wᵢ / (1 + γ aᵢ)`.
pub fn eta_atoms(profile: &PowerProfile, gamma: f64) -> f64 {
    profile
        .atoms()
        .iter()
        .map(|&(a, w)| w / (1.0 + gamma * a))
        .sum()
}

/// Derivative `dη/dγ = -Σ wᵢ aᵢ / (1 + γ aᵢ)²`.
pub fn eta_atoms_deriv(profile: &PowerProfile, gamma: f64) -> f64 {
    -profile
        .atoms()
        .iter()
        .map(|&(a, w)| {
            let denom = 1.0 + gamma * a;
            w * a / (denom * denom)
        })
        .sum::<f64>()
}

/// Shannon transform of a discrete profile: `Σ wᵢ ln(1 + γ aᵢ)` (natural log).
pub fn shannon_atoms(profile: &PowerProfile, gamma: f64) -> f64 {
    profile
        .atoms()
        .iter()
        .map(|&(a, w)| w * (1.0 + gamma * a).ln())
        .sum()
}

/// Eta transform `Θ(x)` of the `S A S†` spectrum at `x >= 0`, the solution
/// of the load fixed point `kbar = (1 - Θ) / (1 - η_A(x Θ))` on
/// `(max(0, 1 - kbar), 1]`.
///
/// The residual `|kbar (1 - η_A(xΘ)) - (1 - Θ)|` of the returned value is
/// at most `1e-12`. Solved by damped fixed-point iteration inside a
/// maintained sign bracket, falling back to bisection whenever the damped
/// step leaves the bracket, with a final Newton polish.
pub fn theta_fixed_point(profile: &PowerProfile, kbar: f64, x: f64) -> Result<f64> {
    if !(kbar > 0.0) {
        return Err(TransformError::OutOfDomain(format!(
            "kbar must be positive, got {kbar}"
        )));
    }
    if !(x >= 0.0) {
        return Err(TransformError::OutOfDomain(format!(
            "theta_fixed_point needs x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }

    // t(Θ) = Θ - 1 + kbar (1 - η_A(xΘ)) is strictly increasing with
    // t(lo) < 0 < t(1) on the bracket.
    let t = |theta: f64| theta - 1.0 + kbar * (1.0 - eta_atoms(profile, x * theta));
    let mut lo = (1.0 - kbar).max(0.0);
    let mut hi = 1.0;
    let mut theta = 0.5 * (lo + hi);
    let mut resid = t(theta);
    let mut iterations = 0;
    while resid.abs() > RESIDUAL_TOL && iterations < MAX_ITER {
        if resid > 0.0 {
            hi = theta;
        } else {
            lo = theta;
        }
        let damped = theta - DAMPING * resid;
        theta = if damped > lo && damped < hi {
            damped
        } else {
            0.5 * (lo + hi)
        };
        resid = t(theta);
        iterations += 1;
    }
    // Newton polish for relative accuracy when Θ is tiny (large x).
    for _ in 0..4 {
        let slope = 1.0 - kbar * x * eta_atoms_deriv(profile, x * theta);
        let step = resid / slope;
        let next = theta - step;
        if next > 0.0 && next <= 1.0 {
            theta = next;
            resid = t(theta);
        }
    }
    if resid.abs() > RESIDUAL_TOL {
        return Err(TransformError::NoConvergence {
            context: "theta_fixed_point",
            residual: resid.abs(),
            iterations,
        });
    }
    Ok(theta)
}

/// Shannon transform of the `S A S†` spectrum at `w >= 0`:
/// `kbar ν_A(wΘ) - ln Θ + Θ - 1` with `Θ = Θ(w)`.
pub fn shannon_sas(profile: &PowerProfile, kbar: f64, w: f64) -> Result<f64> {
    if !(w >= 0.0) {
        return Err(TransformError::OutOfDomain(format!(
            "shannon_sas needs w >= 0, got {w}"
        )));
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    let theta = theta_fixed_point(profile, kbar, w)?;
    Ok(kbar * shannon_atoms(profile, w * theta) - theta.ln() + theta - 1.0)
}

/// Load carried by the strictly positive atoms.
fn nonzero_load(profile: &PowerProfile, kbar: f64) -> f64 {
    kbar * (1.0 - profile.zero_mass())
}

// F(Θ) = 1 - kbar (1 - η_A(-Θ/d)) - Θ on Θ < 0. Convex, F(0) = 1, and for
// d below the support edge it has two negative roots; the one nearest zero
// is the analytic continuation of the eta transform, Θ_d = η_SAS(-1/d).
fn below_edge_f(profile: &PowerProfile, kbar: f64, d: f64, theta: f64) -> f64 {
    1.0 - kbar * (1.0 - eta_atoms(profile, -theta / d)) - theta
}

// Golden-section minimum of the convex F over [lo, 0]. Returns (Θ, F(Θ)).
fn below_edge_min(profile: &PowerProfile, kbar: f64, d: f64) -> (f64, f64) {
    // The minimizer satisfies (kbar/d)·Σ w a/(1+ya)² = 1 which forces
    // -Θ <= kbar/4 (since w a/(1+ya)² <= 1/(4y)); pad by one.
    let mut a = -(0.25 * kbar + d + 1.0);
    let mut b = 0.0;
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = below_edge_f(profile, kbar, d, x1);
    let mut f2 = below_edge_f(profile, kbar, d, x2);
    for _ in 0..120 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = below_edge_f(profile, kbar, d, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = below_edge_f(profile, kbar, d, x2);
        }
        if b - a < 1e-14 * (1.0 + kbar) {
            break;
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn theta_below_edge(profile: &PowerProfile, kbar: f64, d: f64) -> Result<f64> {
    let (theta_min, f_min) = below_edge_min(profile, kbar, d);
    if f_min > 0.0 {
        return Err(TransformError::OutOfDomain(format!(
            "no continuation at d = {d}: at or above the support edge"
        )));
    }
    // Root nearest zero: F increases from f_min to F(0) = 1 on [Θ_min, 0].
    let mut lo = theta_min;
    let mut hi = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if below_edge_f(profile, kbar, d, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * (1.0 + kbar) {
            break;
        }
    }
    let mut theta = 0.5 * (lo + hi);
    for _ in 0..3 {
        let y = -theta / d;
        let slope = (kbar / d) * (-eta_atoms_deriv(profile, y)) - 1.0;
        if slope.abs() < 1e-300 {
            break;
        }
        let next = theta - below_edge_f(profile, kbar, d, theta) / slope;
        if next > theta_min && next < 0.0 {
            theta = next;
        }
    }
    Ok(theta)
}

/// Infimum of the `S A S†` spectral support.
///
/// Zero whenever the nonzero-power load `kbar (1 - zero_mass)` is at most
/// one (the spectrum then has mass at, or reaching down to, the origin).
/// Otherwise the edge is located by bisection on `d` of the predicate "the
/// real branch `Θ_d < 0` of the eta transform still exists at `-1/d`"; the
/// returned value is the largest verified-continuable `d` so callers may
/// evaluate [`log_moment_below_edge`] anywhere up to and including it.
pub fn sas_support_infimum(profile: &PowerProfile, kbar: f64) -> Result<f64> {
    if !(kbar > 0.0) {
        return Err(TransformError::OutOfDomain(format!(
            "kbar must be positive, got {kbar}"
        )));
    }
    if nonzero_load(profile, kbar) <= 1.0 {
        return Ok(0.0);
    }
    let has_branch = |d: f64| below_edge_min(profile, kbar, d).1 <= 0.0;
    let mut lo = 0.0;
    let mut hi = kbar * profile.mean_power();
    let mut expansions = 0;
    while has_branch(hi) {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 60 {
            return Err(TransformError::NoConvergence {
                context: "sas_support_infimum bracket expansion",
                residual: hi,
                iterations: expansions,
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if has_branch(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi.max(1.0) {
            break;
        }
    }
    Ok(lo)
}

/// Log moment `L(d) = ∫ ln(τ - d) dG(τ)` of the `S A S†` spectrum for an
/// evaluation point `0 <= d <=` [`sas_support_infimum`], which requires the
/// nonzero-power load to exceed one.
///
/// For `d > 0` this is the real continuation of the Shannon identity,
/// `L(d) = ln d + kbar ν_A(-Θ_d/d) - ln(-Θ_d) + Θ_d - 1` with `Θ_d < 0`;
/// at `d = 0` it reduces to `-ln y₀ + kbar ν_A(y₀) - 1` where
/// `η_A(y₀) = 1 - 1/kbar`.
pub fn log_moment_below_edge(profile: &PowerProfile, kbar: f64, d: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(TransformError::OutOfDomain(format!(
            "log_moment_below_edge needs d >= 0, got {d}"
        )));
    }
    if nonzero_load(profile, kbar) <= 1.0 {
        return Err(TransformError::OutOfDomain(format!(
            "log moment diverges: nonzero-power load {} <= 1",
            nonzero_load(profile, kbar)
        )));
    }
    if d == 0.0 {
        let target = 1.0 - 1.0 / kbar;
        // η_A is strictly decreasing from 1 to the zero-power mass, so the
        // level crossing is bracketed and unique.
        let g = |y: f64| eta_atoms(profile, y) - target;
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut expansions = 0;
        while g(hi) > 0.0 {
            lo = hi;
            hi *= 2.0;
            expansions += 1;
            if expansions > 200 {
                return Err(TransformError::NoConvergence {
                    context: "log_moment_below_edge level crossing",
                    residual: g(hi),
                    iterations: expansions,
                });
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 * hi {
                break;
            }
        }
        let mut y0 = 0.5 * (lo + hi);
        for _ in 0..3 {
            let slope = eta_atoms_deriv(profile, y0);
            if slope == 0.0 {
                break;
            }
            let next = y0 - g(y0) / slope;
            if next > 0.0 {
                y0 = next;
            }
        }
        return Ok(-y0.ln() + kbar * shannon_atoms(profile, y0) - 1.0);
    }
    let theta = theta_below_edge(profile, kbar, d)?;
    let y = -theta / d;
    Ok(d.ln() + kbar * shannon_atoms(profile, y) - (-theta).ln() + theta - 1.0)
}
