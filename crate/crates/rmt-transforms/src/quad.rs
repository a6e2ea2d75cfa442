//! Adaptive Gauss-Kronrod quadrature.
//!
//! A 7-point Gauss / 15-point Kronrod pair with recursive interval
//! bisection. Used as the numerical oracle for the closed forms in this
//! crate; [`integrate_mp_weighted`] applies the substitution
//! `x = a + (b - a) sin²θ` so the square-root edges of the Marchenko-Pastur
//! density are integrated smoothly.

use crate::mp::{mp_density, MpSupport};

// Kronrod abscissae (positive half, descending) and weights for K15,
// plus the embedded G7 weights. QUADPACK values.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    (value, err)
}

/// Integrates `f` over `[a, b]` by adaptive bisection to absolute
/// tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
        let (value, err) = gk15(f, a, b);
        if err <= tol || depth >= 48 {
            return value;
        }
        let mid = 0.5 * (a + b);
        recurse(f, a, mid, 0.5 * tol, depth + 1) + recurse(f, mid, b, 0.5 * tol, depth + 1)
    }
    recurse(&f, a, b, tol, 0)
}

/// Integrates `g(x)` against the continuous Marchenko-Pastur density at
/// load `kbar` (the `max(0, 1 - kbar)` zero atom is not included).
pub fn integrate_mp_weighted(kbar: f64, g: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let sup = MpSupport::new(kbar);
    let (a, b) = (sup.a, sup.b);
    // x = a + (b - a) sin²θ turns the sqrt edge factors into sin·cos.
    let integrand = move |theta: f64| {
        let s = theta.sin();
        let c = theta.cos();
        let x = a + (b - a) * s * s;
        if x == 0.0 {
            return 0.0;
        }
        g(x) * mp_density(kbar, x) * 2.0 * (b - a) * s * c
    };
    integrate(integrand, 0.0, std::f64::consts::FRAC_PI_2, tol)
}
