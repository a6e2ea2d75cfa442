//! Scalar bisection and golden-section helpers shared by the solvers.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

pub(crate) struct RootOutcome {
    pub x: f64,
    pub f_x: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

/// Bisection for `f(x) = 0` on a bracket with `f(lo) < 0 < f(hi)` or the
/// reverse. Stops once `|f| <= f_tol` or the bracket width drops below
/// `x_tol`. `f` may fail, in which case the error is propagated.
pub(crate) fn bisect<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut lo: f64,
    mut hi: f64,
    f_lo: f64,
    x_tol: f64,
    f_tol: f64,
    max_iter: usize,
) -> Result<RootOutcome, E> {
    let rising = f_lo < 0.0;
    let mut x = 0.5 * (lo + hi);
    let mut f_x = f(x)?;
    let mut iterations = 1;
    while f_x.abs() > f_tol && hi - lo > x_tol && iterations < max_iter {
        if (f_x < 0.0) == rising {
            lo = x;
        } else {
            hi = x;
        }
        x = 0.5 * (lo + hi);
        f_x = f(x)?;
        iterations += 1;
    }
    Ok(RootOutcome {
        x,
        f_x,
        iterations,
        bracket: (lo, hi),
    })
}

/// Golden-section maximization of a concave `f` on `[a, b]`.
///
/// Concavity makes the scheme valid even when the maximum sits on an
/// endpoint. Returns the best evaluated point and its value.
pub(crate) fn golden_max<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut a: f64,
    mut b: f64,
    x_tol: f64,
) -> Result<(f64, f64), E> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..200 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        }
        let cand = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        if cand.1 > best.1 {
            best = cand;
        }
        if b - a < x_tol {
            break;
        }
    }
    // Endpoints are never sampled by the golden scheme itself; a concave
    // function maximized at the boundary still converges there, but probe
    // the surviving bracket ends once for the value.
    for x in [a, b] {
        if let Ok(v) = f(x) {
            if v > best.1 {
                best = (x, v);
            }
        }
    }
    Ok(best)
}
