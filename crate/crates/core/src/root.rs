//! Bracketing root finder for monotone scalar maps.

/// Grows `[x0 - step, x0 + step]` geometrically until `f` changes sign.
/// Returns `(lo, hi, f(lo), f(hi))` with `f(lo)` and `f(hi)` of opposite sign.
pub(crate) fn expand_bracket(
    f: impl Fn(f64) -> f64,
    x0: f64,
    mut step: f64,
    max_doublings: usize,
) -> Option<(f64, f64, f64, f64)> {
    let f0 = f(x0);
    if f0 == 0.0 {
        return Some((x0, x0, f0, f0));
    }
    for _ in 0..max_doublings {
        let (lo, hi) = (x0 - step, x0 + step);
        let (f_lo, f_hi) = (f(lo), f(hi));
        if f_lo.signum() != f0.signum() && !f_lo.is_nan() {
            return Some((lo, x0, f_lo, f0));
        }
        if f_hi.signum() != f0.signum() && !f_hi.is_nan() {
            return Some((x0, hi, f0, f_hi));
        }
        step *= 2.0;
    }
    None
}

/// Regula falsi safeguarded by bisection: whenever a step fails to halve the
/// bracket the next one bisects. Stops when `|f| <= f_tol` or the bracket
/// collapses to adjacent floats, returning the endpoint of smallest `|f|`.
pub(crate) fn solve_bracketed(
    f: impl Fn(f64) -> f64,
    (mut a, mut b, mut fa, mut fb): (f64, f64, f64, f64),
    f_tol: f64,
    max_iter: usize,
) -> f64 {
    let best = |a: f64, fa: f64, b: f64, fb: f64| if fa.abs() <= fb.abs() { a } else { b };
    let mut bisect = false;
    for _ in 0..max_iter {
        if fa.abs() <= f_tol {
            return a;
        }
        if fb.abs() <= f_tol {
            return b;
        }
        let width = b - a;
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            return best(a, fa, b, fb);
        }
        let secant = a - fa * (b - a) / (fb - fa);
        let x = if bisect || !(secant > a.min(b) && secant < a.max(b)) {
            mid
        } else {
            secant
        };
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        bisect = (b - a).abs() > 0.5 * width.abs();
    }
    best(a, fa, b, fb)
}
