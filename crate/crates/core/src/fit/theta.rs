//! One-dimensional search for the interaction parameter.
//!
//! For fixed abscissae `x_k = φ_BE(ω_k, λ)` the ordinate
//! `y_k(θ) = ∂s_θ/∂ν(ν_k)` moves with `θ`, and the best `θ` is the one that
//! makes the scatter most nearly a straight line of positive slope.

use crate::entropy::ThetaParam;
use crate::error::{Error, Result};
use crate::laws::stationarity_lhs;

use super::regression::{least_squares, LineFit};

/// Sub-intervals searched independently before keeping the best optimum.
pub const SUBINTERVALS: usize = 8;
/// Final bracket width of the polishing pass.
const POLISH_TOL: f64 = 1e-12;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of the `θ` search with the line fitted at the optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEstimate {
    pub theta: ThetaParam,
    pub line: LineFit,
}

impl ThetaEstimate {
    pub fn pearson_r(&self) -> f64 {
        self.line.pearson_r
    }
}

pub(crate) fn linearize(nu: &[f64], theta: f64) -> Result<Vec<f64>> {
    nu.iter().map(|&v| stationarity_lhs(v, theta)).collect()
}

fn line_at(x: &[f64], nu: &[f64], theta: f64) -> Result<LineFit> {
    least_squares(x, &linearize(nu, theta)?, None)
}

/// Strict preference: lower `1 − r`, then smaller `|θ|`.
fn better(a: (f64, f64), b: (f64, f64)) -> bool {
    a.1 < b.1 || (a.1 == b.1 && a.0.abs() < b.0.abs())
}

/// Golden-section minimization of `f` on `[a, b]` until the bracket is
/// narrower than `tol`. Returns the best evaluated `(θ, f(θ))`.
fn golden(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if better((c, fc), (d, fd)) {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if better((d, fd), (c, fc)) {
        (d, fd)
    } else {
        (c, fc)
    }
}

/// Maximizes the Pearson correlation of `(x_k, y_k(θ))` over `range`.
///
/// Each of [`SUBINTERVALS`] equal pieces of the range is searched to `tol`,
/// `θ = 0` is always a candidate, and the winner is refined once more on a
/// bracket of width `2 tol` down to `1e-12`.
pub fn search_theta(x: &[f64], nu: &[f64], range: (f64, f64), tol: f64) -> Result<ThetaEstimate> {
    if x.len() != nu.len() {
        return Err(Error::InvalidInput("abscissae and occupations differ in length".into()));
    }
    if x.len() < 3 {
        return Err(Error::InsufficientData { needed: 3, got: x.len() });
    }
    let (lo, hi) = range;
    ThetaParam::new(lo)?;
    ThetaParam::new(hi)?;
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "theta range [{lo}, {hi}] with tolerance {tol} is empty"
        )));
    }
    // singular abscissae do not depend on θ
    line_at(x, nu, 0.0)?;

    let objective = |theta: f64| line_at(x, nu, theta).map_or(f64::INFINITY, |l| l.deficit());
    let width = (hi - lo) / SUBINTERVALS as f64;
    let mut best = if lo <= 0.0 && hi >= 0.0 {
        (0.0, objective(0.0))
    } else {
        (lo, objective(lo))
    };
    for i in 0..SUBINTERVALS {
        let a = lo + width * i as f64;
        let b = if i + 1 == SUBINTERVALS { hi } else { a + width };
        let candidate = golden(&objective, a, b, tol);
        if better(candidate, best) {
            best = candidate;
        }
    }

    let polished = golden(
        &objective,
        (best.0 - tol).max(lo),
        (best.0 + tol).min(hi),
        POLISH_TOL,
    );
    if better(polished, best) {
        best = polished;
    }
    let theta = ThetaParam::new(best.0)?;
    Ok(ThetaEstimate {
        theta,
        line: line_at(x, nu, best.0)?,
    })
}
