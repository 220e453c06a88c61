//! Noiseless synthetic distributions generated from known parameters.
//!
//! The `ω` grid contains the exact peak abscissa `ω_p(λ)`, so a fit of the
//! generated data can recover every parameter. State counts take one value
//! below `ω = 1` and another above, chosen so that the population-weighted
//! mean of `ω` is exactly 1.

use crate::distribution::BenefitDistribution;
use crate::error::{Error, Result};
use crate::laws::{omega_p_from_lambda, phi_be, stationarity_supremum, nu_theta, FitParameters};

/// Largest argument `βφ + α` placed on the grid.
pub const MAX_ARGUMENT: f64 = 25.0;
/// Smallest argument allowed at the peak.
const MIN_ARGUMENT: f64 = 1e-3;

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Argument ceiling: bounded by [`MAX_ARGUMENT`] and, for `θ < 0`, kept
/// below the supremum of the stationarity map.
fn argument_cap(theta: f64) -> f64 {
    MAX_ARGUMENT.min(0.9 * stationarity_supremum(theta))
}

/// `bins` grid points spanning the range where `0 < βφ + α < cap`, with
/// `ω_p(λ)` as one of the points.
pub fn recovery_grid(params: &FitParameters, bins: usize) -> Result<Vec<f64>> {
    if bins < 8 {
        return Err(Error::InvalidInput(format!("need at least 8 bins, got {bins}")));
    }
    if !(params.beta() > 0.0) {
        return Err(Error::InvalidInput("synthetic data needs beta > 0".into()));
    }
    let cap = argument_cap(params.theta().value());
    let t = |w: f64| params.argument(w).expect("omega is non-negative");
    let omega_p = omega_p_from_lambda(params.lambda())?;
    let t_min = t(omega_p);
    if !(t_min > MIN_ARGUMENT) {
        return Err(Error::DivergentOccupation(t_min));
    }
    if !(t(1.0) < cap) {
        return Err(Error::InvalidInput(format!(
            "argument {} at omega = 1 exceeds the cap {cap}",
            t(1.0)
        )));
    }

    let mut hi = 2.0 * omega_p.max(1.0);
    while t(hi) < cap {
        hi *= 2.0;
    }
    let omega_hi = bisect(|w| t(w) - cap, omega_p.max(1.0), hi);
    let omega_lo = if t(0.0) < cap {
        0.02 * omega_p.min(1.0)
    } else {
        bisect(|w| t(w) - cap, 0.0, omega_p)
    };

    let span = omega_hi - omega_lo;
    let left = (((omega_p - omega_lo) / span * (bins - 1) as f64).round() as usize).clamp(1, bins - 2);
    let right = bins - 1 - left;
    let step_left = (omega_p - omega_lo) / left as f64;
    let step_right = (omega_hi - omega_p) / right as f64;
    let mut grid: Vec<f64> = (0..left).map(|j| omega_p - step_left * (left - j) as f64).collect();
    grid.push(omega_p);
    grid.extend((1..=right).map(|j| omega_p + step_right * j as f64));
    Ok(grid)
}

/// State counts `a` below `ω = 1` and `b` from `ω = 1` up, solving
/// `Σ G_k ν_k (ω_k − 1) = 0`. The smaller of the two is 100.
pub fn balanced_states(omega: &[f64], nu: &[f64]) -> Result<Vec<f64>> {
    let below: f64 = omega.iter().zip(nu).filter(|(w, _)| **w < 1.0).map(|(w, v)| v * (1.0 - w)).sum();
    let above: f64 = omega.iter().zip(nu).filter(|(w, _)| **w >= 1.0).map(|(w, v)| v * (w - 1.0)).sum();
    if !(below > 0.0 && above > 0.0) {
        return Err(Error::InvalidInput(
            "occupied bins must lie on both sides of omega = 1".into(),
        ));
    }
    let scale = 100.0 / below.min(above);
    Ok(omega
        .iter()
        .map(|&w| if w < 1.0 { above * scale } else { below * scale })
        .collect())
}

/// Builds a distribution from a grid and occupations via [`balanced_states`].
pub fn from_grid(omega: Vec<f64>, nu: Vec<f64>, w_bar: f64) -> Result<BenefitDistribution> {
    let g = balanced_states(&omega, &nu)?;
    BenefitDistribution::from_occupations(omega, nu, g, w_bar)
}

/// Noiseless data following `ν_θ(ω)` on [`recovery_grid`].
pub fn synthesize(params: &FitParameters, bins: usize, w_bar: f64) -> Result<BenefitDistribution> {
    let omega = recovery_grid(params, bins)?;
    let nu = omega
        .iter()
        .map(|&w| nu_theta(w, params))
        .collect::<Result<Vec<_>>>()?;
    from_grid(omega, nu, w_bar)
}

/// Linearized coordinates `(φ_BE(ω, λ), y)` on a grid, for checks that
/// work directly on the scatter.
pub fn free_energy_axis(omega: &[f64], lambda: f64) -> Result<Vec<f64>> {
    omega.iter().map(|&w| phi_be(w, lambda)).collect()
}
