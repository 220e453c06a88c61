//! Social free energy, occupation laws and stationarity conditions.
//!
//! Maximizing entropy production under the constraints on `N`, `W` and the
//! diversity entropy gives, per bin, `∂s/∂ν = βφ_BE(ω, λ) + α` where
//! `φ_BE(ω, λ) = ω + λ h_BE(ω)` is the social free energy per individual.
//! With `s = s_BE` this inverts in closed form to the Bose-Einstein law; the
//! `θ`-deformed entropy needs a numerical inversion.

use serde::{Deserialize, Serialize};

use crate::distribution::BenefitDistribution;
use crate::entropy::{h_be, h_mbg, ThetaParam};
use crate::error::{Error, Result};
use crate::root;
use crate::sum;

/// Model parameters with the derived chemical potential and temperature.
///
/// `α ≤ 0` is accepted, with the extreme-poverty fraction then undefined; see
/// [`FitParameters::extreme_poverty_defined`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitParameters {
    alpha: f64,
    beta: f64,
    lambda: f64,
    theta: ThetaParam,
}

impl FitParameters {
    pub fn new(alpha: f64, beta: f64, lambda: f64, theta: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha {alpha} is not finite")));
        }
        if !beta.is_finite() || beta == 0.0 {
            return Err(Error::Domain(format!("beta {beta} must be finite and non-zero")));
        }
        if !(lambda.is_finite() && lambda < 0.0) {
            return Err(Error::Domain(format!("lambda {lambda} must be negative")));
        }
        Ok(FitParameters {
            alpha,
            beta,
            lambda,
            theta: ThetaParam::new(theta)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> ThetaParam {
        self.theta
    }

    /// Chemical-potential counterpart `μ = −α/β`.
    pub fn mu(&self) -> f64 {
        -self.alpha / self.beta
    }

    /// Social temperature `1/β`.
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    /// `α > 0`: the fraction `1/(e^α − 1)` at `ω ≈ 0` is meaningful.
    pub fn extreme_poverty_defined(&self) -> bool {
        self.alpha > 0.0
    }

    /// `βφ_BE(ω, λ) + α`.
    pub fn argument(&self, omega: f64) -> Result<f64> {
        Ok(self.beta * phi_be(omega, self.lambda)? + self.alpha)
    }
}

/// `φ_BE(ω, λ) = ω + λ h_BE(ω)`.
pub fn phi_be(omega: f64, lambda: f64) -> Result<f64> {
    let h = h_be(omega)?;
    // keeps φ(0, λ) = 0 exact for every finite λ
    Ok(if omega == 0.0 { 0.0 } else { omega + lambda * h })
}

/// Classical free energy `φ_MBG(ω, λ) = ω(1 + λ ln ω)`.
pub fn phi_mbg(omega: f64, lambda: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega {omega} must be positive")));
    }
    Ok(omega * (1.0 + lambda * omega.ln()))
}

/// Classical poverty-peak formula `exp(1/λ)`.
///
/// This is the stationary point of `ω + λ h_MBG(ω)`, not of [`phi_mbg`]
/// (whose stationary point is `exp(−1 − 1/λ)`), so no peak identity is
/// claimed for the classical law.
pub fn mbg_peak(lambda: f64) -> Result<f64> {
    if !(lambda < 0.0) {
        return Err(Error::Domain(format!("lambda {lambda} must be negative")));
    }
    Ok((1.0 / lambda).exp())
}

/// Peak abscissa of the Bose-Einstein law, `ω_p = 1/(e^(−1/λ) − 1)`.
pub fn omega_p_from_lambda(lambda: f64) -> Result<f64> {
    if !(lambda < 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("lambda {lambda} must be negative")));
    }
    Ok(1.0 / (-1.0 / lambda).exp_m1())
}

/// Inverse of [`omega_p_from_lambda`]: `λ = −1/ln(1 + 1/ω_p)`.
pub fn lambda_from_omega_p(omega_p: f64) -> Result<f64> {
    if !(omega_p > 0.0 && omega_p.is_finite()) {
        return Err(Error::Domain(format!("omega_p {omega_p} must be positive")));
    }
    Ok(-1.0 / (1.0 / omega_p).ln_1p())
}

/// Bose-Einstein occupation `1/(e^t − 1)` for `t = βφ + α > 0`.
pub fn be_occupation(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::DivergentOccupation(t));
    }
    Ok(1.0 / t.exp_m1())
}

/// Fermi-Dirac occupation `1/(e^t + 1)`.
pub fn fd_occupation(t: f64) -> f64 {
    if t > 0.0 {
        let e = (-t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (t.exp() + 1.0)
    }
}

/// Maxwell-Boltzmann-Gibbs occupation `e^(−t)`.
pub fn mbg_occupation(t: f64) -> f64 {
    (-t).exp()
}

/// Bose-Einstein law for non-interacting individuals.
pub fn nu_be(omega: f64, params: &FitParameters) -> Result<f64> {
    be_occupation(params.argument(omega)?)
}

/// Fermi-Dirac law, for exclusive states such as jobs.
pub fn nu_fd(omega: f64, params: &FitParameters) -> Result<f64> {
    Ok(fd_occupation(params.argument(omega)?))
}

/// Classical law `exp(−[β φ_MBG(ω, λ) + α])`.
pub fn nu_mbg(omega: f64, params: &FitParameters) -> Result<f64> {
    Ok(mbg_occupation(params.beta * phi_mbg(omega, params.lambda)? + params.alpha))
}

/// Left-hand side of the stationarity condition, `∂s_θ/∂ν`:
/// `ln(1 + 1/ν)` at `θ = 0`, otherwise `((1−θ)/θ)[ν^(−θ) − (1+ν)^(−θ)]`.
pub fn stationarity_lhs(nu: f64, theta: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("nu {nu} must be positive")));
    }
    if !theta.is_finite() {
        return Err(Error::Domain(format!("theta {theta} is not finite")));
    }
    if theta == 0.0 {
        return Ok((1.0 / nu).ln_1p());
    }
    // ν^(−θ) − (1+ν)^(−θ) = (1+ν)^(−θ) · expm1(θ ln(1 + 1/ν))
    let factor = (-theta * nu.ln_1p()).exp() * (theta * (1.0 / nu).ln_1p()).exp_m1();
    Ok((1.0 - theta) / theta * factor)
}

/// Supremum of [`stationarity_lhs`] over `ν > 0`: unbounded for `θ ≥ 0`,
/// `(1 − θ)/|θ|` for `θ < 0`.
pub fn stationarity_supremum(theta: f64) -> f64 {
    if theta >= 0.0 {
        f64::INFINITY
    } else {
        (1.0 - theta) / -theta
    }
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// `ln |e^x − 1|`.
fn ln_abs_expm1(x: f64) -> f64 {
    if x > 1.0 {
        x + (-(-x).exp()).ln_1p()
    } else if x < -1.0 {
        (-x.exp()).ln_1p()
    } else {
        x.exp_m1().abs().ln()
    }
}

/// [`stationarity_lhs`] at `ν = e^u`, finite for every finite `u`.
fn stationarity_lhs_log(u: f64, theta: f64) -> f64 {
    let log_ratio = softplus(-u); // ln(1 + 1/ν)
    if theta == 0.0 {
        return log_ratio;
    }
    let log_one_plus_nu = softplus(u);
    (1.0 - theta) / theta.abs() * (-theta * log_one_plus_nu + ln_abs_expm1(theta * log_ratio)).exp()
}

/// Largest `|ln ν|` explored by the inversion.
const LOG_NU_LIMIT: f64 = 700.0;

/// Solves `stationarity_lhs(ν, θ) = t` for `ν > 0`.
///
/// The map is strictly decreasing in `ν` for `θ ∈ (−1, 1)`, with range
/// `(0, stationarity_supremum(θ))`, so the root is unique when it exists.
pub fn invert_stationarity(t: f64, theta: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::DivergentOccupation(t));
    }
    let theta = ThetaParam::new(theta)?.value();
    if theta == 0.0 {
        return be_occupation(t);
    }
    let supremum = stationarity_supremum(theta);
    if t >= supremum {
        return Err(Error::NoSolution { target: t, supremum });
    }
    let residual = |u: f64| stationarity_lhs_log(u.clamp(-LOG_NU_LIMIT, LOG_NU_LIMIT), theta) - t;
    // start from the non-interacting solution ν = 1/(e^t − 1)
    let u0 = if t > 30.0 { -t } else { -t.exp_m1().ln() };
    let bracket = root::expand_bracket(residual, u0, 1.0, 12)
        .ok_or(Error::NoSolution { target: t, supremum })?;
    let u = root::solve_bracketed(residual, bracket, 1e-13 * t.max(1.0), 400);
    Ok(u.clamp(-LOG_NU_LIMIT, LOG_NU_LIMIT).exp())
}

/// Interacting occupation law: the `ν` with `∂s_θ/∂ν = βφ_BE(ω, λ) + α`.
pub fn nu_theta(omega: f64, params: &FitParameters) -> Result<f64> {
    invert_stationarity(params.argument(omega)?, params.theta.value())
}

/// Fraction of the population at `ω ≈ 0`, `1/(e^α − 1)`.
pub fn extreme_poverty_fraction(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("alpha {alpha} must be positive")));
    }
    Ok(1.0 / alpha.exp_m1())
}

/// Population mean of `φ_BE(ω_k, λ)`, to compare with the regressed `1/β`.
pub fn temperature_check(dist: &BenefitDistribution, lambda: f64) -> f64 {
    let weighted = sum::sum(
        dist.weights()
            .zip(dist.omega())
            .map(|(m, &w)| m * phi_be(w, lambda).expect("omega is non-negative")),
    );
    weighted / sum::sum(dist.weights())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeVerdict {
    ShortRange,
    LongRange,
}

/// Range of correlations implied by `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteractionRange {
    pub theta: f64,
    pub dimensionality: Option<u32>,
    pub verdict: RangeVerdict,
    /// About `1/(θd)` interactions per individual for short-range correlations.
    pub interactions_per_individual: Option<f64>,
}

/// Short-range correlations iff `θ > 0`.
pub fn classify_interaction(theta: f64, dimensionality: Option<u32>) -> Result<InteractionRange> {
    if !(theta > -1.0 && theta.is_finite()) {
        return Err(Error::Domain(format!("theta {theta} must exceed -1")));
    }
    if dimensionality == Some(0) {
        return Err(Error::Domain("dimensionality must be positive".into()));
    }
    let short = theta > 0.0;
    Ok(InteractionRange {
        theta,
        dimensionality,
        verdict: if short {
            RangeVerdict::ShortRange
        } else {
            RangeVerdict::LongRange
        },
        interactions_per_individual: match (short, dimensionality) {
            (true, Some(d)) => Some(1.0 / (theta * d as f64)),
            _ => None,
        },
    })
}

/// Convenience for the classical diversity kernel used by [`phi_mbg`]'s
/// peak formula.
pub fn phi_mbg_constraint_form(omega: f64, lambda: f64) -> Result<f64> {
    Ok(omega + lambda * h_mbg(omega)?)
}
