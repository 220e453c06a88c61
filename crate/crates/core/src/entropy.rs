//! Entropy functionals.
//!
//! Two Bose-Einstein entropies describe a society: the diversity entropy of
//! the benefit allocation, `H = Σ G_k ν_k h_BE(ω_k)`, and the entropy
//! production of individuals over states, `S = Σ G_k s_BE(ν_k)`. Interactions
//! deform logarithms into quasi-logarithms `ln_θ`.

use serde::{Deserialize, Serialize};

use crate::distribution::BenefitDistribution;
use crate::error::{Error, Result};
use crate::sum;

/// Interaction parameter `θ = δ/d − 1`, restricted to the fit range `(−1, 1)`.
/// `θ = 0` is the non-interacting, logarithmic limit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ThetaParam(f64);

impl ThetaParam {
    pub const ZERO: ThetaParam = ThetaParam(0.0);

    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() && theta > -1.0 && theta < 1.0 {
            Ok(ThetaParam(theta))
        } else {
            Err(Error::Domain(format!("theta {theta} outside (-1, 1)")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ThetaParam {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        ThetaParam::new(v)
    }
}

impl From<ThetaParam> for f64 {
    fn from(t: ThetaParam) -> f64 {
        t.0
    }
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} = {x} must be positive")))
    }
}

fn check_non_negative(x: f64, what: &str) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} = {x} must be non-negative")))
    }
}

/// Quasi-logarithm `ln_θ(x) = (1 − x^(−θ)) / θ`, with `ln_0 = ln`.
pub fn qlog(x: f64, theta: f64) -> Result<f64> {
    check_positive(x, "qlog argument")?;
    Ok(qlog_unchecked(x, theta))
}

pub(crate) fn qlog_unchecked(x: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        x.ln()
    } else {
        // 1 - x^(-θ) = -expm1(-θ ln x)
        -(-theta * x.ln()).exp_m1() / theta
    }
}

/// Expands `ln_θ(Π p_i)` over the single-factor quasi-logarithms:
/// `Σ_k (−θ)^(k−1) e_k(ln_θ p_1, …, ln_θ p_n)` with `e_k` the elementary
/// symmetric polynomials. Three factors give the familiar
/// singles + `(−θ)`·pairs + `θ²`·triple form.
pub fn qlog_product_expansion(factors: &[f64], theta: f64) -> Result<f64> {
    let logs = factors
        .iter()
        .map(|&p| qlog(p, theta))
        .collect::<Result<Vec<_>>>()?;
    // e[k] accumulates the k-th elementary symmetric polynomial
    let mut e = vec![0.0; logs.len() + 1];
    e[0] = 1.0;
    for (i, a) in logs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] += a * e[k - 1];
        }
    }
    let mut total = 0.0;
    let mut coupling = 1.0;
    for ek in &e[1..] {
        total += coupling * ek;
        coupling *= -theta;
    }
    Ok(total)
}

/// `(1 + x) ln(1 + x) − x ln x`, zero at `x = 0`.
fn be_entropy_kernel(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (1.0 + x) * x.ln_1p() - x * x.ln()
    }
}

/// Group diversity entropy `h_BE(ω) = (1 + ω) ln(1 + ω) − ω ln ω`.
pub fn h_be(omega: f64) -> Result<f64> {
    check_non_negative(omega, "omega")?;
    Ok(be_entropy_kernel(omega))
}

/// Entropy production per state `s_BE(ν)`; same form as [`h_be`].
pub fn s_be(nu: f64) -> Result<f64> {
    check_non_negative(nu, "nu")?;
    Ok(be_entropy_kernel(nu))
}

/// `θ`-deformed entropy production `(1 + ν) ln_θ(1 + ν) − ν ln_θ ν`.
pub fn s_theta(nu: f64, theta: f64) -> Result<f64> {
    check_non_negative(nu, "nu")?;
    if nu == 0.0 {
        return Ok(0.0);
    }
    if theta == 0.0 {
        return Ok(be_entropy_kernel(nu));
    }
    Ok((1.0 + nu) * qlog_unchecked(1.0 + nu, theta) - nu * qlog_unchecked(nu, theta))
}

/// Classical diversity kernel `h_MBG(ω) = ω(1 − ln ω)`, zero at `ω = 0`.
pub fn h_mbg(omega: f64) -> Result<f64> {
    check_non_negative(omega, "omega")?;
    Ok(if omega == 0.0 { 0.0 } else { omega * (1.0 - omega.ln()) })
}

/// Classical entropy production per state `s_MBG(ν) = ν(1 − ln ν)`.
pub fn s_mbg(nu: f64) -> Result<f64> {
    check_non_negative(nu, "nu")?;
    Ok(if nu == 0.0 { 0.0 } else { nu * (1.0 - nu.ln()) })
}

/// `H_BE = Σ G_k ν_k h_BE(ω_k)`.
pub fn big_h_be(dist: &BenefitDistribution) -> f64 {
    sum::sum(dist.weights().zip(dist.omega()).map(|(m, &w)| m * be_entropy_kernel(w)))
}

/// `S_BE = Σ G_k s_BE(ν_k)`.
pub fn big_s_be(dist: &BenefitDistribution) -> f64 {
    sum::sum(dist.g().iter().zip(dist.nu()).map(|(g, &v)| g * be_entropy_kernel(v)))
}

/// `H_MBG = Σ G_k ν_k ω_k (1 − ln ω_k)`.
pub fn big_h_mbg(dist: &BenefitDistribution) -> f64 {
    sum::sum(
        dist.weights()
            .zip(dist.omega())
            .map(|(m, &w)| m * h_mbg(w).expect("omega is non-negative")),
    )
}

/// `S_MBG = Σ G_k ν_k (1 − ln ν_k)`.
pub fn big_s_mbg(dist: &BenefitDistribution) -> f64 {
    sum::sum(
        dist.g()
            .iter()
            .zip(dist.nu())
            .map(|(g, &v)| g * s_mbg(v).expect("nu is non-negative")),
    )
}

/// Diversity entropy, its equality maximum, the redundancy index and welfare.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    /// `H_BE` of the observed allocation.
    pub entropy: f64,
    /// `H_BE` with every `ω_k = 1` and the same population weights.
    pub entropy_max: f64,
    /// Redundancy `1 − H / H_max`, in `[0, 1]`.
    pub index: f64,
    /// Welfare `w̄ (1 − I)` in benefit units per individual.
    pub welfare: f64,
}

impl InequalityReport {
    /// The inequality index is the information-theoretic redundancy.
    pub fn redundancy(&self) -> f64 {
        self.index
    }
}

/// Redundancy-based inequality index and the associated welfare.
pub fn inequality_index(dist: &BenefitDistribution) -> InequalityReport {
    let weights: Vec<f64> = dist.weights().collect();
    inequality_from_parts(&weights, dist.omega(), dist.w_bar())
}

/// Order-independent core of [`inequality_index`]: population weights
/// `G_k ν_k` and normalized benefits in any order.
pub fn inequality_from_parts(weights: &[f64], omega: &[f64], w_bar: f64) -> InequalityReport {
    let entropy = sum::sum(weights.iter().zip(omega).map(|(m, &w)| m * be_entropy_kernel(w)));
    let entropy_max = sum::sum(weights.iter().copied()) * 2.0 * std::f64::consts::LN_2;
    let all_equal = weights.iter().zip(omega).all(|(m, &w)| *m == 0.0 || w == 1.0);
    let index = if all_equal {
        0.0
    } else {
        (1.0 - entropy / entropy_max).clamp(0.0, 1.0)
    };
    InequalityReport {
        entropy,
        entropy_max,
        index,
        welfare: w_bar * (1.0 - index),
    }
}
