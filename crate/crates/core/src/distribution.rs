//! Binned benefit data, normalization, smoothing and peak location.
//!
//! A bin `k` holds `N_k` individuals spread over `G_k` states at benefit
//! `w_k`. After normalization every bin carries a dimensionless benefit
//! `ω_k = w_k / w̄` and an occupation number `ν_k = N_k / G_k`, with
//! `Σ G_k ν_k = N` and `Σ G_k ν_k ω_k = N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum;

/// Relative tolerance for the two normalization identities.
const NORMALIZATION_TOL: f64 = 1e-9;

/// One row of binned input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinRow {
    /// Benefit in benefit units, `≥ 0`.
    pub benefit: f64,
    /// Individuals in the bin, `≥ 0`.
    pub count: f64,
    /// Number of states `G_k`. When absent the bin counts one state per
    /// individual, so `ν_k = 1` for populated bins.
    pub states: Option<f64>,
}

impl BinRow {
    pub fn new(benefit: f64, count: f64) -> Self {
        BinRow {
            benefit,
            count,
            states: None,
        }
    }

    pub fn with_states(benefit: f64, count: f64, states: f64) -> Self {
        BinRow {
            benefit,
            count,
            states: Some(states),
        }
    }

    fn state_count(&self) -> f64 {
        self.states.unwrap_or(self.count)
    }
}

/// Validated binned input: benefits strictly increasing, at least two
/// populated rows.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedSeries {
    rows: Vec<BinRow>,
    period: String,
}

impl BinnedSeries {
    pub fn new(rows: Vec<BinRow>, period: impl Into<String>) -> Result<Self> {
        validate_rows(&rows)?;
        if let Some(w) = rows.windows(2).find(|w| w[1].benefit <= w[0].benefit) {
            return Err(Error::InvalidInput(format!(
                "benefits must be strictly increasing ({} then {})",
                w[0].benefit, w[1].benefit
            )));
        }
        let populated = rows.iter().filter(|r| r.count > 0.0).count();
        if populated < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 rows with positive count, got {populated}"
            )));
        }
        Ok(BinnedSeries {
            rows,
            period: period.into(),
        })
    }

    pub fn rows(&self) -> &[BinRow] {
        &self.rows
    }

    /// Period over which entropy is produced, e.g. "1 year".
    pub fn period(&self) -> &str {
        &self.period
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn validate_rows(rows: &[BinRow]) -> Result<()> {
    for (i, r) in rows.iter().enumerate() {
        if !r.benefit.is_finite() || r.benefit < 0.0 {
            return Err(Error::InvalidInput(format!(
                "row {i}: benefit {} must be a finite non-negative number",
                r.benefit
            )));
        }
        if !r.count.is_finite() || r.count < 0.0 {
            return Err(Error::InvalidInput(format!(
                "row {i}: count {} must be a finite non-negative number",
                r.count
            )));
        }
        if let Some(g) = r.states {
            if !g.is_finite() || g <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "row {i}: states {g} must be positive"
                )));
            }
        }
    }
    Ok(())
}

/// Normalized binned distribution.
///
/// `omega` is strictly increasing and non-negative. Distributions returned by
/// [`smooth`] keep `N` but not the mean-benefit identity, since smoothing
/// moves individuals between bins without moving the bins.
#[derive(Debug, Clone, PartialEq)]
pub struct BenefitDistribution {
    omega: Vec<f64>,
    nu: Vec<f64>,
    g: Vec<f64>,
    n_total: f64,
    w_total: f64,
    w_bar: f64,
}

impl BenefitDistribution {
    /// Normalizes raw bins given in any order. Unlike [`BinnedSeries`] this
    /// accepts a single populated bin (the equal-benefit reference state).
    pub fn from_rows(rows: &[BinRow]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("no bins".into()));
        }
        validate_rows(rows)?;
        let mut sorted = rows.to_vec();
        sorted.sort_by(|a, b| a.benefit.total_cmp(&b.benefit));
        if let Some(w) = sorted.windows(2).find(|w| w[0].benefit == w[1].benefit) {
            return Err(Error::InvalidInput(format!(
                "duplicate benefit value {}",
                w[0].benefit
            )));
        }

        let n_total = sum::sum(sorted.iter().map(|r| r.count));
        if n_total <= 0.0 {
            return Err(Error::InvalidInput("total count is zero".into()));
        }
        let w_total = sum::sum(sorted.iter().map(|r| r.benefit * r.count));
        if w_total <= 0.0 {
            return Err(Error::InvalidInput("total benefit is zero".into()));
        }
        let w_bar = w_total / n_total;

        let omega = sorted.iter().map(|r| r.benefit / w_bar).collect();
        let g: Vec<f64> = sorted.iter().map(BinRow::state_count).collect();
        let nu = sorted
            .iter()
            .zip(&g)
            .map(|(r, &g)| if g > 0.0 { r.count / g } else { 0.0 })
            .collect();
        Ok(BenefitDistribution {
            omega,
            nu,
            g,
            n_total,
            w_total,
            w_bar,
        })
    }

    /// Builds a distribution from already-normalized `(ω, ν, G)` triples,
    /// checking both normalization identities. `w_bar` only sets the benefit
    /// unit used to report boundaries.
    pub fn from_occupations(omega: Vec<f64>, nu: Vec<f64>, g: Vec<f64>, w_bar: f64) -> Result<Self> {
        if omega.is_empty() || omega.len() != nu.len() || omega.len() != g.len() {
            return Err(Error::InvalidInput(
                "omega, nu and g must be non-empty and of equal length".into(),
            ));
        }
        if !(w_bar.is_finite() && w_bar > 0.0) {
            return Err(Error::InvalidInput(format!("w_bar {w_bar} must be positive")));
        }
        if omega.iter().any(|w| !w.is_finite() || *w < 0.0)
            || nu.iter().any(|v| !v.is_finite() || *v < 0.0)
            || g.iter().any(|g| !g.is_finite() || *g < 0.0)
        {
            return Err(Error::InvalidInput(
                "omega, nu and g must be finite and non-negative".into(),
            ));
        }
        if omega.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("omega must be strictly increasing".into()));
        }
        let n_total = sum::sum(g.iter().zip(&nu).map(|(g, v)| g * v));
        if n_total <= 0.0 {
            return Err(Error::InvalidInput("total population is zero".into()));
        }
        let mean_mass = sum::sum(g.iter().zip(&nu).zip(&omega).map(|((g, v), w)| g * v * w));
        if ((mean_mass - n_total) / n_total).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidInput(format!(
                "population-weighted mean of omega is {}, expected 1",
                mean_mass / n_total
            )));
        }
        Ok(BenefitDistribution {
            omega,
            nu,
            g,
            n_total,
            w_total: n_total * w_bar,
            w_bar,
        })
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// Number of individuals `N`.
    pub fn n_total(&self) -> f64 {
        self.n_total
    }

    /// Total benefit `W` in benefit units.
    pub fn w_total(&self) -> f64 {
        self.w_total
    }

    /// Mean benefit per individual, `W / N`.
    pub fn w_bar(&self) -> f64 {
        self.w_bar
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Population weights `G_k ν_k`.
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.g.iter().zip(&self.nu).map(|(g, v)| g * v)
    }

    /// Benefit of bin `k` in benefit units.
    pub fn benefit(&self, k: usize) -> f64 {
        self.omega[k] * self.w_bar
    }

    /// Indices of bins with `ν > 0`.
    pub fn occupied_bins(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.nu[k] > 0.0).collect()
    }

    fn with_nu(&self, nu: Vec<f64>) -> Self {
        BenefitDistribution {
            nu,
            ..self.clone()
        }
    }
}

/// Normalizes a validated series: `w̄ = Σ w_k N_k / Σ N_k`, `ω_k = w_k / w̄`,
/// `ν_k = N_k / G_k`.
pub fn normalize(series: &BinnedSeries) -> Result<BenefitDistribution> {
    BenefitDistribution::from_rows(series.rows())
}

/// Moving-average smoother for occupation numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingConfig {
    window: usize,
    passes: usize,
}

impl SmoothingConfig {
    pub fn new(window: usize, passes: usize) -> Result<Self> {
        if window == 0 || window.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "smoothing window must be odd and positive, got {window}"
            )));
        }
        if passes == 0 {
            return Err(Error::InvalidInput("smoothing passes must be positive".into()));
        }
        Ok(SmoothingConfig { window, passes })
    }

    /// No smoothing at all.
    pub fn identity() -> Self {
        SmoothingConfig { window: 1, passes: 1 }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn passes(&self) -> usize {
        self.passes
    }
}

impl Default for SmoothingConfig {
    fn default() -> Self {
        SmoothingConfig { window: 5, passes: 1 }
    }
}

/// Centered moving average of `ν`, truncated at the edges, followed by a
/// rescale that restores `Σ G_k ν_k = N`.
pub fn smooth(dist: &BenefitDistribution, cfg: &SmoothingConfig) -> Result<BenefitDistribution> {
    let k = dist.len();
    if cfg.window > k {
        return Err(Error::InvalidInput(format!(
            "smoothing window {} exceeds bin count {k}",
            cfg.window
        )));
    }
    if cfg.window == 1 {
        return Ok(dist.clone());
    }
    let half = cfg.window / 2;
    let mut nu = dist.nu.clone();
    for _ in 0..cfg.passes {
        nu = (0..k)
            .map(|i| {
                let lo = i.saturating_sub(half);
                let hi = (i + half).min(k - 1);
                nu[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
            })
            .collect();
        let mass = sum::sum(dist.g.iter().zip(&nu).map(|(g, v)| g * v));
        let scale = dist.n_total / mass;
        for v in &mut nu {
            *v *= scale;
        }
    }
    Ok(dist.with_nu(nu))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakMode {
    Detected,
    PinnedToMinimum,
}

/// Location of the single occupation peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakInfo {
    pub omega_p: f64,
    pub index: usize,
    pub mode: PeakMode,
}

/// Finds the bin of maximal `ν`, ties going to the smaller `ω`.
///
/// Only bins with `ω > 0` are candidates. With `pin_to_min` the first such bin is
/// returned regardless of occupation, for data whose poverty peak lies below
/// the observed range.
pub fn detect_peak(dist: &BenefitDistribution, pin_to_min: bool) -> PeakInfo {
    let mut candidates = (0..dist.len()).filter(|&k| dist.omega[k] > 0.0);
    // W > 0 guarantees at least one bin with positive benefit
    let first = candidates.next().expect("distribution has positive total benefit");
    if pin_to_min {
        return PeakInfo {
            omega_p: dist.omega[first],
            index: first,
            mode: PeakMode::PinnedToMinimum,
        };
    }
    let index = candidates.fold(first, |best, k| if dist.nu[k] > dist.nu[best] { k } else { best });
    PeakInfo {
        omega_p: dist.omega[index],
        index,
        mode: PeakMode::Detected,
    }
}

/// Cumulative population fraction `Pr(ω_k ≤ omega)`.
pub fn cpf(dist: &BenefitDistribution, omega: f64) -> f64 {
    let total = sum::sum(dist.weights());
    let below = sum::sum(
        dist.weights()
            .zip(&dist.omega)
            .take_while(|(_, &w)| w <= omega)
            .map(|(m, _)| m),
    );
    below / total
}
