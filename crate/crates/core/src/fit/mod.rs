//! Estimation pipeline.
//!
//! smooth → peak → `λ` → `θ` → `(α, β)` → goodness → segments → summary.
//! Every stage is a pure function of its inputs, and failures carry the
//! name of the stage that raised them.

pub mod forward;
pub mod regression;
pub mod segment;
pub mod theta;

use serde::{Deserialize, Serialize};

use crate::distribution::{cpf, detect_peak, smooth, BenefitDistribution, PeakInfo, PeakMode, SmoothingConfig};
use crate::entropy::{inequality_index, InequalityReport};
use crate::error::{Error, Result, Stage, StageExt};
use crate::laws::{
    extreme_poverty_fraction, lambda_from_omega_p, nu_theta, phi_be, temperature_check, FitParameters,
};
use crate::lorenz::{classify_symmetry, lorenz_points, SymmetryVerdict};
use crate::sum;

pub use regression::{least_squares, LineFit};
pub use segment::{breakpoints, SegmentCriterion};
pub use theta::{search_theta, ThetaEstimate};

/// Pipeline settings. Field names double as configuration-file keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    pub smoothing: SmoothingConfig,
    pub pin_peak_to_min: bool,
    pub theta_range: (f64, f64),
    pub theta_tolerance: f64,
    pub max_segments: usize,
    pub segment_criterion: SegmentCriterion,
    pub min_segment_bins: usize,
    pub exclude_zero_occupation: bool,
    /// Bins with `ν` at or below this value are left out of the fit.
    pub min_occupation: f64,
    /// Weight the `(α, β)` regression by bin population `G_k ν_k`.
    pub weighted_regression: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            smoothing: SmoothingConfig::default(),
            pin_peak_to_min: false,
            theta_range: (-0.9, 0.9),
            theta_tolerance: 1e-4,
            max_segments: 6,
            segment_criterion: SegmentCriterion::Bic,
            min_segment_bins: 4,
            exclude_zero_occupation: true,
            min_occupation: 0.0,
            weighted_regression: false,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        SmoothingConfig::new(self.smoothing.window(), self.smoothing.passes())?;
        let (lo, hi) = self.theta_range;
        if !(lo > -0.99 && hi < 0.99 && lo <= 0.0 && hi >= 0.0 && lo < hi) {
            return Err(Error::InvalidInput(format!(
                "theta_range [{lo}, {hi}] must contain 0 and lie within (-0.99, 0.99)"
            )));
        }
        if !(self.theta_tolerance > 0.0 && self.theta_tolerance < hi - lo) {
            return Err(Error::InvalidInput(format!(
                "theta_tolerance {} must be positive and below the range width",
                self.theta_tolerance
            )));
        }
        if self.max_segments == 0 {
            return Err(Error::InvalidInput("max_segments must be at least 1".into()));
        }
        if self.min_segment_bins < 3 {
            return Err(Error::InvalidInput(format!(
                "min_segment_bins {} must be at least 3",
                self.min_segment_bins
            )));
        }
        if !(self.min_occupation >= 0.0 && self.min_occupation.is_finite()) {
            return Err(Error::InvalidInput("min_occupation must be non-negative".into()));
        }
        Ok(())
    }
}

/// One class of the piecewise fit.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    /// 1-based, in order of increasing `ω`.
    pub label: usize,
    /// Inclusive bin indices.
    pub bin_range: (usize, usize),
    pub omega_range: (f64, f64),
    pub benefit_range: (f64, f64),
    /// Bins of the range that entered the regression.
    pub fitted_bins: usize,
    pub params: FitParameters,
    pub pearson_r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Goodness {
    pub pearson_r: f64,
    pub rmse_nu: f64,
    pub r_squared: f64,
}

/// Per-bin values for plotting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub omega: f64,
    pub benefit: f64,
    pub nu_observed: f64,
    pub nu_smoothed: f64,
    pub nu_fitted: Option<f64>,
    pub segment: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub global_params: FitParameters,
    pub peak: PeakInfo,
    /// `Pr(ω ≤ ω_p)` on the unsmoothed input.
    pub poverty_fraction: f64,
    pub gini: f64,
    pub symmetry: SymmetryVerdict,
    pub inequality: InequalityReport,
    pub segments: Vec<Segment>,
    pub goodness: Goodness,
    /// Correlation of the linearized scatter at the fitted `θ`.
    pub linear_r: f64,
    pub extreme_poverty_fraction: Option<f64>,
    /// Population mean of `φ_BE`, to compare with `1/β`.
    pub mean_free_energy: f64,
    pub w_bar: f64,
    pub fitted_bins: usize,
    pub excluded_bins: Vec<usize>,
    pub warnings: Vec<String>,
    pub curve: Vec<CurvePoint>,
}

/// `λ` from the peak abscissa.
pub fn estimate_lambda(peak: &PeakInfo) -> Result<f64> {
    if !(peak.omega_p > 0.0) {
        return Err(Error::InvalidPeak(peak.omega_p));
    }
    lambda_from_omega_p(peak.omega_p)
}

/// Bins usable by the logarithmic fit, plus those left out.
fn usable_bins(dist: &BenefitDistribution, cfg: &FitConfig) -> Result<(Vec<usize>, Vec<usize>)> {
    let (used, excluded): (Vec<usize>, Vec<usize>) =
        (0..dist.len()).partition(|&k| dist.nu()[k] > cfg.min_occupation);
    if !cfg.exclude_zero_occupation {
        if let Some(&k) = excluded.iter().find(|&&k| dist.nu()[k] == 0.0) {
            return Err(Error::InvalidInput(format!(
                "bin {k} has zero occupation; enable exclude_zero_occupation to skip it"
            )));
        }
    }
    Ok((used, excluded))
}

struct Scatter {
    bins: Vec<usize>,
    x: Vec<f64>,
    nu: Vec<f64>,
    weight: Vec<f64>,
}

impl Scatter {
    fn new(dist: &BenefitDistribution, bins: Vec<usize>, lambda: f64) -> Result<Self> {
        let x = bins
            .iter()
            .map(|&k| phi_be(dist.omega()[k], lambda))
            .collect::<Result<_>>()?;
        let nu = bins.iter().map(|&k| dist.nu()[k]).collect();
        let weight = bins.iter().map(|&k| dist.g()[k] * dist.nu()[k]).collect();
        Ok(Scatter { bins, x, nu, weight })
    }

    fn slice(&self, r: std::ops::Range<usize>) -> Scatter {
        Scatter {
            bins: self.bins[r.clone()].to_vec(),
            x: self.x[r.clone()].to_vec(),
            nu: self.nu[r.clone()].to_vec(),
            weight: self.weight[r].to_vec(),
        }
    }
}

fn scatter(dist: &BenefitDistribution, lambda: f64, cfg: &FitConfig) -> Result<Scatter> {
    let (used, _) = usable_bins(dist, cfg)?;
    if used.len() < 3 {
        return Err(Error::InsufficientData { needed: 3, got: used.len() });
    }
    Scatter::new(dist, used, lambda)
}

/// `θ` maximizing the Pearson correlation of `(φ_BE(ω_k, λ), ∂s_θ/∂ν(ν_k))`.
pub fn estimate_theta(dist: &BenefitDistribution, lambda: f64, cfg: &FitConfig) -> Result<ThetaEstimate> {
    let s = scatter(dist, lambda, cfg)?;
    search_theta(&s.x, &s.nu, cfg.theta_range, cfg.theta_tolerance)
}

fn regress_scatter(s: &Scatter, theta: f64, weighted: bool) -> Result<LineFit> {
    let y = theta::linearize(&s.nu, theta)?;
    least_squares(&s.x, &y, weighted.then_some(s.weight.as_slice()))
}

/// Intercept `α` and slope `β` of the linearized stationarity condition.
pub fn regress_alpha_beta(dist: &BenefitDistribution, lambda: f64, theta: f64, cfg: &FitConfig) -> Result<LineFit> {
    let s = scatter(dist, lambda, cfg)?;
    regress_scatter(&s, theta, cfg.weighted_regression)
}

/// Fitted occupation at each grid point; `None` where the law diverges or
/// has no solution.
pub fn predict(omega: &[f64], params: &FitParameters) -> Vec<Option<f64>> {
    omega.iter().map(|&w| nu_theta(w, params).ok()).collect()
}

/// Agreement between observed and predicted occupations over points where
/// both are available and the observation is positive.
pub fn goodness_of(observed: &[f64], predicted: &[Option<f64>]) -> Goodness {
    let (obs, pred): (Vec<f64>, Vec<f64>) = observed
        .iter()
        .zip(predicted)
        .filter_map(|(&o, p)| p.filter(|_| o > 0.0).map(|p| (o, p)))
        .unzip();
    if obs.is_empty() {
        return Goodness {
            pearson_r: 0.0,
            rmse_nu: 0.0,
            r_squared: 0.0,
        };
    }
    let n = obs.len() as f64;
    let sse = sum::sum(obs.iter().zip(&pred).map(|(o, p)| (o - p).powi(2)));
    let mean = sum::sum(obs.iter().copied()) / n;
    let sst = sum::sum(obs.iter().map(|o| (o - mean).powi(2)));
    Goodness {
        pearson_r: regression::pearson(&obs, &pred),
        rmse_nu: (sse / n).sqrt(),
        r_squared: if sst > 0.0 { 1.0 - sse / sst } else { 0.0 },
    }
}

pub fn goodness(dist: &BenefitDistribution, predicted: &[Option<f64>]) -> Result<Goodness> {
    if predicted.len() != dist.len() {
        return Err(Error::InvalidInput(format!(
            "{} predictions for {} bins",
            predicted.len(),
            dist.len()
        )));
    }
    Ok(goodness_of(dist.nu(), predicted))
}

fn fit_segment(s: &Scatter, lambda: f64, cfg: &FitConfig) -> Result<(FitParameters, f64)> {
    let est = search_theta(&s.x, &s.nu, cfg.theta_range, cfg.theta_tolerance)?;
    let line = regress_scatter(s, est.theta.value(), cfg.weighted_regression)?;
    Ok((
        FitParameters::new(line.alpha, line.beta, lambda, est.theta.value())?,
        est.pearson_r(),
    ))
}

fn build_segments(
    dist: &BenefitDistribution,
    s: &Scatter,
    runs: &[std::ops::Range<usize>],
    lambda: f64,
    cfg: &FitConfig,
) -> Result<Vec<Segment>> {
    let mut segments = Vec::with_capacity(runs.len());
    for (i, run) in runs.iter().enumerate() {
        let first = s.bins[run.start];
        let last = match runs.get(i + 1) {
            Some(next) => s.bins[next.start] - 1,
            None => s.bins[run.end - 1],
        };
        let (params, pearson_r) = fit_segment(&s.slice(run.clone()), lambda, cfg)?;
        let omega_range = (dist.omega()[first], dist.omega()[last]);
        segments.push(Segment {
            label: i + 1,
            bin_range: (first, last),
            omega_range,
            benefit_range: (omega_range.0 * dist.w_bar(), omega_range.1 * dist.w_bar()),
            fitted_bins: run.len(),
            params,
            pearson_r,
        });
    }
    Ok(segments)
}

/// Piecewise fit: breakpoints on the `θ = 0` linearization
/// `(φ_BE(ω_k, λ), ln(1 + 1/ν_k))`, then `(θ, α, β)` refitted per segment
/// with `λ` shared.
pub fn segment(dist: &BenefitDistribution, lambda: f64, cfg: &FitConfig) -> Result<Vec<Segment>> {
    cfg.validate()?;
    let s = scatter(dist, lambda, cfg)?;
    let y = theta::linearize(&s.nu, 0.0)?;
    let runs = breakpoints(&s.x, &y, cfg.segment_criterion, cfg.max_segments, cfg.min_segment_bins)?;
    build_segments(dist, &s, &runs, lambda, cfg)
}

/// Runs the whole pipeline on a normalized distribution.
pub fn fit(dist: &BenefitDistribution, cfg: &FitConfig) -> Result<FitReport> {
    cfg.validate()?;
    let mut warnings = Vec::new();

    let smoothed = smooth(dist, &cfg.smoothing).stage(Stage::Smooth)?;
    let peak = detect_peak(&smoothed, cfg.pin_peak_to_min);
    if peak.mode == PeakMode::PinnedToMinimum {
        warnings.push("peak pinned to the lowest positive benefit".to_string());
    }
    let lambda = estimate_lambda(&peak).stage(Stage::Lambda)?;

    let (used, excluded) = usable_bins(&smoothed, cfg).stage(Stage::Theta)?;
    if !excluded.is_empty() {
        warnings.push(format!(
            "{} bins with occupation at or below {} excluded from the regression",
            excluded.len(),
            cfg.min_occupation
        ));
    }
    if used.len() < 3 {
        return Err(Error::InsufficientData { needed: 3, got: used.len() }.at(Stage::Theta));
    }
    let s = Scatter::new(&smoothed, used, lambda).stage(Stage::Theta)?;
    let est = search_theta(&s.x, &s.nu, cfg.theta_range, cfg.theta_tolerance).stage(Stage::Theta)?;
    let theta = est.theta.value();
    let line = regress_scatter(&s, theta, cfg.weighted_regression).stage(Stage::Regression)?;
    let params = FitParameters::new(line.alpha, line.beta, lambda, theta).stage(Stage::Parameters)?;
    if !params.extreme_poverty_defined() {
        warnings.push(format!(
            "alpha = {} is not positive: extreme-poverty fraction undefined",
            params.alpha()
        ));
    }

    let fitted = predict(smoothed.omega(), &params);
    let absent = fitted.iter().filter(|v| v.is_none()).count();
    if absent > 0 {
        warnings.push(format!("fitted law undefined at {absent} bins"));
    }
    let goodness = goodness_of(smoothed.nu(), &fitted);

    let segments = if s.bins.len() < 2 * cfg.min_segment_bins {
        warnings.push(format!(
            "{} fitted bins are too few to segment; reporting a single segment",
            s.bins.len()
        ));
        build_segments(&smoothed, &s, std::slice::from_ref(&(0..s.bins.len())), lambda, cfg).stage(Stage::Segmentation)?
    } else {
        let y = theta::linearize(&s.nu, 0.0).stage(Stage::Segmentation)?;
        let runs = breakpoints(&s.x, &y, cfg.segment_criterion, cfg.max_segments, cfg.min_segment_bins)
            .stage(Stage::Segmentation)?;
        build_segments(&smoothed, &s, &runs, lambda, cfg).stage(Stage::Segmentation)?
    };

    let gini = lorenz_points(dist).stage(Stage::Summary)?.gini;
    let curve = (0..dist.len())
        .map(|k| CurvePoint {
            omega: dist.omega()[k],
            benefit: dist.benefit(k),
            nu_observed: dist.nu()[k],
            nu_smoothed: smoothed.nu()[k],
            nu_fitted: fitted[k],
            segment: segments
                .iter()
                .find(|seg| (seg.bin_range.0..=seg.bin_range.1).contains(&k))
                .map(|seg| seg.label),
        })
        .collect();

    Ok(FitReport {
        global_params: params,
        peak,
        poverty_fraction: cpf(dist, peak.omega_p),
        gini,
        symmetry: classify_symmetry(gini),
        inequality: inequality_index(dist),
        segments,
        goodness,
        linear_r: est.pearson_r(),
        extreme_poverty_fraction: extreme_poverty_fraction(params.alpha()).ok(),
        mean_free_energy: temperature_check(dist, lambda),
        w_bar: dist.w_bar(),
        fitted_bins: s.bins.len(),
        excluded_bins: excluded,
        warnings,
        curve,
    })
}
