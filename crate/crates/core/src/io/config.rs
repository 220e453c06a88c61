use std::path::Path;

use serde::Deserialize;

use crate::distribution::SmoothingConfig;
use crate::error::{Error, Result};
use crate::fit::{FitConfig, SegmentCriterion};

/// Flat TOML configuration. Every key is optional and overrides the
/// matching [`FitConfig`] default.
///
/// ```toml
/// smoothing_window = 3
/// theta_range = [-0.5, 0.5]
/// segment_criterion = "fixed-k"
/// max_segments = 3
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub smoothing_window: Option<usize>,
    pub smoothing_passes: Option<usize>,
    pub pin_peak_to_min: Option<bool>,
    pub theta_range: Option<(f64, f64)>,
    pub theta_tolerance: Option<f64>,
    pub max_segments: Option<usize>,
    pub segment_criterion: Option<SegmentCriterion>,
    pub min_segment_bins: Option<usize>,
    pub exclude_zero_occupation: Option<bool>,
    pub min_occupation: Option<f64>,
    pub weighted_regression: Option<bool>,
}

impl ConfigFile {
    /// Overrides the fields of `base` that are set here and validates.
    pub fn apply(&self, base: FitConfig) -> Result<FitConfig> {
        let mut cfg = base;
        if self.smoothing_window.is_some() || self.smoothing_passes.is_some() {
            cfg.smoothing = SmoothingConfig::new(
                self.smoothing_window.unwrap_or(cfg.smoothing.window()),
                self.smoothing_passes.unwrap_or(cfg.smoothing.passes()),
            )?;
        }
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { cfg.$field = v; })*
            };
        }
        set!(
            pin_peak_to_min,
            theta_range,
            theta_tolerance,
            max_segments,
            segment_criterion,
            min_segment_bins,
            exclude_zero_occupation,
            min_occupation,
            weighted_regression
        );
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map_or(0, |s| super::line_of(text, s.start)),
        message: e.message().to_string(),
    })
}

pub fn load_config(path: &Path) -> Result<ConfigFile> {
    parse_config(&std::fs::read_to_string(path)?)
}
