use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::distribution::PeakMode;
use crate::error::{Error, Result};
use crate::fit::{FitConfig, FitReport, Goodness, Segment};
use crate::laws::FitParameters;
use crate::lorenz::SymmetryVerdict;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterBlock {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub theta: f64,
    pub mu: f64,
    pub temperature: f64,
}

impl From<&FitParameters> for ParameterBlock {
    fn from(p: &FitParameters) -> Self {
        ParameterBlock {
            alpha: p.alpha(),
            beta: p.beta(),
            lambda: p.lambda(),
            theta: p.theta().value(),
            mu: p.mu(),
            temperature: p.temperature(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeakBlock {
    pub omega_p: f64,
    pub benefit_p: f64,
    pub index: usize,
    pub mode: PeakMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentBlock {
    pub label: usize,
    pub bin_range: [usize; 2],
    pub omega_range: [f64; 2],
    pub benefit_range: [f64; 2],
    pub fitted_bins: usize,
    pub parameters: ParameterBlock,
    pub pearson_r: f64,
}

impl From<&Segment> for SegmentBlock {
    fn from(s: &Segment) -> Self {
        SegmentBlock {
            label: s.label,
            bin_range: [s.bin_range.0, s.bin_range.1],
            omega_range: [s.omega_range.0, s.omega_range.1],
            benefit_range: [s.benefit_range.0, s.benefit_range.1],
            fitted_bins: s.fitted_bins,
            parameters: (&s.params).into(),
            pearson_r: s.pearson_r,
        }
    }
}

/// Serialized form of a [`FitReport`] with the configuration that made it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub format_version: String,
    pub parameters: ParameterBlock,
    pub peak: PeakBlock,
    pub poverty_fraction: f64,
    pub extreme_poverty_fraction: Option<f64>,
    pub gini: f64,
    pub symmetry: SymmetryVerdict,
    pub inequality_index: f64,
    pub diversity_entropy: f64,
    pub diversity_entropy_max: f64,
    pub welfare: f64,
    pub mean_benefit: f64,
    pub mean_free_energy: f64,
    pub linearized_pearson_r: f64,
    pub goodness: Goodness,
    pub segments: Vec<SegmentBlock>,
    pub fitted_bins: usize,
    pub excluded_bins: Vec<usize>,
    pub warnings: Vec<String>,
    pub config: FitConfig,
}

impl ReportDocument {
    pub fn new(report: &FitReport, config: &FitConfig) -> Self {
        ReportDocument {
            format_version: FORMAT_VERSION.to_string(),
            parameters: (&report.global_params).into(),
            peak: PeakBlock {
                omega_p: report.peak.omega_p,
                benefit_p: report.peak.omega_p * report.w_bar,
                index: report.peak.index,
                mode: report.peak.mode,
            },
            poverty_fraction: report.poverty_fraction,
            extreme_poverty_fraction: report.extreme_poverty_fraction,
            gini: report.gini,
            symmetry: report.symmetry,
            inequality_index: report.inequality.index,
            diversity_entropy: report.inequality.entropy,
            diversity_entropy_max: report.inequality.entropy_max,
            welfare: report.inequality.welfare,
            mean_benefit: report.w_bar,
            mean_free_energy: report.mean_free_energy,
            linearized_pearson_r: report.linear_r,
            goodness: report.goodness,
            segments: report.segments.iter().map(SegmentBlock::from).collect(),
            fitted_bins: report.fitted_bins,
            excluded_bins: report.excluded_bins.clone(),
            warnings: report.warnings.clone(),
            config: config.clone(),
        }
    }

    /// Pretty JSON with every float printed to 17 significant digits, which
    /// makes serialize → parse → serialize byte-identical.
    pub fn to_json(&self) -> Result<String> {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17::default());
        self.serialize(&mut ser)?;
        out.push(b'\n');
        Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("format_version").and_then(|v| v.as_str()) {
            Some(FORMAT_VERSION) => Ok(serde_json::from_value(value)?),
            Some(other) => Err(Error::FormatVersion(other.to_string())),
            None => Err(Error::FormatVersion(String::new())),
        }
    }
}

/// Pretty-printing formatter that writes floats as `d.dddddddddddddddde±x`.
#[derive(Default)]
struct Sig17(PrettyFormatter<'static>);

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}
