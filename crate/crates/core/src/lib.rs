//! Dual-entropy model of benefit distributions.
//!
//! A population of `N` individuals shares a total benefit `W` (dollars, kWh,
//! years of life) over binned states. Two Bose-Einstein entropies are at work:
//! the diversity entropy `H(ω)` of the benefit allocation, and the entropy
//! production `S(ν)` of individuals over states. Maximizing `S` under the
//! constraints on `N`, `W` and `H`, with a quasi-logarithmic deformation `θ`
//! for interactions, yields a four-parameter occupation law `ν(ω; α, β, λ, θ)`.
//!
//! The crate is organized by concern:
//!
//! - [`distribution`]: binned input, normalization to `ω = w / w̄`, smoothing and peak detection.
//! - [`lorenz`]: Lorenz curves, Gini coefficients and the `Gi = 1/3` symmetry boundary.
//! - [`entropy`]: quasi-logarithms, B-E and classical entropies, the redundancy inequality index.
//! - [`laws`]: social free energy, occupation laws and the stationarity conditions.
//! - [`combinatorics`]: exact configuration counts with a brute-force enumerator.
//! - [`fit`]: the estimation pipeline (peak, `λ`, `θ`, `α`, `β`, segmentation).
//! - [`io`]: CSV input, JSON reports, configuration and plot data.

// NaN-rejecting guards are written as negated comparisons
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::approx_constant))]

pub mod combinatorics;
pub mod distribution;
pub mod entropy;
mod error;
pub mod fit;
pub mod io;
pub mod laws;
pub mod lorenz;
mod root;
mod sum;

pub use combinatorics::{ConfigurationCount, Statistics};
pub use distribution::{BenefitDistribution, BinRow, BinnedSeries, PeakInfo, PeakMode, SmoothingConfig};
pub use entropy::{InequalityReport, ThetaParam};
pub use error::{Error, Result, Stage};
pub use fit::{FitConfig, FitReport, Goodness, Segment, SegmentCriterion};
pub use laws::{FitParameters, InteractionRange, RangeVerdict};
pub use lorenz::{LorenzCurve, SymmetryKind, SymmetryVerdict};
