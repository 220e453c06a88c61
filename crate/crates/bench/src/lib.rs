//! Inputs shared by the `socent` benchmarks.

use socent_core::fit::forward;
use socent_core::{BenefitDistribution, FitParameters};

/// Parameters of the benchmark distribution.
pub fn truth() -> FitParameters {
    FitParameters::new(1.2, 0.5, -0.8, 0.2).expect("valid parameters")
}

/// Noiseless interacting occupations on `bins` bins.
pub fn synthetic(bins: usize) -> BenefitDistribution {
    forward::synthesize(&truth(), bins, 1.0).expect("feasible parameters")
}
