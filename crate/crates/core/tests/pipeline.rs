use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use socent_core::distribution::{cpf, SmoothingConfig};
use socent_core::fit::{fit, forward, goodness_of, FitConfig};
use socent_core::laws::{be_occupation, phi_be};
use socent_core::{BenefitDistribution, FitParameters};

fn exact() -> FitConfig {
    FitConfig {
        smoothing: SmoothingConfig::identity(),
        ..FitConfig::default()
    }
}

/// Non-interacting data whose slope in the linearized plot drops from
/// `slopes[0]` to `slopes[2]` at two bins past the peak.
fn falling_slopes(slopes: [f64; 3], kinks: [usize; 2]) -> BenefitDistribution {
    let lambda = -1.0;
    let params = FitParameters::new(1.0, slopes[0], lambda, 0.0).unwrap();
    let omega = forward::recovery_grid(&params, 200).unwrap();
    let x = forward::free_energy_axis(&omega, lambda).unwrap();
    let (x0, x1) = (x[kinks[0]], x[kinks[1]]);
    let nu = x
        .iter()
        .enumerate()
        .map(|(k, &xv)| {
            let t = if k < kinks[0] {
                1.0 + slopes[0] * xv
            } else if k < kinks[1] {
                1.0 + slopes[0] * x0 + slopes[1] * (xv - x0)
            } else {
                1.0 + slopes[0] * x0 + slopes[1] * (x1 - x0) + slopes[2] * (xv - x1)
            };
            be_occupation(t).unwrap()
        })
        .collect();
    forward::from_grid(omega, nu, 1.0).unwrap()
}

#[test]
fn slopes_fall_with_benefit() {
    let d = falling_slopes([2.0, 1.0, 0.4], [60, 130]);
    let r = fit(&d, &exact()).unwrap();
    assert!(r.segments.len() >= 2, "{} segments", r.segments.len());
    let betas: Vec<f64> = r.segments.iter().map(|s| s.params.beta()).collect();
    assert!(betas.windows(2).all(|w| w[1] < w[0]), "{betas:?}");
}

#[test]
fn segments_tile_the_fitted_bins() {
    let d = falling_slopes([2.0, 1.0, 0.4], [60, 130]);
    let r = fit(&d, &exact()).unwrap();
    assert_eq!(r.segments[0].bin_range.0, 0);
    assert_eq!(r.segments.last().unwrap().bin_range.1, d.len() - 1);
    for pair in r.segments.windows(2) {
        assert_eq!(pair[1].bin_range.0, pair[0].bin_range.1 + 1);
        assert!(pair[1].omega_range.0 > pair[0].omega_range.1);
    }
    let fitted: usize = r.segments.iter().map(|s| s.fitted_bins).sum();
    assert_eq!(fitted, r.fitted_bins);
}

#[test]
fn fit_is_deterministic() {
    let truth = FitParameters::new(0.9, 1.3, -0.7, -0.25).unwrap();
    let d = forward::synthesize(&truth, 150, 4.0).unwrap();
    for cfg in [exact(), FitConfig::default()] {
        assert_eq!(fit(&d, &cfg).unwrap(), fit(&d, &cfg).unwrap());
    }
}

#[test]
fn poverty_fraction_is_cpf_at_the_peak() {
    let truth = FitParameters::new(0.9, 1.3, -0.7, -0.25).unwrap();
    let d = forward::synthesize(&truth, 150, 4.0).unwrap();
    for cfg in [exact(), FitConfig::default(), FitConfig { pin_peak_to_min: true, ..exact() }] {
        let r = fit(&d, &cfg).unwrap();
        assert_eq!(r.poverty_fraction.to_bits(), cpf(&d, r.peak.omega_p).to_bits());
    }
}

#[test]
fn zero_exclusion_is_moot_on_positive_data() {
    let truth = FitParameters::new(1.5, 0.8, -2.0, 0.1).unwrap();
    let d = forward::synthesize(&truth, 120, 1.0).unwrap();
    let keep = FitConfig {
        exclude_zero_occupation: false,
        ..exact()
    };
    let a = fit(&d, &exact()).unwrap();
    let b = fit(&d, &keep).unwrap();
    assert_eq!(a.global_params, b.global_params);
    assert_eq!(a.segments, b.segments);
    assert_eq!(a.goodness, b.goodness);
}

#[test]
fn rmse_tracks_additive_noise() {
    let sigma = 0.01;
    let noise = Normal::new(0.0, sigma).unwrap();
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let predicted: Vec<Option<f64>> = (0..500).map(|k| Some(1.0 + (k as f64 * 0.01).sin())).collect();
        let observed: Vec<f64> = predicted.iter().map(|p| p.unwrap() + noise.sample(&mut rng)).collect();
        let g = goodness_of(&observed, &predicted);
        assert!((g.rmse_nu / sigma - 1.0).abs() < 0.2, "seed {seed}: rmse {}", g.rmse_nu);
    }
}

#[test]
fn smoothed_fit_stays_close_on_exact_data() {
    let truth = FitParameters::new(1.2, 0.5, -0.8, 0.2).unwrap();
    let d = forward::synthesize(&truth, 300, 1.0).unwrap();
    let r = fit(&d, &FitConfig::default()).unwrap();
    assert!(r.goodness.pearson_r > 0.99);
    assert_relative_eq!(r.gini, fit(&d, &exact()).unwrap().gini);
}

#[test]
fn free_energy_axis_matches_phi() {
    let omega = [0.1, 0.5, 2.0];
    let x = forward::free_energy_axis(&omega, -0.6).unwrap();
    for (w, x) in omega.iter().zip(x) {
        assert_eq!(x, phi_be(*w, -0.6).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recovers_feasible_parameters(
        alpha in 0.1f64..2.0,
        beta in 0.2f64..3.0,
        lambda in -3.0f64..-0.3,
        theta in -0.5f64..0.5,
    ) {
        let truth = FitParameters::new(alpha, beta, lambda, theta).unwrap();
        let d = forward::synthesize(&truth, 200, 1.0);
        prop_assume!(d.is_ok());
        let r = fit(&d.unwrap(), &exact()).unwrap();
        let p = r.global_params;
        prop_assert!((p.alpha() / alpha - 1.0).abs() < 1e-6, "alpha {} vs {alpha}", p.alpha());
        prop_assert!((p.beta() / beta - 1.0).abs() < 1e-6, "beta {} vs {beta}", p.beta());
        prop_assert!((p.theta().value() - theta).abs() < 1e-3);
        prop_assert!(r.linear_r >= 1.0 - 1e-9);
    }
}
