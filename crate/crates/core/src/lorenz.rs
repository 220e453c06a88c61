//! Lorenz curves, Gini coefficients and the symmetry boundary at `Gi = 1/3`.
//!
//! A symmetric distribution has the same Gini as a uniform distribution on
//! `[ω_m, ω_M]`, whose Gini is `(1/3)(1 − R)/(1 + R)` with `R = ω_m/ω_M`.
//! Hence no symmetric distribution exceeds `Gi = 1/3`.

use serde::{Deserialize, Serialize};

use crate::distribution::BenefitDistribution;
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

const ONE_THIRD: f64 = 1.0 / 3.0;

/// Lorenz polyline from `(0, 0)` to `(1, 1)` with its Gini coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct LorenzCurve {
    /// `(F, L)` pairs: cumulative population and benefit fractions.
    pub points: Vec<(f64, f64)>,
    pub gini: f64,
}

/// Builds the Lorenz curve of a distribution and integrates `Gi = 1 − 2⟨L⟩`
/// with the trapezoid rule, which is exact on the polyline.
pub fn lorenz_points(dist: &BenefitDistribution) -> Result<LorenzCurve> {
    let mut order: Vec<usize> = (0..dist.len()).collect();
    order.sort_by(|&a, &b| dist.omega()[a].total_cmp(&dist.omega()[b]));

    let mass: Vec<f64> = dist.weights().collect();
    let pop_total = crate::sum::sum(order.iter().map(|&k| mass[k]));
    let benefit_total = crate::sum::sum(order.iter().map(|&k| mass[k] * dist.omega()[k]));
    if !(benefit_total > 0.0) {
        return Err(Error::InvalidInput("total benefit is zero".into()));
    }

    let mut points = Vec::with_capacity(dist.len() + 1);
    points.push((0.0, 0.0));
    let mut pop = CompensatedSum::default();
    let mut ben = CompensatedSum::default();
    for &k in &order {
        if mass[k] == 0.0 {
            continue;
        }
        pop.add(mass[k]);
        ben.add(mass[k] * dist.omega()[k]);
        let f = pop.value() / pop_total;
        let l = (ben.value() / benefit_total).min(f);
        points.push((f, l));
    }
    if let Some(last) = points.last_mut() {
        *last = (1.0, 1.0);
    }

    let mut area = CompensatedSum::default();
    for w in points.windows(2) {
        let ((f0, l0), (f1, l1)) = (w[0], w[1]);
        area.add(0.5 * (f1 - f0) * (l0 + l1));
    }
    let gini = (1.0 - 2.0 * area.value()).max(0.0);
    Ok(LorenzCurve { points, gini })
}

/// Lorenz curve of the uniform family, `[2RF + (1 − R)F²]/(1 + R)`.
pub fn uniform_lorenz(f: f64, ratio: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&f) || !(0.0..=1.0).contains(&ratio) {
        return Err(Error::InvalidInput(format!(
            "population fraction {f} and ratio {ratio} must lie in [0, 1]"
        )));
    }
    Ok((2.0 * ratio * f + (1.0 - ratio) * f * f) / (1.0 + ratio))
}

/// Gini of the uniform family, `(1/3)(1 − R)/(1 + R)`.
pub fn uniform_gini(ratio: f64) -> f64 {
    ONE_THIRD * (1.0 - ratio) / (1.0 + ratio)
}

/// Ratio `R = ω_m/ω_M` of the uniform distribution with the given Gini.
pub fn equivalent_ratio(gini: f64) -> Result<f64> {
    if gini > ONE_THIRD {
        return Err(Error::NoSymmetricEquivalent(gini));
    }
    if !(gini >= 0.0) {
        return Err(Error::InvalidInput(format!("gini {gini} must be non-negative")));
    }
    Ok(((1.0 - 3.0 * gini) / (1.0 + 3.0 * gini)).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryKind {
    SymmetryFeasible,
    AsymmetryRequired,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryVerdict {
    pub kind: SymmetryKind,
    pub gini: f64,
    /// Present iff the Gini does not exceed 1/3.
    pub equivalent_ratio: Option<f64>,
}

/// Asymmetry is required iff `Gi > 1/3`; the boundary itself is attained by
/// the uniform family at `R = 0`.
pub fn classify_symmetry(gini: f64) -> SymmetryVerdict {
    match equivalent_ratio(gini) {
        Ok(r) => SymmetryVerdict {
            kind: SymmetryKind::SymmetryFeasible,
            gini,
            equivalent_ratio: Some(r),
        },
        Err(_) => SymmetryVerdict {
            kind: SymmetryKind::AsymmetryRequired,
            gini,
            equivalent_ratio: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::BinRow;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn dist(rows: &[(f64, f64)]) -> BenefitDistribution {
        let rows: Vec<BinRow> = rows.iter().map(|&(b, c)| BinRow::new(b, c)).collect();
        BenefitDistribution::from_rows(&rows).unwrap()
    }

    #[test]
    fn perfect_equality() {
        let c = lorenz_points(&dist(&[(5.0, 3.0)])).unwrap();
        assert_eq!(c.gini, 0.0);
        assert_eq!(c.points, vec![(0.0, 0.0), (1.0, 1.0)]);
    }

    #[test]
    fn one_holds_everything() {
        let c = lorenz_points(&dist(&[(0.0, 1.0), (10.0, 1.0)])).unwrap();
        assert_eq!(c.points, vec![(0.0, 0.0), (0.5, 0.0), (1.0, 1.0)]);
        assert_relative_eq!(c.gini, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn quadratic_lorenz_tends_to_one_third() {
        // uniform density on [0, 2] has L(F) = F²
        let n = 20_000;
        let rows: Vec<(f64, f64)> = (0..n).map(|i| ((i as f64 + 0.5) / n as f64, 1.0)).collect();
        let c = lorenz_points(&dist(&rows)).unwrap();
        // discrete equal-weight Gini is 1/3 − 1/(3n²)
        assert!((c.gini - ONE_THIRD).abs() < 1e-8);
        for &(f, l) in c.points.iter().step_by(997) {
            assert!((l - f * f).abs() < 1e-4);
        }
    }

    #[test]
    fn uniform_family() {
        assert_eq!(uniform_lorenz(1.0, 0.37).unwrap(), 1.0);
        assert_relative_eq!(uniform_lorenz(0.3, 1.0).unwrap(), 0.3, max_relative = 1e-15);
        assert_eq!(uniform_lorenz(0.5, 0.0).unwrap(), 0.25);
        assert!(uniform_lorenz(1.2, 0.5).is_err());
        assert!(uniform_lorenz(0.5, -0.1).is_err());

        assert_eq!(uniform_gini(1.0), 0.0);
        assert_eq!(uniform_gini(0.0), ONE_THIRD);
        assert_relative_eq!(uniform_gini(1.0 / 3.0), 1.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn equivalent_ratios() {
        assert_eq!(equivalent_ratio(0.0).unwrap(), 1.0);
        assert_eq!(equivalent_ratio(ONE_THIRD).unwrap(), 0.0);
        assert_relative_eq!(equivalent_ratio(1.0 / 6.0).unwrap(), 1.0 / 3.0, max_relative = 1e-15);
        assert!(matches!(equivalent_ratio(0.34), Err(Error::NoSymmetricEquivalent(_))));
    }

    #[test]
    fn symmetry_classes() {
        let v = classify_symmetry(0.2);
        assert_eq!(v.kind, SymmetryKind::SymmetryFeasible);
        assert_relative_eq!(v.equivalent_ratio.unwrap(), 0.25, max_relative = 1e-15);
        let v = classify_symmetry(ONE_THIRD);
        assert_eq!((v.kind, v.equivalent_ratio), (SymmetryKind::SymmetryFeasible, Some(0.0)));
        let v = classify_symmetry(0.45);
        assert_eq!((v.kind, v.equivalent_ratio), (SymmetryKind::AsymmetryRequired, None));
    }

    /// Independent Gini: mean absolute difference over all pairs.
    fn gini_pairs(rows: &[(f64, f64)]) -> f64 {
        let n: f64 = rows.iter().map(|r| r.1).sum();
        let mean = rows.iter().map(|r| r.0 * r.1).sum::<f64>() / n;
        let mut acc = 0.0;
        for a in rows {
            for b in rows {
                acc += a.1 * b.1 * (a.0 - b.0).abs();
            }
        }
        acc / (2.0 * n * n * mean)
    }

    fn arb_rows() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.0f64..50.0, 0.0f64..100.0), 2..30).prop_map(|mut v| {
            v.sort_by(|a, b| a.0.total_cmp(&b.0));
            v.dedup_by(|a, b| a.0 == b.0);
            v
        })
    }

    proptest! {
        #[test]
        fn trapezoid_matches_pair_formula(rows in arb_rows()) {
            let rows_d: Vec<BinRow> = rows.iter().map(|&(b, c)| BinRow::new(b, c)).collect();
            if let Ok(d) = BenefitDistribution::from_rows(&rows_d) {
                let c = lorenz_points(&d).unwrap();
                prop_assert!((c.gini - gini_pairs(&rows)).abs() < 1e-12);
                prop_assert!(c.gini >= 0.0 && c.gini < 1.0);
                for w in c.points.windows(2) {
                    prop_assert!(w[1].0 > w[0].0);
                    prop_assert!(w[1].1 >= w[0].1);
                }
                prop_assert!(c.points.iter().all(|&(f, l)| l <= f));
            }
        }

        #[test]
        fn gini_scale_and_replication_invariant(rows in arb_rows(), c in 0.01f64..100.0, copies in 2u32..5) {
            let base: Vec<BinRow> = rows.iter().map(|&(b, n)| BinRow::new(b, n)).collect();
            if let Ok(d) = BenefitDistribution::from_rows(&base) {
                let g0 = lorenz_points(&d).unwrap().gini;
                let scaled: Vec<BinRow> = rows.iter().map(|&(b, n)| BinRow::new(b * c, n)).collect();
                let rep: Vec<BinRow> = rows.iter().map(|&(b, n)| BinRow::new(b, n * copies as f64)).collect();
                let g1 = lorenz_points(&BenefitDistribution::from_rows(&scaled).unwrap()).unwrap().gini;
                let g2 = lorenz_points(&BenefitDistribution::from_rows(&rep).unwrap()).unwrap().gini;
                prop_assert!((g0 - g1).abs() < 1e-12);
                prop_assert!((g0 - g2).abs() < 1e-12);
            }
        }

        #[test]
        fn uniform_gini_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(lo < hi);
            prop_assert!(uniform_gini(lo) >= uniform_gini(hi));
            prop_assert!(uniform_gini(lo) <= ONE_THIRD + 1e-15);
            let g = uniform_gini(a);
            prop_assert!((uniform_gini(equivalent_ratio(g).unwrap()) - g).abs() < 1e-12);
        }
    }
}
