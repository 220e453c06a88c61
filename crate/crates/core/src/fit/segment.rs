//! Optimal partition of a scatter into contiguous straight-line pieces.
//!
//! Segmented least squares: for each `K` the partition of points `0..n` into
//! `K` runs minimizing the total residual of per-run lines is found by dynamic
//! programming in `O(K n²)`, with run costs from prefix sums. `K` is either
//! fixed or chosen by BIC with `3K − 1` parameters (slope and intercept per
//! run, plus `K − 1` breakpoints).

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentCriterion {
    #[default]
    Bic,
    FixedK,
}

/// Residuals below this fraction of the ordinate's standard deviation are
/// treated as exact, so rounding does not buy extra segments.
const RESIDUAL_FLOOR: f64 = 1e-7;

struct Prefix {
    x: Vec<f64>,
    y: Vec<f64>,
    xx: Vec<f64>,
    xy: Vec<f64>,
    yy: Vec<f64>,
}

impl Prefix {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let mut p = Prefix {
            x: vec![0.0],
            y: vec![0.0],
            xx: vec![0.0],
            xy: vec![0.0],
            yy: vec![0.0],
        };
        for (&xi, &yi) in x.iter().zip(y) {
            let (cx, cy) = (xi - mx, yi - my);
            p.x.push(p.x.last().unwrap() + cx);
            p.y.push(p.y.last().unwrap() + cy);
            p.xx.push(p.xx.last().unwrap() + cx * cx);
            p.xy.push(p.xy.last().unwrap() + cx * cy);
            p.yy.push(p.yy.last().unwrap() + cy * cy);
        }
        p
    }

    /// Residual sum of squares of the least-squares line through `i..j`.
    fn cost(&self, i: usize, j: usize) -> f64 {
        let len = (j - i) as f64;
        let sx = self.x[j] - self.x[i];
        let sy = self.y[j] - self.y[i];
        let sxx = self.xx[j] - self.xx[i] - sx * sx / len;
        let sxy = self.xy[j] - self.xy[i] - sx * sy / len;
        let syy = self.yy[j] - self.yy[i] - sy * sy / len;
        let rss = if sxx > 1e-14 * (self.xx[j] - self.xx[i]) && sxx > 0.0 {
            syy - sxy * sxy / sxx
        } else {
            syy
        };
        rss.max(0.0)
    }
}

/// Splits points `0..n` (in the given order) into runs of at least
/// `min_len` points. Returns the runs in order; they tile `0..n`.
pub fn breakpoints(
    x: &[f64],
    y: &[f64],
    criterion: SegmentCriterion,
    max_segments: usize,
    min_len: usize,
) -> Result<Vec<Range<usize>>> {
    let n = x.len();
    if n != y.len() {
        return Err(Error::InvalidInput("abscissae and ordinates differ in length".into()));
    }
    if min_len < 3 || max_segments == 0 {
        return Err(Error::InvalidInput(format!(
            "need min_len >= 3 and max_segments >= 1, got {min_len} and {max_segments}"
        )));
    }
    if n < 2 * min_len {
        return Err(Error::InsufficientData { needed: 2 * min_len, got: n });
    }
    let k_max = max_segments.min(n / min_len);
    if criterion == SegmentCriterion::FixedK && max_segments > k_max {
        return Err(Error::InsufficientData {
            needed: max_segments * min_len,
            got: n,
        });
    }

    let prefix = Prefix::new(x, y);
    // best[k][j]: least total cost of k + 1 runs tiling 0..j
    let mut best = vec![vec![f64::INFINITY; n + 1]; k_max];
    let mut split = vec![vec![0usize; n + 1]; k_max];
    for (j, cell) in best[0].iter_mut().enumerate().skip(min_len) {
        *cell = prefix.cost(0, j);
    }
    for k in 1..k_max {
        for j in (k + 1) * min_len..=n {
            for i in k * min_len..=j - min_len {
                let c = best[k - 1][i] + prefix.cost(i, j);
                if c < best[k][j] {
                    best[k][j] = c;
                    split[k][j] = i;
                }
            }
        }
    }

    let chosen = match criterion {
        SegmentCriterion::FixedK => max_segments,
        SegmentCriterion::Bic => {
            let nf = n as f64;
            let y_var = prefix.yy[n] / nf;
            let floor = (nf * RESIDUAL_FLOOR * RESIDUAL_FLOOR * y_var).max(f64::MIN_POSITIVE);
            let bic = |k: usize| {
                nf * (best[k - 1][n].max(floor) / nf).ln() + (3 * k - 1) as f64 * nf.ln()
            };
            let mut chosen = 1;
            for k in 2..=k_max {
                if bic(k) < bic(chosen) {
                    chosen = k;
                }
            }
            chosen
        }
    };

    let mut runs = Vec::with_capacity(chosen);
    let mut end = n;
    for k in (0..chosen).rev() {
        let start = if k == 0 { 0 } else { split[k][end] };
        runs.push(start..end);
        end = start;
    }
    runs.reverse();
    Ok(runs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_two_runs(x: &[f64], y: &[f64], m: usize) -> usize {
        let p = Prefix::new(x, y);
        let n = x.len();
        (m..=n - m)
            .min_by(|&a, &b| (p.cost(0, a) + p.cost(a, n)).total_cmp(&(p.cost(0, b) + p.cost(b, n))))
            .unwrap()
    }

    fn ols_rss(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let b = sxy / sxx;
        x.iter().zip(y).map(|(a, c)| (c - my - b * (a - mx)).powi(2)).sum()
    }

    #[test]
    fn run_cost_matches_direct_fit() {
        let x: Vec<f64> = (0..30).map(|k| (k as f64 * 0.7).sin() + k as f64 * 0.1).collect();
        let y: Vec<f64> = (0..30).map(|k| (k as f64 * 1.3).cos()).collect();
        let p = Prefix::new(&x, &y);
        for (i, j) in [(0, 30), (3, 11), (10, 14), (20, 30)] {
            assert!((p.cost(i, j) - ols_rss(&x[i..j], &y[i..j])).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_line_is_one_run() {
        let x: Vec<f64> = (0..40).map(|k| k as f64 * 0.25).collect();
        let y: Vec<f64> = x.iter().map(|x| 1.0 + 2.0 * x).collect();
        let runs = breakpoints(&x, &y, SegmentCriterion::Bic, 6, 4).unwrap();
        assert_eq!(runs, vec![0..40]);
    }

    #[test]
    fn kinked_lines_split_at_kinks() {
        let x: Vec<f64> = (0..60).map(|k| k as f64 * 0.1).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|&x| if x < 2.0 { 3.0 * x } else if x < 4.0 { 6.0 + (x - 2.0) } else { 8.0 + 0.2 * (x - 4.0) })
            .collect();
        // the kink points lie on both neighbouring lines
        let runs = breakpoints(&x, &y, SegmentCriterion::Bic, 6, 4).unwrap();
        assert_eq!(runs.len(), 3);
        assert!(runs[0].end.abs_diff(20) <= 1 && runs[1].end.abs_diff(40) <= 1);
        let fixed = breakpoints(&x, &y, SegmentCriterion::FixedK, 2, 4).unwrap();
        assert_eq!(fixed.len(), 2);
        assert_eq!(fixed[0].start, 0);
        assert_eq!(fixed[1].end, 60);
    }

    #[test]
    fn two_runs_match_brute_force() {
        let x: Vec<f64> = (0..25).map(|k| k as f64).collect();
        let y: Vec<f64> = (0..25).map(|k| ((k * 7919) % 13) as f64 + if k > 9 { 5.0 } else { 0.0 }).collect();
        let runs = breakpoints(&x, &y, SegmentCriterion::FixedK, 2, 3).unwrap();
        assert_eq!(runs[0].end, brute_two_runs(&x, &y, 3));
    }

    #[test]
    fn deterministic() {
        let x: Vec<f64> = (0..50).map(|k| k as f64).collect();
        let y: Vec<f64> = (0..50).map(|k| ((k * 31) % 17) as f64).collect();
        let a = breakpoints(&x, &y, SegmentCriterion::Bic, 5, 4).unwrap();
        let b = breakpoints(&x, &y, SegmentCriterion::Bic, 5, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn size_checks() {
        let x = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let y = x;
        assert!(matches!(
            breakpoints(&x, &y, SegmentCriterion::Bic, 6, 4),
            Err(Error::InsufficientData { needed: 8, got: 7 })
        ));
        assert!(breakpoints(&x, &y, SegmentCriterion::FixedK, 3, 3).is_err());
        assert!(breakpoints(&x, &y, SegmentCriterion::Bic, 3, 2).is_err());
    }
}
