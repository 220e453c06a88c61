//! Least-squares lines and Pearson correlation on small scatters.

use crate::error::{Error, Result};
use crate::sum;

/// Ordinary (or weighted) least-squares line `y = α + βx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    /// Intercept.
    pub alpha: f64,
    /// Slope.
    pub beta: f64,
    pub pearson_r: f64,
    /// `1 − SSE/SST`.
    pub r_squared: f64,
    /// Residual sum of squares, accumulated from direct residuals.
    pub sse: f64,
    /// Total sum of squares about the mean of `y`.
    pub sst: f64,
    pub points: usize,
}

impl LineFit {
    /// `1 − r`, accurate when `r` is within rounding of 1.
    pub fn deficit(&self) -> f64 {
        let q = if self.sst > 0.0 {
            (self.sse / self.sst).clamp(0.0, 1.0)
        } else {
            1.0
        };
        if self.pearson_r >= 0.0 {
            q / (1.0 + (1.0 - q).sqrt())
        } else {
            1.0 + (1.0 - q).sqrt()
        }
    }
}

/// Fits `y` on `x`. With `weights` each point counts in proportion to its
/// weight; otherwise all points count once.
pub fn least_squares(x: &[f64], y: &[f64], weights: Option<&[f64]>) -> Result<LineFit> {
    let n = x.len();
    if n != y.len() || weights.is_some_and(|w| w.len() != n) {
        return Err(Error::InvalidInput("regression inputs differ in length".into()));
    }
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let w = |k: usize| weights.map_or(1.0, |w| w[k]);
    let w_total = sum::sum((0..n).map(w));
    if !(w_total > 0.0) {
        return Err(Error::InvalidInput("regression weights sum to zero".into()));
    }
    let x_mean = sum::sum((0..n).map(|k| w(k) * x[k])) / w_total;
    let y_mean = sum::sum((0..n).map(|k| w(k) * y[k])) / w_total;
    let sxx = sum::sum((0..n).map(|k| w(k) * (x[k] - x_mean).powi(2)));
    let sxy = sum::sum((0..n).map(|k| w(k) * (x[k] - x_mean) * (y[k] - y_mean)));
    let syy = sum::sum((0..n).map(|k| w(k) * (y[k] - y_mean).powi(2)));
    if !(sxx > 0.0) || sxx <= f64::EPSILON * sum::sum((0..n).map(|k| w(k) * x[k] * x[k])) {
        return Err(Error::SingularRegression);
    }

    let beta = sxy / sxx;
    let alpha = y_mean - beta * x_mean;
    let sse = sum::sum((0..n).map(|k| {
        let r = (y[k] - y_mean) - beta * (x[k] - x_mean);
        w(k) * r * r
    }));
    let (pearson_r, r_squared) = if syy > 0.0 {
        let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
        (r, (1.0 - sse / syy).clamp(0.0, 1.0))
    } else {
        (0.0, 0.0)
    };
    Ok(LineFit {
        alpha,
        beta,
        pearson_r,
        r_squared,
        sse,
        sst: syy,
        points: n,
    })
}

/// Pearson correlation, `0` when either variable is constant.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    if n < 2 {
        return 0.0;
    }
    let ma = sum::sum(a[..n].iter().copied()) / n as f64;
    let mb = sum::sum(b[..n].iter().copied()) / n as f64;
    let sab = sum::sum((0..n).map(|k| (a[k] - ma) * (b[k] - mb)));
    let saa = sum::sum((0..n).map(|k| (a[k] - ma).powi(2)));
    let sbb = sum::sum((0..n).map(|k| (b[k] - mb).powi(2)));
    if saa > 0.0 && sbb > 0.0 {
        (sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_line() {
        let x: Vec<f64> = (0..50).map(|k| k as f64 * 0.37 - 3.0).collect();
        let y: Vec<f64> = x.iter().map(|x| 0.8 + 1.7 * x).collect();
        let fit = least_squares(&x, &y, None).unwrap();
        assert_relative_eq!(fit.alpha, 0.8, max_relative = 1e-12);
        assert_relative_eq!(fit.beta, 1.7, max_relative = 1e-12);
        assert!(fit.deficit() < 1e-15);
        assert_eq!(fit.points, 50);
    }

    #[test]
    fn decreasing_line_has_negative_r() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [4.0, 3.0, 2.0, 1.0];
        let fit = least_squares(&x, &y, None).unwrap();
        assert_eq!(fit.beta, -1.0);
        assert_relative_eq!(fit.pearson_r, -1.0, max_relative = 1e-15);
        assert_relative_eq!(fit.deficit(), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn textbook_values() {
        // x = 1..5, y = (2, 4, 5, 4, 5): β = 0.6, α = 2.2, r² = 0.6
        let fit = least_squares(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 4.0, 5.0, 4.0, 5.0], None).unwrap();
        assert_relative_eq!(fit.beta, 0.6, max_relative = 1e-14);
        assert_relative_eq!(fit.alpha, 2.2, max_relative = 1e-14);
        assert_relative_eq!(fit.r_squared, 0.6, max_relative = 1e-14);
        assert_relative_eq!(fit.pearson_r, 0.6f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn weights_act_as_replication() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 2.5, 2.9, 4.4];
        let w = [1.0, 3.0, 2.0, 1.0];
        let fit = least_squares(&x, &y, Some(&w)).unwrap();
        let (mut xr, mut yr) = (vec![], vec![]);
        for k in 0..4 {
            for _ in 0..w[k] as usize {
                xr.push(x[k]);
                yr.push(y[k]);
            }
        }
        let rep = least_squares(&xr, &yr, None).unwrap();
        assert_relative_eq!(fit.beta, rep.beta, max_relative = 1e-13);
        assert_relative_eq!(fit.alpha, rep.alpha, max_relative = 1e-13);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            least_squares(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0], None),
            Err(Error::SingularRegression)
        ));
        let flat = least_squares(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0], None).unwrap();
        assert_eq!((flat.beta, flat.pearson_r), (0.0, 0.0));
        assert!(least_squares(&[1.0], &[1.0], None).is_err());
        assert!(least_squares(&[1.0, 2.0], &[1.0], None).is_err());
    }

    #[test]
    fn pearson_edges() {
        assert_relative_eq!(pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]), 1.0, max_relative = 1e-15);
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[7.0, 7.0, 7.0]), 0.0);
    }
}
