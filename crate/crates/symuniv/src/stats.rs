//! Two-sample Kolmogorov-Smirnov statistic and empirical moments.

use num_complex::Complex64;
use serde::Serialize;

/// Two-sample KS statistic: the sup-distance between empirical CDFs,
/// computed by a single merge sweep over the sorted samples.
pub fn ks_statistic(xs: &[f64], ys: &[f64]) -> f64 {
    assert!(!xs.is_empty() && !ys.is_empty());
    let mut x: Vec<f64> = xs.to_vec();
    let mut y: Vec<f64> = ys.to_vec();
    x.sort_unstable_by(f64::total_cmp);
    y.sort_unstable_by(f64::total_cmp);
    let x_inc = 1.0 / x.len() as f64;
    let y_inc = 1.0 / y.len() as f64;
    let (mut i, mut j) = (0usize, 0usize);
    let mut diff = 0.0f64;
    let mut max_diff = 0.0f64;
    while i < x.len() || j < y.len() {
        // advance both CDFs through the smallest remaining value,
        // consuming ties on both sides before measuring
        let v = match (x.get(i), y.get(j)) {
            (Some(&a), Some(&b)) => a.min(b),
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        while i < x.len() && x[i] == v {
            diff += x_inc;
            i += 1;
        }
        while j < y.len() && y[j] == v {
            diff -= y_inc;
            j += 1;
        }
        max_diff = max_diff.max(diff.abs());
    }
    max_diff
}

/// Asymptotic critical value `c(alpha) sqrt((n + m) / (n m))` with
/// `c(alpha) = sqrt(-ln(alpha / 2) / 2)`.
pub fn ks_critical_value(alpha: f64, n: usize, m: usize) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n * m) as f64).sqrt()
}

/// First and second empirical moments of a complex sample.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Moments {
    pub mean_re: f64,
    pub mean_im: f64,
    /// mean of `|z|^2`
    pub second_abs: f64,
    /// standard error of the real mean
    pub se_re: f64,
    /// standard error of `|z|^2`
    pub se_second: f64,
}

pub fn complex_moments(sample: &[Complex64]) -> Moments {
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<Complex64>() / n;
    let second = sample.iter().map(|z| z.norm_sqr()).sum::<f64>() / n;
    let var_re = sample.iter().map(|z| (z.re - mean.re).powi(2)).sum::<f64>() / n;
    let var_second = sample
        .iter()
        .map(|z| (z.norm_sqr() - second).powi(2))
        .sum::<f64>()
        / n;
    Moments {
        mean_re: mean.re,
        mean_im: mean.im,
        second_abs: second,
        se_re: (var_re / n).sqrt(),
        se_second: (var_second / n).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_have_zero_distance() {
        let a = [0.3, -1.0, 2.5, 0.3, 7.0];
        assert_eq!(ks_statistic(&a, &a), 0.0);
    }

    #[test]
    fn disjoint_samples_have_distance_one() {
        let a = [0.0, 1.0, 2.0];
        let b = [10.0, 11.0];
        assert_eq!(ks_statistic(&a, &b), 1.0);
    }

    #[test]
    fn hand_computed_case() {
        // x: {1, 2}, y: {1.5}: CDF gap peaks at 0.5
        assert_eq!(ks_statistic(&[1.0, 2.0], &[1.5]), 0.5);
    }

    #[test]
    fn symmetric_in_arguments() {
        let a = [0.1, 0.7, 0.3, 0.9];
        let b = [0.2, 0.6, 0.8];
        assert_eq!(ks_statistic(&a, &b), ks_statistic(&b, &a));
    }

    #[test]
    fn critical_value_at_one_percent() {
        // c(0.01) ~ 1.6276
        let v = ks_critical_value(0.01, 2000, 2000);
        assert!((v - 1.62762 * (2.0 / 2000.0f64).sqrt()).abs() < 1e-4);
    }

    #[test]
    fn moments_of_a_constant() {
        let z = Complex64::new(2.0, -1.0);
        let m = complex_moments(&[z; 16]);
        assert_eq!(m.mean_re, 2.0);
        assert_eq!(m.mean_im, -1.0);
        assert!((m.second_abs - 5.0).abs() < 1e-15);
        assert_eq!(m.se_re, 0.0);
    }
}
