//! Small statistical toolkit used by the Monte Carlo checks.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::rng::StreamRng;

/// A point estimate with a confidence interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal")
}

pub fn normal_quantile(p: f64) -> f64 {
    std_normal().inverse_cdf(p)
}

pub fn normal_cdf(z: f64) -> f64 {
    std_normal().cdf(z)
}

/// Wilson score interval for `successes` out of `trials` at two-sided
/// `confidence`.
pub fn wilson_interval(successes: usize, trials: usize, confidence: f64) -> Interval {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z = normal_quantile(0.5 + 0.5 * confidence);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Interval {
        estimate: p,
        lower: (centre - half).max(0.0),
        upper: (centre + half).min(1.0),
    }
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Unbiased sample variance.
pub fn variance(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0)
}

/// Standard error of the mean.
pub fn std_error(x: &[f64]) -> f64 {
    (variance(x) / x.len() as f64).sqrt()
}

/// Standard error of the unbiased sample variance, from the fourth central
/// moment.
pub fn variance_std_error(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let m = mean(x);
    let m2 = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
    let m4 = x.iter().map(|v| (v - m).powi(4)).sum::<f64>() / n;
    ((m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n).max(0.0).sqrt()
}

pub fn skewness(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let m = mean(x);
    let m2 = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
    let m3 = x.iter().map(|v| (v - m).powi(3)).sum::<f64>() / n;
    m3 / m2.powf(1.5)
}

pub fn median(x: &[f64]) -> f64 {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Asymptotic Kolmogorov survival function `Q(λ) = 2 Σ (-1)^{k-1} e^{-2k²λ²}`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-17 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Kolmogorov–Smirnov statistic and p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

fn ks_p(d: f64, ne: f64) -> f64 {
    let s = ne.sqrt();
    kolmogorov_q((s + 0.12 + 0.11 / s) * d)
}

/// One-sample KS test of `data` against the continuous distribution `cdf`.
pub fn ks_one_sample(data: &[f64], cdf: impl Fn(f64) -> f64) -> KsResult {
    let mut v = data.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    KsResult {
        statistic: d,
        p_value: ks_p(d, n),
    }
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len(), y.len());
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < n && j < m {
        let t = x[i].min(y[j]);
        while i < n && x[i] <= t {
            i += 1;
        }
        while j < m && y[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    KsResult {
        statistic: d,
        p_value: ks_p(d, ne),
    }
}

/// Pearson χ² goodness of fit; returns `(statistic, p_value)`.
pub fn chi_square(observed: &[f64], expected: &[f64]) -> Result<(f64, f64)> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(Error::Config("chi_square needs matching bins (at least 2)".into()));
    }
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(o, e)| (o - e).powi(2) / e)
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64)
        .map_err(|e| Error::Numeric(format!("chi-square distribution: {e}")))?;
    Ok((stat, 1.0 - dist.cdf(stat)))
}

/// Bootstrap standard error of `statistic`.
pub fn bootstrap_se(
    data: &[f64],
    statistic: impl Fn(&[f64]) -> f64,
    resamples: usize,
    rng: &mut StreamRng,
) -> f64 {
    let n = data.len();
    let mut buf = vec![0.0; n];
    let values: Vec<f64> = (0..resamples)
        .map(|_| {
            for b in buf.iter_mut() {
                *b = data[rng.random_range(0..n)];
            }
            statistic(&buf)
        })
        .collect();
    variance(&values).sqrt()
}

/// Shapiro–Francia normality test with Royston's normal approximation of
/// `log(1 - W')`; valid for 5 ≤ n ≤ 5000.
pub fn shapiro_francia(data: &[f64]) -> Result<(f64, f64)> {
    let n = data.len();
    if !(5..=5000).contains(&n) {
        return Err(Error::Config(format!(
            "Shapiro-Francia needs 5..=5000 observations, got {n}"
        )));
    }
    let mut x = data.to_vec();
    x.sort_by(f64::total_cmp);
    let nf = n as f64;
    let m: Vec<f64> = (1..=n)
        .map(|i| normal_quantile((i as f64 - 0.375) / (nf + 0.25)))
        .collect();
    let xm = mean(&x);
    let sxx: f64 = x.iter().map(|v| (v - xm).powi(2)).sum();
    let smm: f64 = m.iter().map(|v| v * v).sum();
    let sxm: f64 = x.iter().zip(&m).map(|(a, b)| a * b).sum();
    let w = sxm * sxm / (smm * sxx);
    let u = nf.ln();
    let v = u.ln();
    let mu = -1.2725 + 1.0521 * (v - u);
    let sigma = 1.0308 - 0.26758 * (v + 2.0 / u);
    let z = ((1.0 - w).ln() - mu) / sigma;
    Ok((w, 1.0 - normal_cdf(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand_distr::{Distribution, Exp, StandardNormal};

    #[test]
    fn wilson_contains_estimate() {
        let iv = wilson_interval(90, 100, 0.95);
        assert!(iv.lower < 0.9 && 0.9 < iv.upper);
        let all = wilson_interval(10, 10, 0.95);
        assert_eq!(all.upper, 1.0);
        assert!(all.lower > 0.6);
    }

    #[test]
    fn kolmogorov_known_value() {
        // Q(1.36) ≈ 0.049
        assert!((kolmogorov_q(1.36) - 0.0494).abs() < 1e-3);
    }

    #[test]
    fn ks_accepts_uniform_and_rejects_shift() {
        let mut r = rng::stream(5, 0);
        let u: Vec<f64> = (0..2000).map(|_| r.random::<f64>()).collect();
        assert!(ks_one_sample(&u, |x| x.clamp(0.0, 1.0)).p_value > 0.01);
        let w: Vec<f64> = (0..2000).map(|_| r.random::<f64>() + 0.1).collect();
        assert!(ks_two_sample(&u, &w).p_value < 1e-6);
    }

    #[test]
    fn shapiro_francia_separates_normal_from_exponential() {
        let mut r = rng::stream(11, 0);
        let g: Vec<f64> = (0..1000).map(|_| StandardNormal.sample(&mut r)).collect();
        assert!(shapiro_francia(&g).unwrap().1 > 0.01);
        let e: Vec<f64> = (0..1000)
            .map(|_| Exp::new(1.0).unwrap().sample(&mut r))
            .collect();
        assert!(shapiro_francia(&e).unwrap().1 < 1e-6);
    }

    #[test]
    fn chi_square_rejects_mismatch() {
        let (_, p) = chi_square(&[50.0, 50.0], &[50.0, 50.0]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let (_, p) = chi_square(&[90.0, 10.0], &[50.0, 50.0]).unwrap();
        assert!(p < 1e-10);
    }

    #[test]
    fn variance_se_matches_gaussian_formula() {
        let mut r = rng::stream(3, 0);
        let g: Vec<f64> = (0..20000).map(|_| StandardNormal.sample(&mut r)).collect();
        // For Gaussian data SE(s²) ≈ σ²√(2/(n-1)).
        let expected = (2.0 / 19999.0f64).sqrt();
        assert!((variance_std_error(&g) / expected - 1.0).abs() < 0.05);
    }
}
