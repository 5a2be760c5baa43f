//! Log-correlated Gaussian field on (-1, 1) and its multiplicative chaos.
//!
//! The kernel `Σ(x, y) = log|(1 - xy + √(1-x²)√(1-y²))/(x - y)|` equals
//! `Σ_k (2/k) sin kθ sin kφ` with `θ = arccos(-x)`, `φ = arccos(-y)`, so the
//! field is simulated through its sine expansion
//! `X(x) = Σ_k √(2/k) sin(kθ) g_k`.

use std::f64::consts::{PI, SQRT_2};

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::mollifier;
use crate::error::{Error, Result};
use crate::hankel::{log_exp_moment, WeightSpec};
use crate::quadrature::{gauss_legendre, GaussRule};
use crate::rng::{self, StreamRng};
use crate::sampler::{self, EnsembleSpec, McmcConfig};
use crate::stats::{ks_two_sample, mean, variance, KsResult};

const SQRT2_PI: f64 = SQRT_2 * PI;

/// Closed-form covariance kernel; diverges on the diagonal.
pub fn kernel_sigma(x: f64, y: f64) -> Result<f64> {
    if x == y {
        return Err(Error::Degenerate(format!("kernel diverges at x = y = {x}")));
    }
    if !(x > -1.0 && x < 1.0 && y > -1.0 && y < 1.0) {
        return Err(Error::Domain(format!("kernel needs x, y in (-1, 1), got ({x}, {y})")));
    }
    let num = 1.0 - x * y + (1.0 - x * x).sqrt() * (1.0 - y * y).sqrt();
    Ok((num / (x - y)).abs().ln())
}

/// `sin(kθ)` for `k = 1..=K` by the Chebyshev recurrence.
fn sines(theta: f64, k: usize, out: &mut Vec<f64>) {
    out.clear();
    let (s1, c) = theta.sin_cos();
    let (mut prev, mut cur) = (0.0, s1);
    for _ in 0..k {
        out.push(cur);
        let next = 2.0 * c * cur - prev;
        prev = cur;
        cur = next;
    }
}

/// `K`-term partial sum of the sine expansion of `Σ`.
pub fn kernel_series(x: f64, y: f64, k: usize) -> f64 {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    sines((-x).acos(), k, &mut a);
    sines((-y).acos(), k, &mut b);
    a.iter()
        .zip(&b)
        .enumerate()
        .map(|(i, (s, t))| 2.0 / (i + 1) as f64 * s * t)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    /// `g_k` for `k = 1..=K`.
    pub g: Vec<f64>,
}

impl FieldSample {
    pub fn k(&self) -> usize {
        self.g.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut s = Vec::with_capacity(self.g.len());
        sines((-x.clamp(-1.0, 1.0)).acos(), self.g.len(), &mut s);
        s.iter()
            .zip(&self.g)
            .enumerate()
            .map(|(i, (si, gi))| (2.0 / (i + 1) as f64).sqrt() * si * gi)
            .sum()
    }

    /// `Var X_K(x) = Σ_{k≤K} (2/k) sin²(kθ)`.
    pub fn variance_at(k: usize, x: f64) -> f64 {
        kernel_series(x, x, k)
    }
}

pub fn sample_field(k: usize, rng: &mut StreamRng) -> Result<FieldSample> {
    if k == 0 {
        return Err(Error::Config("field truncation K must be at least 1".into()));
    }
    Ok(FieldSample {
        g: (0..k).map(|_| StandardNormal.sample(rng)).collect(),
    })
}

/// Mollified sine basis `s_k^ε(x) = ∫_{-1}^{1} φ_ε(x - u) sin(k arccos(-u)) du`
/// tabulated on a fixed set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifiedBasis {
    pub eps: f64,
    pub points: Vec<f64>,
    /// `values[i][k-1] = s_k^ε(points[i])`.
    pub values: Vec<Vec<f64>>,
}

/// Composite Gauss–Legendre rule in `ψ ∈ [0, π]` (with `u = -cos ψ`)
/// that resolves both the Cauchy peak at `x` and oscillations up to
/// frequency `k`.
fn convolution_rule(x: f64, eps: f64, k: usize) -> Result<GaussRule> {
    let base = gauss_legendre(16)?;
    let psi0 = (-x).clamp(-1.0, 1.0).acos();
    let peak = (eps / psi0.sin().max(eps)).max(1e-6);
    let osc = PI / (k.max(1) as f64);
    let mut cuts = vec![0.0, PI];
    let mut s = peak;
    while s < PI {
        for c in [psi0 - s, psi0 + s] {
            if c > 0.0 && c < PI {
                cuts.push(c);
            }
        }
        s *= 2.0;
    }
    cuts.push(psi0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let pieces = (((b - a) / (2.0 * osc)).ceil() as usize).max(1);
        let h = (b - a) / pieces as f64;
        for p in 0..pieces {
            let r = base.mapped(a + p as f64 * h, a + (p + 1) as f64 * h);
            nodes.extend(r.nodes);
            weights.extend(r.weights);
        }
    }
    Ok(GaussRule { nodes, weights })
}

impl MollifiedBasis {
    pub fn new(k: usize, eps: f64, points: &[f64]) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
        }
        let values = points
            .par_iter()
            .map(|&x| {
                let rule = convolution_rule(x, eps, k)?;
                let mut acc = vec![0.0; k];
                let mut s = Vec::with_capacity(k);
                for (&psi, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let u = -psi.cos();
                    let f = w * mollifier(eps, x - u) * psi.sin();
                    sines(psi, k, &mut s);
                    for (a, si) in acc.iter_mut().zip(&s) {
                        *a += f * si;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            eps,
            points: points.to_vec(),
            values,
        })
    }

    pub fn k(&self) -> usize {
        self.values.first().map_or(0, |v| v.len())
    }

    /// `X_ε` at every tabulated point.
    pub fn eval(&self, field: &FieldSample) -> Vec<f64> {
        self.values
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&field.g)
                    .enumerate()
                    .map(|(i, (s, g))| (2.0 / (i + 1) as f64).sqrt() * s * g)
                    .sum()
            })
            .collect()
    }

    /// `Var X_ε` at every tabulated point.
    pub fn variance(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(i, s)| 2.0 / (i + 1) as f64 * s * s)
                    .sum()
            })
            .collect()
    }
}

/// Evaluator for the mollified field `X_ε(x) = ∫_{-1}^{1} φ_ε(x - u) X(u) du`.
pub fn mollify_field(field: &FieldSample, eps: f64, points: &[f64]) -> Result<Vec<f64>> {
    Ok(MollifiedBasis::new(field.k(), eps, points)?.eval(field))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmcWeights {
    pub grid: Vec<f64>,
    pub weights: Vec<f64>,
    pub gamma: f64,
}

fn check_gamma(gamma: f64) {
    if !(gamma > 0.0 && gamma < SQRT_2) {
        log::warn!("gamma = {gamma} lies outside the subcritical range (0, √2)");
    }
}

/// `e^{γ X_ε(x) - γ² Var X_ε(x)/2}` on the basis points.
pub fn gmc_weights(basis: &MollifiedBasis, field: &FieldSample, gamma: f64) -> GmcWeights {
    check_gamma(gamma);
    let x = basis.eval(field);
    let v = basis.variance();
    GmcWeights {
        grid: basis.points.clone(),
        weights: x
            .iter()
            .zip(&v)
            .map(|(xe, ve)| (gamma * xe - 0.5 * gamma * gamma * ve).exp())
            .collect(),
        gamma,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalComparison {
    /// Chebyshev index of the test function `T_k`.
    pub k: usize,
    pub ks: KsResult,
    pub eigen_mean: f64,
    pub field_mean: f64,
    pub mean_difference: f64,
    /// Eigenvalue-side variance over field-side variance.
    pub variance_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureComparison {
    pub n: usize,
    pub gamma: f64,
    pub eps: f64,
    pub trials: usize,
    pub field_terms: usize,
    pub functionals: Vec<FunctionalComparison>,
}

/// Options for [`compare_measures`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    /// Gauss–Legendre nodes of the integration grid on [-1, 1].
    pub grid_points: usize,
    /// Sine terms of the field truncation.
    pub field_terms: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            grid_points: 96,
            field_terms: 512,
        }
    }
}

/// Distributional comparison of `∫ T_k dμ_N^γ` (eigenvalue side, normalized
/// by the Hankel value of `𝔼 e^{γ h_N}`) with `∫ T_k dμ_ε^γ` (field side),
/// for `k = 0, 1, 2`.
pub fn compare_measures(
    spec: &EnsembleSpec,
    gamma: f64,
    eps: f64,
    trials: usize,
    opts: &CompareOptions,
    mcmc: &McmcConfig,
) -> Result<MeasureComparison> {
    if trials < 100 {
        return Err(Error::Config(format!("compare_measures needs at least 100 trials, got {trials}")));
    }
    check_gamma(gamma);
    spec.validate()?;
    let rule = gauss_legendre(opts.grid_points)?;
    let grid = rule.nodes.clone();
    let base = WeightSpec::jacobi(spec.alpha, spec.beta).with_t(spec.t.clone());
    let log_norm: Vec<f64> = grid
        .par_iter()
        .map(|&x| log_exp_moment(spec.n, x, gamma, &base))
        .collect::<Result<_>>()?;
    let cheb = |k: usize, x: f64| (k as f64 * x.acos()).cos();

    let eigen: Vec<[f64; 3]> = sampler::map_draws(spec, trials, mcmc, |s| {
        let mut m = [0.0; 3];
        let n = s.values.len() as f64;
        for (i, (&x, &w)) in grid.iter().zip(&rule.weights).enumerate() {
            let count = s.values.partition_point(|&l| l <= x) as f64;
            let h = SQRT2_PI * (count - n * crate::counting::cdf_unchecked(x));
            let d = w * (gamma * h - log_norm[i]).exp();
            for (k, mk) in m.iter_mut().enumerate() {
                *mk += d * cheb(k, x);
            }
        }
        m
    })?;

    let basis = MollifiedBasis::new(opts.field_terms, eps, &grid)?;
    let field_seed = rng::derive_seed(spec.seed, "field");
    let field: Vec<[f64; 3]> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::stream(field_seed, i);
            let f = sample_field(opts.field_terms, &mut r)?;
            let gw = gmc_weights(&basis, &f, gamma);
            let mut m = [0.0; 3];
            for ((&x, &w), &q) in grid.iter().zip(&gw.weights).zip(&rule.weights) {
                for (k, mk) in m.iter_mut().enumerate() {
                    *mk += q * w * cheb(k, x);
                }
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;

    let functionals = (0..3)
        .map(|k| {
            let a: Vec<f64> = eigen.iter().map(|m| m[k]).collect();
            let b: Vec<f64> = field.iter().map(|m| m[k]).collect();
            let (ma, mb) = (mean(&a), mean(&b));
            let (va, vb) = (variance(&a), variance(&b));
            FunctionalComparison {
                k,
                ks: ks_two_sample(&a, &b),
                eigen_mean: ma,
                field_mean: mb,
                mean_difference: ma - mb,
                variance_ratio: if vb > 0.0 { va / vb } else { f64::NAN },
            }
        })
        .collect();
    Ok(MeasureComparison {
        n: spec.n,
        gamma,
        eps,
        trials,
        field_terms: opts.field_terms,
        functionals,
    })
}
