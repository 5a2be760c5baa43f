//! Eigenvalue samplers for the (modified) Jacobi unitary ensemble
//!
//! `ρ(λ) ∝ Π_{j<k} |λ_j-λ_k|² Π_i (1-λ_i)^α (1+λ_i)^β e^{t(λ_i)}` on [-1, 1]^N.

use std::io::{self, Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Beta, Distribution, Normal, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cheb::ChebSeries;
use crate::counting::percentile;
use crate::error::{Error, Result};
use crate::rng::{self, StreamRng};
use crate::tridiag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Manova,
    Mcmc,
    Tridiagonal,
}

impl Method {
    fn code(self) -> u8 {
        match self {
            Method::Manova => 0,
            Method::Mcmc => 1,
            Method::Tridiagonal => 2,
        }
    }

    fn from_code(c: u8) -> Option<Self> {
        match c {
            0 => Some(Method::Manova),
            1 => Some(Method::Mcmc),
            2 => Some(Method::Tridiagonal),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default)]
    pub t: ChebSeries,
    pub method: Method,
    #[serde(default)]
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(n: usize, alpha: f64, beta: f64, method: Method, seed: u64) -> Self {
        Self {
            n,
            alpha,
            beta,
            t: ChebSeries::zero(),
            method,
            seed,
        }
    }

    pub fn with_t(mut self, t: ChebSeries) -> Self {
        self.t = t;
        self
    }

    /// Every violated invariant, as human-readable diagnostics.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push("N must be positive".to_string());
        }
        if !(self.alpha > -1.0) || !(self.beta > -1.0) {
            out.push(format!(
                "alpha and beta must exceed -1 (got {}, {})",
                self.alpha, self.beta
            ));
        }
        match self.method {
            Method::Manova => {
                let int_ok = |v: f64| v >= 0.0 && v.fract() == 0.0;
                if !int_ok(self.alpha) || !int_ok(self.beta) {
                    out.push("manova requires integer parameters alpha, beta >= 0".to_string());
                }
                if !self.t.is_zero() {
                    out.push("manova requires an empty perturbation t".to_string());
                }
            }
            Method::Tridiagonal => {
                if !self.t.is_zero() {
                    out.push("tridiagonal requires an empty perturbation t".to_string());
                }
            }
            Method::Mcmc => {}
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.diagnostics();
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(d.join("; ")))
        }
    }
}

/// One sorted draw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSample {
    pub values: Vec<f64>,
    pub spec: EnsembleSpec,
    pub draw_index: u64,
}

fn finish(mut values: Vec<f64>, spec: &EnsembleSpec, draw_index: u64) -> EigenvalueSample {
    for v in values.iter_mut() {
        *v = v.clamp(-1.0, 1.0);
    }
    values.sort_by(f64::total_cmp);
    EigenvalueSample {
        values,
        spec: spec.clone(),
        draw_index,
    }
}

fn complex_gaussian(rows: usize, cols: usize, rng: &mut StreamRng) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(s * re, s * im)
    })
}

/// MANOVA construction from two complex Wishart matrices.
pub fn sample_manova(
    spec: &EnsembleSpec,
    rng: &mut StreamRng,
    draw_index: u64,
) -> Result<EigenvalueSample> {
    if spec.method != Method::Manova {
        return Err(Error::InvalidSpec("sample_manova requires method=manova".into()));
    }
    spec.validate()?;
    let n = spec.n;
    let n1 = n + spec.alpha as usize;
    let n2 = n + spec.beta as usize;
    let a = complex_gaussian(n1, n, rng);
    let b = complex_gaussian(n2, n, rng);
    let wa = a.adjoint() * &a;
    let wb = b.adjoint() * &b;
    let sum = &wa + &wb;
    let chol = sum
        .cholesky()
        .ok_or_else(|| Error::Numeric("Cholesky of A+B failed (not positive definite)".into()))?;
    let l = chol.l();
    let x = l
        .solve_lower_triangular(&wa)
        .ok_or_else(|| Error::Numeric("triangular solve L⁻¹A failed".into()))?;
    let c = l
        .solve_lower_triangular(&x.adjoint())
        .ok_or_else(|| Error::Numeric("triangular solve L⁻¹(L⁻¹A)* failed".into()))?;
    let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = c.symmetric_eigen();
    let values: Vec<f64> = eig.eigenvalues.iter().map(|&x| 1.0 - 2.0 * x).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!(
            "Hermitian eigensolver returned non-finite values for N={n}"
        )));
    }
    Ok(finish(values, spec, draw_index))
}

/// `B(s, t)` variate on [-1, 1] with density `∝ (1-x)^{s-1} (1+x)^{t-1}`.
fn beta_pm1(s: f64, t: f64, rng: &mut StreamRng) -> Result<f64> {
    let d = Beta::new(t, s).map_err(|e| Error::InvalidSpec(format!("Beta({t}, {s}): {e}")))?;
    let y: f64 = d.sample(rng);
    Ok(2.0 * y - 1.0)
}

/// β = 2 Jacobi matrix model with independent Beta-distributed Verblunsky
/// coefficients; valid for all real α, β > -1.
pub fn sample_tridiagonal(
    spec: &EnsembleSpec,
    rng: &mut StreamRng,
    draw_index: u64,
) -> Result<EigenvalueSample> {
    if spec.method != Method::Tridiagonal {
        return Err(Error::InvalidSpec(
            "sample_tridiagonal requires method=tridiagonal".into(),
        ));
    }
    spec.validate()?;
    let n = spec.n;
    let (a, b) = (spec.alpha, spec.beta);
    // coef[k + 1] holds α_k for k = -1..=2n-1.
    let mut coef = vec![0.0; 2 * n + 1];
    coef[0] = -1.0;
    coef[2 * n] = -1.0;
    for k in 0..(2 * n - 1) {
        let m = (2 * n - k) as f64;
        coef[k + 1] = if k % 2 == 0 {
            let s = 0.5 * (m - 2.0);
            beta_pm1(s + a + 1.0, s + b + 1.0, rng)?
        } else {
            beta_pm1(0.5 * (m - 3.0) + a + b + 2.0, 0.5 * (m - 1.0), rng)?
        };
    }
    let al = |k: isize| coef[(k + 1) as usize];
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n as isize {
        let prev = if k == 0 { 0.0 } else { al(2 * k - 2) };
        diag.push((1.0 - al(2 * k - 1)) * al(2 * k) - (1.0 + al(2 * k - 1)) * prev);
        if (k as usize) + 1 < n {
            let v = (1.0 - al(2 * k - 1)) * (1.0 - al(2 * k) * al(2 * k)) * (1.0 + al(2 * k + 1));
            off.push(v.max(0.0).sqrt());
        }
    }
    let values = tridiag::eigenvalues(&diag, &off)?
        .into_iter()
        .map(|v| 0.5 * v)
        .collect();
    Ok(finish(values, spec, draw_index))
}

/// Unnormalized log-density of the ensemble; `-∞` outside (-1, 1)^N.
pub fn log_density(spec: &EnsembleSpec, values: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let p = single_site(spec, x);
        if p == f64::NEG_INFINITY {
            return p;
        }
        s += p;
        for &y in &values[i + 1..] {
            s += 2.0 * (x - y).abs().ln();
        }
    }
    s
}

fn single_site(spec: &EnsembleSpec, x: f64) -> f64 {
    if !(x > -1.0 && x < 1.0) {
        return f64::NEG_INFINITY;
    }
    let mut v = 0.0;
    if spec.alpha != 0.0 {
        v += spec.alpha * (1.0 - x).ln();
    }
    if spec.beta != 0.0 {
        v += spec.beta * (1.0 + x).ln();
    }
    if !spec.t.is_zero() {
        v += spec.t.eval(x);
    }
    v
}

/// Tuning and thinning parameters of the Metropolis sampler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McmcConfig {
    /// Sweeps during which per-coordinate proposal scales are adapted.
    pub burn_in: usize,
    /// Initial proposal standard deviation, in units of the local quantile
    /// spacing.
    pub initial_scale: f64,
    /// Sweeps between kept states; `None` means N.
    pub thin: Option<usize>,
}

impl Default for McmcConfig {
    fn default() -> Self {
        Self {
            burn_in: 200,
            initial_scale: 1.0,
            thin: None,
        }
    }
}

const TUNE_BATCH: usize = 10;
const TARGET_LOW: f64 = 0.30;
const TARGET_HIGH: f64 = 0.50;

/// Metropolis chain with single-coordinate Gaussian proposals.
#[derive(Debug, Clone)]
pub struct McmcChain {
    spec: EnsembleSpec,
    state: Vec<f64>,
    scales: Vec<f64>,
    accepted: Vec<usize>,
    proposed: usize,
    tuning: bool,
    sweeps_done: usize,
    total_accepted: u64,
    total_proposed: u64,
}

impl McmcChain {
    /// Starts from the quantiles κ_j unless `initial` is given.
    pub fn new(spec: &EnsembleSpec, config: &McmcConfig, initial: Option<Vec<f64>>) -> Result<Self> {
        spec.validate()?;
        if !(config.initial_scale > 0.0) {
            return Err(Error::Config(format!(
                "proposal scale must be positive, got {}",
                config.initial_scale
            )));
        }
        let n = spec.n;
        let state = match initial {
            Some(v) => {
                if v.len() != n {
                    return Err(Error::Config(format!(
                        "initial state has {} coordinates, expected {n}",
                        v.len()
                    )));
                }
                let mut sorted = v.clone();
                sorted.sort_by(f64::total_cmp);
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Degenerate(
                        "initial state has coincident coordinates".into(),
                    ));
                }
                if v.iter().any(|x| !(*x > -1.0 && *x < 1.0)) {
                    return Err(Error::Domain("initial state must lie in (-1, 1)".into()));
                }
                v
            }
            None => (1..=n).map(|j| percentile(j, n)).collect::<Result<_>>()?,
        };
        // Local spacing of the quantiles: π√(1-κ²)/N, floored at the edge scale.
        let nf = n as f64;
        let scales = state
            .iter()
            .map(|&x| {
                let local = std::f64::consts::PI * (1.0 - x * x).max(0.0).sqrt() / nf;
                config.initial_scale * local.max(1.0 / (nf * nf))
            })
            .collect();
        Ok(Self {
            spec: spec.clone(),
            state,
            scales,
            accepted: vec![0; n],
            proposed: 0,
            tuning: true,
            sweeps_done: 0,
            total_accepted: 0,
            total_proposed: 0,
        })
    }

    pub fn state(&self) -> &[f64] {
        &self.state
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Acceptance rate since the scales were frozen (or overall while tuning).
    pub fn acceptance_rate(&self) -> f64 {
        if self.total_proposed == 0 {
            0.0
        } else {
            self.total_accepted as f64 / self.total_proposed as f64
        }
    }

    /// Stops adapting proposal scales.
    pub fn freeze(&mut self) {
        self.tuning = false;
        self.total_accepted = 0;
        self.total_proposed = 0;
    }

    fn delta(&self, i: usize, proposal: f64) -> f64 {
        let site = single_site(&self.spec, proposal);
        if site == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let old = self.state[i];
        let mut d = site - single_site(&self.spec, old);
        for (j, &y) in self.state.iter().enumerate() {
            if j != i {
                d += 2.0 * ((proposal - y).abs().ln() - (old - y).abs().ln());
            }
        }
        d
    }

    /// One full sweep of single-coordinate updates.
    pub fn sweep(&mut self, rng: &mut StreamRng) {
        let n = self.state.len();
        for i in 0..n {
            let step: f64 = Normal::new(0.0, self.scales[i])
                .expect("scales are positive")
                .sample(rng);
            let proposal = self.state[i] + step;
            let d = self.delta(i, proposal);
            let u: f64 = rng.random();
            if d > f64::NEG_INFINITY && u.ln() < d {
                self.state[i] = proposal;
                self.accepted[i] += 1;
                self.total_accepted += 1;
            }
            self.total_proposed += 1;
        }
        self.proposed += 1;
        self.sweeps_done += 1;
        if self.tuning && self.proposed == TUNE_BATCH {
            for (s, a) in self.scales.iter_mut().zip(self.accepted.iter_mut()) {
                let rate = *a as f64 / TUNE_BATCH as f64;
                if rate < TARGET_LOW {
                    *s *= 0.8;
                } else if rate > TARGET_HIGH {
                    *s *= 1.25;
                }
                *a = 0;
            }
            self.proposed = 0;
        }
    }

    /// Sorted copy of the current state.
    pub fn snapshot(&self, draw_index: u64) -> EigenvalueSample {
        finish(self.state.clone(), &self.spec, draw_index)
    }
}

/// Runs `sweeps` sweeps, adapting scales during the first `config.burn_in`,
/// and returns the final state.
pub fn sample_mcmc(
    spec: &EnsembleSpec,
    sweeps: usize,
    config: &McmcConfig,
    rng: &mut StreamRng,
    draw_index: u64,
) -> Result<EigenvalueSample> {
    if spec.method != Method::Mcmc {
        return Err(Error::InvalidSpec("sample_mcmc requires method=mcmc".into()));
    }
    if sweeps < config.burn_in {
        return Err(Error::Config(format!(
            "sweeps ({sweeps}) must be at least the burn-in ({})",
            config.burn_in
        )));
    }
    let mut chain = McmcChain::new(spec, config, None)?;
    for _ in 0..config.burn_in {
        chain.sweep(rng);
    }
    chain.freeze();
    for _ in config.burn_in..sweeps {
        chain.sweep(rng);
    }
    Ok(chain.snapshot(draw_index))
}

/// `keep` thinned states from a single chain after burn-in.
pub fn mcmc_states(
    spec: &EnsembleSpec,
    keep: usize,
    config: &McmcConfig,
    rng: &mut StreamRng,
) -> Result<Vec<EigenvalueSample>> {
    let mut chain = McmcChain::new(spec, config, None)?;
    for _ in 0..config.burn_in {
        chain.sweep(rng);
    }
    chain.freeze();
    let thin = config.thin.unwrap_or(spec.n).max(1);
    let mut out = Vec::with_capacity(keep);
    for k in 0..keep {
        for _ in 0..thin {
            chain.sweep(rng);
        }
        out.push(chain.snapshot(k as u64));
    }
    Ok(out)
}

/// Draw number `draw_index` of `spec` using its own random stream.
pub fn sample(spec: &EnsembleSpec, draw_index: u64, mcmc: &McmcConfig) -> Result<EigenvalueSample> {
    let mut rng = rng::stream(spec.seed, draw_index);
    match spec.method {
        Method::Manova => sample_manova(spec, &mut rng, draw_index),
        Method::Tridiagonal => sample_tridiagonal(spec, &mut rng, draw_index),
        Method::Mcmc => {
            let sweeps = mcmc.burn_in + mcmc.thin.unwrap_or(spec.n).max(1);
            sample_mcmc(spec, sweeps, mcmc, &mut rng, draw_index)
        }
    }
}

/// Draws `count` independent samples in parallel; output is in draw order
/// regardless of scheduling.
pub fn sample_batch(
    spec: &EnsembleSpec,
    count: usize,
    mcmc: &McmcConfig,
) -> Result<Vec<EigenvalueSample>> {
    spec.validate()?;
    (0..count as u64)
        .into_par_iter()
        .map(|i| sample(spec, i, mcmc))
        .collect()
}

/// Applies `stat` to `count` independent draws in parallel without keeping
/// the samples.
pub fn map_draws<T: Send>(
    spec: &EnsembleSpec,
    count: usize,
    mcmc: &McmcConfig,
    stat: impl Fn(&EigenvalueSample) -> T + Sync + Send,
) -> Result<Vec<T>> {
    spec.validate()?;
    (0..count as u64)
        .into_par_iter()
        .map(|i| sample(spec, i, mcmc).map(|s| stat(&s)))
        .collect()
}

const MAGIC: &[u8; 4] = b"JUEB";
const FORMAT_VERSION: u32 = 1;

/// Writes a batch in the compact binary format: magic, version, N, α, β,
/// method, seed, draw count, then N·count little-endian f64 values.
pub fn write_binary(mut w: impl Write, samples: &[EigenvalueSample]) -> io::Result<()> {
    let first = samples
        .first()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "empty batch"))?;
    let spec = &first.spec;
    w.write_all(MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&(spec.n as u64).to_le_bytes())?;
    w.write_all(&spec.alpha.to_le_bytes())?;
    w.write_all(&spec.beta.to_le_bytes())?;
    w.write_all(&[spec.method.code()])?;
    w.write_all(&spec.seed.to_le_bytes())?;
    w.write_all(&(samples.len() as u64).to_le_bytes())?;
    for s in samples {
        if s.values.len() != spec.n {
            return Err(io::Error::new(
                io::ErrorKind::InvalidInput,
                "samples in a batch must share N",
            ));
        }
        for v in &s.values {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Reads a batch written by [`write_binary`]. The perturbation `t` is not
/// stored and comes back empty.
pub fn read_binary(mut r: impl Read) -> io::Result<Vec<EigenvalueSample>> {
    let bad = |m: &str| io::Error::new(io::ErrorKind::InvalidData, m.to_string());
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(bad("not a juelab batch file"));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4)?;
    if u32::from_le_bytes(b4) != FORMAT_VERSION {
        return Err(bad("unsupported batch format version"));
    }
    let mut next_u64 = |r: &mut dyn Read| -> io::Result<u64> {
        r.read_exact(&mut b8)?;
        Ok(u64::from_le_bytes(b8))
    };
    let n = next_u64(&mut r)? as usize;
    let alpha = f64::from_bits(next_u64(&mut r)?);
    let beta = f64::from_bits(next_u64(&mut r)?);
    let mut m = [0u8; 1];
    r.read_exact(&mut m)?;
    let method = Method::from_code(m[0]).ok_or_else(|| bad("unknown method code"))?;
    let seed = next_u64(&mut r)?;
    let count = next_u64(&mut r)?;
    let spec = EnsembleSpec::new(n, alpha, beta, method, seed);
    let mut out = Vec::with_capacity(count as usize);
    for d in 0..count {
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            values.push(f64::from_bits(next_u64(&mut r)?));
        }
        out.push(EigenvalueSample {
            values,
            spec: spec.clone(),
            draw_index: d,
        });
    }
    Ok(out)
}
