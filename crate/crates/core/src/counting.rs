//! Counting function, quantiles and rigidity statistics.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::{self, EnsembleSpec, McmcConfig};
use crate::stats::{wilson_interval, Interval};

const SQRT2_PI: f64 = SQRT_2 * PI;

/// Arcsine distribution function `F(x) = 1 - arccos(x)/π`.
pub fn arcsine_cdf(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("arcsine_cdf needs x in [-1, 1], got {x}")));
    }
    Ok(cdf_unchecked(x))
}

/// Same as [`arcsine_cdf`] without the domain check; uses half-angle forms
/// near ±1 where `arccos` is ill-conditioned.
#[inline]
pub(crate) fn cdf_unchecked(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    if x < -0.5 {
        2.0 / PI * (0.5 * (1.0 + x)).sqrt().asin()
    } else if x > 0.5 {
        1.0 - 2.0 / PI * (0.5 * (1.0 - x)).sqrt().asin()
    } else {
        0.5 + x.asin() / PI
    }
}

/// Quantile `κ_j = -cos((j - 1/2)π/N)`.
pub fn percentile(j: usize, n: usize) -> Result<f64> {
    if j == 0 || j > n {
        return Err(Error::Domain(format!("percentile index {j} outside 1..={n}")));
    }
    Ok(-((j as f64 - 0.5) * PI / n as f64).cos())
}

/// `h_N(x) = √2π (#{λ_j ≤ x} - N F(x))` for sorted `values`.
pub fn counting_h(values: &[f64], x: f64) -> Result<f64> {
    let f = arcsine_cdf(x)?;
    let count = values.partition_point(|&l| l <= x);
    Ok(SQRT2_PI * (count as f64 - values.len() as f64 * f))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidityStats {
    pub sup_h: f64,
    pub inf_h: f64,
    pub max_scaled_fluct: f64,
    /// 1-based index attaining `max_scaled_fluct` (smallest on ties).
    pub argmax_index: usize,
}

/// Extremes of `h_N` (attained at the jumps) and the maximal scaled
/// deviation `max_j |λ_j - κ_j| / √(1-κ_j²)` for sorted `values`.
pub fn rigidity_stats(values: &[f64]) -> RigidityStats {
    let n = values.len();
    let nf = n as f64;
    let mut sup = 0.0f64;
    let mut inf = 0.0f64;
    let mut best = 0.0f64;
    let mut arg = 1;
    for (idx, &l) in values.iter().enumerate() {
        let j = idx + 1;
        let nf_l = nf * cdf_unchecked(l);
        sup = sup.max(j as f64 - nf_l);
        inf = inf.min(j as f64 - 1.0 - nf_l);
        let angle = (j as f64 - 0.5) * PI / nf;
        let kappa = -angle.cos();
        let scaled = (l - kappa).abs() / angle.sin();
        if scaled > best {
            best = scaled;
            arg = j;
        }
    }
    RigidityStats {
        sup_h: SQRT2_PI * sup,
        inf_h: SQRT2_PI * inf,
        max_scaled_fluct: best,
        argmax_index: arg,
    }
}

/// `max h_N` over the edge window `[-1, κ_m]`, `m = min(N, ⌈2 log N⌉)`.
pub fn edge_window_max(values: &[f64]) -> f64 {
    let n = values.len();
    let m = ((2.0 * (n as f64).ln()).ceil() as usize).clamp(1, n);
    let edge = -((m as f64 - 0.5) * PI / n as f64).cos();
    let nf = n as f64;
    let mut best = 0.0f64;
    for (idx, &l) in values.iter().enumerate() {
        if l > edge {
            break;
        }
        best = best.max(idx as f64 + 1.0 - nf * cdf_unchecked(l));
    }
    SQRT2_PI * best
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub n: usize,
    pub seed: u64,
    pub draw_index: u64,
    pub stats: RigidityStats,
    pub edge_window_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub n: usize,
    pub trials: usize,
    pub epsilon: f64,
    /// Event `max_scaled_fluct ∈ [(1-ε), (1+ε)]·log N/N`.
    pub fluct_event: Interval,
    /// Event `max_x h_N ∈ [(1-ε), (1+ε)]·√2 log N`.
    pub sup_event: Interval,
    /// Event `max_x (-h_N) ∈ [(1-ε), (1+ε)]·√2 log N`.
    pub inf_event: Interval,
    pub rows: Vec<TrialRow>,
}

/// Monte Carlo frequencies of the rigidity events with Wilson intervals.
pub fn mc_rigidity(
    spec: &EnsembleSpec,
    trials: usize,
    epsilon: f64,
    mcmc: &McmcConfig,
) -> Result<RigidityReport> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Config(format!("epsilon must be positive, got {epsilon}")));
    }
    spec.validate()?;
    let rows: Vec<TrialRow> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = sampler::sample(spec, i, mcmc)?;
            Ok(TrialRow {
                n: spec.n,
                seed: spec.seed,
                draw_index: i,
                stats: rigidity_stats(&s.values),
                edge_window_max: edge_window_max(&s.values),
            })
        })
        .collect::<Result<_>>()?;
    let nf = spec.n as f64;
    let log_n = nf.ln();
    let within = |v: f64, scale: f64| {
        let lo = ((1.0 - epsilon) * scale).max(0.0);
        v >= lo && v <= (1.0 + epsilon) * scale
    };
    let count = |pred: &dyn Fn(&TrialRow) -> bool| rows.iter().filter(|r| pred(r)).count();
    let fl = count(&|r| within(r.stats.max_scaled_fluct, log_n / nf));
    let su = count(&|r| within(r.stats.sup_h, SQRT_2 * log_n));
    let inf = count(&|r| within(-r.stats.inf_h, SQRT_2 * log_n));
    Ok(RigidityReport {
        n: spec.n,
        trials,
        epsilon,
        fluct_event: wilson_interval(fl, trials, 0.95),
        sup_event: wilson_interval(su, trials, 0.95),
        inf_event: wilson_interval(inf, trials, 0.95),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cdf_examples() {
        assert_eq!(arcsine_cdf(-1.0).unwrap(), 0.0);
        assert_eq!(arcsine_cdf(1.0).unwrap(), 1.0);
        assert!((arcsine_cdf(0.0).unwrap() - 0.5).abs() < 1e-16);
        assert!((arcsine_cdf(0.5f64.sqrt()).unwrap() - 0.75).abs() < 1e-15);
        assert!(arcsine_cdf(1.0 + 1e-12).is_err());
    }

    #[test]
    fn percentile_examples() {
        assert!((percentile(1, 2).unwrap() + 0.5f64.sqrt()).abs() < 1e-15);
        assert!(percentile(5, 9).unwrap().abs() < 1e-16);
        assert!(percentile(0, 3).is_err());
        assert!(percentile(4, 3).is_err());
    }

    #[test]
    fn h_vanishes_at_endpoints() {
        let v = [-0.3, 0.1, 0.7];
        assert_eq!(counting_h(&v, -1.0).unwrap(), 0.0);
        assert!(counting_h(&v, 1.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn one_particle_just_above() {
        let x = 0.2 + 1e-9;
        let h = counting_h(&[0.2], x).unwrap();
        let f = arcsine_cdf(x).unwrap();
        assert!((h - SQRT2_PI * (1.0 - f)).abs() < 1e-15);
    }

    #[test]
    fn exact_quantiles_have_zero_fluctuation() {
        let n = 11;
        let v: Vec<f64> = (1..=n).map(|j| percentile(j, n).unwrap()).collect();
        let s = rigidity_stats(&v);
        assert!(s.max_scaled_fluct < 1e-15);
        assert_eq!(s.argmax_index, 1);
        assert!(s.sup_h >= 0.0 && s.inf_h <= 0.0);
    }

    #[test]
    fn zero_trials_is_config_error() {
        let spec = EnsembleSpec::new(5, 0.0, 0.0, sampler::Method::Tridiagonal, 1);
        assert!(matches!(
            mc_rigidity(&spec, 0, 0.5, &McmcConfig::default()),
            Err(Error::Config(_))
        ));
    }

    proptest! {
        #[test]
        fn cdf_inverts_percentile(n in 1usize..10_000, seed in 0usize..usize::MAX) {
            let j = seed % n + 1;
            let k = percentile(j, n).unwrap();
            let f = arcsine_cdf(k).unwrap();
            // Storing κ_j as f64 already perturbs F by ulp(κ)·F'(κ), which near
            // the edge exceeds 1e-14 once N is in the thousands.
            let angle = (j as f64 - 0.5) * PI / n as f64;
            let ulp = f64::EPSILON * k.abs().max(f64::MIN_POSITIVE);
            let representation = ulp / (PI * angle.sin());
            prop_assert!((f - (j as f64 - 0.5) / n as f64).abs() < 1e-14 + representation);
            let mirror = percentile(n + 1 - j, n).unwrap();
            prop_assert!((k + mirror).abs() < 1e-15);
        }

        #[test]
        fn jump_point_extremes_match_grid(mut v in prop::collection::vec(-0.999f64..0.999, 1..12)) {
            v.sort_by(f64::total_cmp);
            let s = rigidity_stats(&v);
            let (mut hi, mut lo) = (0.0f64, 0.0f64);
            for k in 0..=100_000 {
                let x = -1.0 + 2.0 * k as f64 / 100_000.0;
                let h = counting_h(&v, x).unwrap();
                hi = hi.max(h);
                lo = lo.min(h);
            }
            // The grid sees values just right of each jump, which approach the
            // supremum from below; the infimum is approached from above.
            prop_assert!(s.sup_h >= hi - 1e-12 && s.sup_h - hi < 1e-3 * v.len() as f64);
            prop_assert!(s.inf_h <= lo + 1e-12 && lo - s.inf_h < 1e-3 * v.len() as f64);
        }

        #[test]
        fn step_property(mut v in prop::collection::vec(-0.99f64..0.99, 2..20)) {
            v.sort_by(f64::total_cmp);
            v.dedup();
            let n = v.len() as f64;
            for w in v.windows(2) {
                let right_of_first = counting_h(&v, w[0]).unwrap();
                let count = v.partition_point(|&l| l < w[1]) as f64;
                let left_of_next = SQRT2_PI * (count - n * arcsine_cdf(w[1]).unwrap());
                let expected = -SQRT2_PI * n * (arcsine_cdf(w[1]).unwrap() - arcsine_cdf(w[0]).unwrap());
                prop_assert!((left_of_next - right_of_first - expected).abs() < 1e-12);
            }
        }
    }
}
