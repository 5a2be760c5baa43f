//! Experiment execution: one function per experiment kind.

use anyhow::{bail, Context, Result};
use juelab_core::asymptotics::{
    clt_moments, predict_edge_ratio, predict_merging_ratio, predict_separated_ratio,
};
use juelab_core::counting::mc_rigidity;
use juelab_core::field::{compare_measures, sample_field, CompareOptions, MollifiedBasis};
use juelab_core::hankel::{log_hankel, log_hankel_detailed, HankelOptions};
use juelab_core::parametrix::{bessel_suite, hg_suite, model_m_suite, pinf_suite, ParametrixReport};
use juelab_core::rng;
use juelab_core::sampler::{map_draws, sample_batch, write_binary};
use juelab_core::stats::{mean, std_error, variance, variance_std_error};
use juelab_core::WeightSpec;
use num_complex::Complex64;
use serde_json::json;

use crate::config::{ExperimentConfig, Kind, ParametrixObjectName};
use crate::table::{write_atomic, Cell, Metadata, ResultTable};

/// Seed for the N-th entry of the N-list, so that different sizes use
/// independent streams.
fn seed_for(config: &ExperimentConfig, n: usize) -> u64 {
    rng::derive_seed(config.seed, &format!("n={n}"))
}

fn trials(config: &ExperimentConfig) -> usize {
    config.trials.unwrap_or(0)
}

/// Runs a validated config. Outputs are not written; see [`write_outputs`].
pub fn run(config: &ExperimentConfig) -> Result<ResultTable> {
    let kind = config.kind()?;
    let diagnostics = config.diagnostics();
    if !diagnostics.is_empty() {
        bail!("invalid config:\n  {}", diagnostics.join("\n  "));
    }
    let meta = Metadata::for_config(config);
    let table = match kind {
        Kind::Sample => sample(config, meta),
        Kind::Rigidity => rigidity(config, meta),
        Kind::Clt => clt(config, meta),
        Kind::HankelSweep => hankel_sweep(config, meta),
        Kind::EdgeAsymptotics => edge(config, meta),
        Kind::MergingAsymptotics => merging(config, meta),
        Kind::SeparatedAsymptotics => separated(config, meta),
        Kind::GmcCompare => gmc_compare(config, meta),
        Kind::GmcTrace => gmc_trace(config, meta),
        Kind::ParametrixCheck => parametrix(config, meta),
    };
    table.with_context(|| format!("running {kind} experiment"))
}

fn sample(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let n = config.n[0];
    let spec = config.ensemble.as_ref().expect("validated").spec(n, seed_for(config, n));
    let draws = sample_batch(&spec, trials(config), &config.mcmc())?;
    let mut columns = vec!["draw_index".to_string()];
    columns.extend((1..=n).map(|j| format!("lambda_{j}")));
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = ResultTable::new(&cols, meta);
    for d in &draws {
        let mut row: Vec<Cell> = vec![d.draw_index.into()];
        row.extend(d.values.iter().map(|&v| Cell::from(v)));
        t.push(row);
    }
    if let Some(path) = &config.output.binary {
        let mut bytes = Vec::new();
        write_binary(&mut bytes, &draws)?;
        write_atomic(path, &bytes)?;
    }
    t.summary = json!({ "n": n, "seed": spec.seed, "draws": draws.len() });
    Ok(t)
}

fn rigidity(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let mut t = ResultTable::new(
        &["n", "seed", "draw_index", "sup_h", "inf_h", "max_scaled_fluct", "argmax_index", "edge_window_max"],
        meta,
    );
    let mut summary = Vec::new();
    for &n in &config.n {
        let spec = config.ensemble.as_ref().expect("validated").spec(n, seed_for(config, n));
        for (i, &eps) in config.epsilon.iter().enumerate() {
            let rep = mc_rigidity(&spec, trials(config), eps, &config.mcmc())?;
            if i == 0 {
                for r in &rep.rows {
                    t.push(vec![
                        r.n.into(),
                        r.seed.into(),
                        r.draw_index.into(),
                        r.stats.sup_h.into(),
                        r.stats.inf_h.into(),
                        r.stats.max_scaled_fluct.into(),
                        r.stats.argmax_index.into(),
                        r.edge_window_max.into(),
                    ]);
                }
            }
            summary.push(json!({
                "n": n,
                "epsilon": eps,
                "trials": rep.trials,
                "fluct_event": rep.fluct_event,
                "sup_event": rep.sup_event,
                "inf_event": rep.inf_event,
            }));
        }
    }
    t.summary = json!(summary);
    Ok(t)
}

fn clt(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let ens = config.ensemble.as_ref().expect("validated");
    let f = config.test_function.clone().expect("validated");
    let (mu, s2) = clt_moments(&f, ens.alpha, ens.beta, &ens.t);
    let mut t = ResultTable::new(
        &["n", "draws", "mean", "mean_se", "variance", "variance_se", "predicted_mean", "predicted_variance"],
        meta,
    );
    for &n in &config.n {
        let spec = ens.spec(n, seed_for(config, n));
        let centre = n as f64 * f.arcsine_mean();
        let stats = map_draws(&spec, trials(config), &config.mcmc(), |s| {
            s.values.iter().map(|&x| f.eval(x)).sum::<f64>() - centre
        })?;
        t.push(vec![
            n.into(),
            stats.len().into(),
            mean(&stats).into(),
            std_error(&stats).into(),
            variance(&stats).into(),
            variance_std_error(&stats).into(),
            mu.into(),
            s2.into(),
        ]);
    }
    t.summary = json!({ "predicted_mean": mu, "predicted_variance": s2 });
    Ok(t)
}

fn hankel_sweep(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let w = config.weight.as_ref().expect("validated");
    let mut t = ResultTable::new(&["n", "logD", "node_count", "stability_flag"], meta);
    for &n in &config.n {
        let r = log_hankel_detailed(w, n, &HankelOptions::default())?;
        t.push(vec![n.into(), r.log_d.into(), r.node_count.into(), r.stable.into()]);
    }
    Ok(t)
}

fn edge(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let base = config.weight.clone().unwrap_or_else(|| WeightSpec::jacobi(0.0, 0.0));
    let mut t = ResultTable::new(
        &["regime", "n", "x", "gamma", "measured", "prediction", "residual", "in_window"],
        meta,
    );
    for &n in &config.n {
        let d0 = log_hankel(&base, n)?;
        for &x in &config.x {
            for &g in &config.gamma {
                let measured = log_hankel(&base.clone().with_jump(x, g), n)? - d0;
                let p = predict_edge_ratio(n, x, g)?;
                t.push(vec![
                    "edge".into(),
                    n.into(),
                    x.into(),
                    g.into(),
                    measured.into(),
                    p.value.into(),
                    (measured - p.value).into(),
                    p.in_window.into(),
                ]);
            }
        }
    }
    Ok(t)
}

fn merging(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let base = config.weight.clone().unwrap_or_else(|| WeightSpec::jacobi(0.0, 0.0));
    let (x1, x2, g1, g2) = (config.x[0], config.x[1], config.gamma[0], config.gamma[1]);
    let mut t = ResultTable::new(
        &["regime", "n", "x1", "x2", "gamma1", "gamma2", "measured", "prediction", "residual"],
        meta,
    );
    for &n in &config.n {
        let two = log_hankel(&base.clone().with_jump(x1, g1).with_jump(x2, g2), n)?;
        let one = log_hankel(&base.clone().with_jump(x1, g1 + g2), n)?;
        let p = predict_merging_ratio(n, x1, x2, g1, g2)?;
        t.push(vec![
            "merging".into(),
            n.into(),
            x1.into(),
            x2.into(),
            g1.into(),
            g2.into(),
            (two - one).into(),
            p.into(),
            (two - one - p).into(),
        ]);
    }
    Ok(t)
}

fn separated(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let base = config.weight.clone().expect("validated");
    let w = config.test_function.clone().expect("validated");
    let tilted = base.clone().with_t(&base.t + &w);
    let mut t = ResultTable::new(&["regime", "n", "measured", "prediction", "residual"], meta);
    for &n in &config.n {
        let measured = log_hankel(&tilted, n)? - log_hankel(&base, n)?;
        let p = predict_separated_ratio(n, &w, &base.jumps, base.alpha, base.beta, &base.t)?;
        t.push(vec!["separated".into(), n.into(), measured.into(), p.into(), (measured - p).into()]);
    }
    Ok(t)
}

fn gmc_compare(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let ens = config.ensemble.as_ref().expect("validated");
    let field = config.field();
    let opts = CompareOptions {
        grid_points: field.grid_points,
        field_terms: field.terms,
    };
    let mut t = ResultTable::new(
        &[
            "n",
            "gamma",
            "epsilon",
            "k",
            "ks_statistic",
            "ks_p_value",
            "eigen_mean",
            "field_mean",
            "mean_difference",
            "variance_ratio",
        ],
        meta,
    );
    for &n in &config.n {
        let spec = ens.spec(n, seed_for(config, n));
        for &g in &config.gamma {
            for &eps in &config.epsilon {
                let c = compare_measures(&spec, g, eps, trials(config), &opts, &config.mcmc())?;
                for f in &c.functionals {
                    t.push(vec![
                        n.into(),
                        g.into(),
                        eps.into(),
                        f.k.into(),
                        f.ks.statistic.into(),
                        f.ks.p_value.into(),
                        f.eigen_mean.into(),
                        f.field_mean.into(),
                        f.mean_difference.into(),
                        f.variance_ratio.into(),
                    ]);
                }
            }
        }
    }
    Ok(t)
}

fn gmc_trace(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let field = config.field();
    let m = field.trace_points;
    let points: Vec<f64> = (0..m).map(|j| -1.0 + 2.0 * (j as f64 + 0.5) / m as f64).collect();
    let bases = config
        .epsilon
        .iter()
        .map(|&eps| MollifiedBasis::new(field.terms, eps, &points))
        .collect::<juelab_core::Result<Vec<_>>>()?;
    let mut t = ResultTable::new(&["trace", "epsilon", "x", "field", "mollified"], meta);
    let seed = rng::derive_seed(config.seed, "trace");
    for i in 0..config.trials.unwrap_or(1) as u64 {
        let f = sample_field(field.terms, &mut rng::stream(seed, i))?;
        for b in &bases {
            let smooth = b.eval(&f);
            for (&x, &xe) in points.iter().zip(&smooth) {
                t.push(vec![i.into(), b.eps.into(), x.into(), f.eval(x).into(), xe.into()]);
            }
        }
    }
    Ok(t)
}

fn parametrix(config: &ExperimentConfig, meta: Metadata) -> Result<ResultTable> {
    let p = config.parametrix.as_ref().expect("validated");
    let missing = |what: &str| anyhow::anyhow!("parametrix object {:?} needs `{what}`", p.object);
    let report: ParametrixReport = match p.object {
        ParametrixObjectName::Pinf => {
            let mut w = WeightSpec::jacobi(p.alpha.unwrap_or(0.0), p.beta.unwrap_or(0.0)).with_t(p.t.clone());
            w.jumps = p.jumps.clone();
            pinf_suite(&w, config.seed)?
        }
        ParametrixObjectName::Bessel => bessel_suite(p.alpha.ok_or_else(|| missing("alpha"))?, config.seed)?,
        ParametrixObjectName::Hg => {
            let b = p.beta_im.ok_or_else(|| missing("beta_im"))?;
            hg_suite(Complex64::new(0.0, b), config.seed)?
        }
        ParametrixObjectName::M => model_m_suite(p.gamma.ok_or_else(|| missing("gamma"))?, config.seed)?,
    };
    let mut t = ResultTable::new(&["check", "value", "tolerance", "passed"], meta);
    for c in &report.checks {
        t.push(vec![c.name.clone().into(), c.value.into(), c.tolerance.into(), c.passed.into()]);
    }
    t.summary = serde_json::to_value(&report)?;
    Ok(t)
}

/// Writes the CSV and JSON outputs requested by the config. Returns whether
/// anything was written to a file.
pub fn write_outputs(config: &ExperimentConfig, table: &ResultTable) -> Result<bool> {
    let mut wrote = config.output.binary.is_some();
    if let Some(p) = &config.output.csv {
        write_atomic(p, &table.to_csv()?)?;
        wrote = true;
    }
    if let Some(p) = &config.output.json {
        let mut bytes = serde_json::to_vec_pretty(&table.to_json())?;
        bytes.push(b'\n');
        write_atomic(p, &bytes)?;
        wrote = true;
    }
    Ok(wrote)
}
