//! Command-line definitions and their translation into experiment configs.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use juelab_core::{ChebSeries, Jump, Method, WeightSpec};

use crate::config::{
    EnsembleSection, ExperimentConfig, FieldSection, Kind, ParametrixObjectName, ParametrixSection,
};

#[derive(Debug, Parser)]
#[command(name = "juelab", version, about = "Jacobi unitary ensemble numerical lab")]
pub struct Cli {
    /// Experiment config (TOML). Without a subcommand the config is run;
    /// with `validate` it is checked.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Master seed; overrides the config's seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output base path: writes `<out>.csv` and `<out>.json` (and `<out>.bin`
    /// for binary samples). Without it, the JSON document goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for parallel sampling and quadrature.
    #[arg(long, global = true, env = "JUELAB_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw eigenvalue samples.
    Sample(SampleArgs),
    /// Rigidity statistics and event frequencies.
    Rigidity(RigidityArgs),
    /// Linear-statistic mean and variance against the CLT prediction.
    Clt(CltArgs),
    /// Hankel determinant of a jump weight.
    Hankel(HankelArgs),
    /// Asymptotic predictions alongside the measured Hankel ratios.
    #[command(subcommand)]
    Predict(PredictCommand),
    /// Log-correlated field traces and chaos comparisons.
    #[command(subcommand)]
    Gmc(GmcCommand),
    /// Jump, limit and determinant checks of a parametrix.
    ParametrixCheck(ParametrixArgs),
    /// Report config diagnostics without running anything.
    Validate,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Manova,
    Tridiagonal,
    Mcmc,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Manova => Method::Manova,
            MethodArg::Tridiagonal => Method::Tridiagonal,
            MethodArg::Mcmc => Method::Mcmc,
        }
    }
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, value_enum, default_value = "tridiagonal")]
    pub method: MethodArg,
    /// Chebyshev coefficients of the potential perturbation t (mcmc only).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub tcheb: Vec<f64>,
}

impl EnsembleArgs {
    fn section(&self) -> EnsembleSection {
        EnsembleSection {
            alpha: self.alpha,
            beta: self.beta,
            method: self.method.into(),
            t: ChebSeries::new(self.tcheb.clone()),
        }
    }
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Jumps as `x:gamma` pairs, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub jumps: Vec<String>,
    /// Chebyshev coefficients of t.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub tcheb: Vec<f64>,
}

impl WeightArgs {
    fn weight(&self) -> Result<WeightSpec> {
        let mut w = WeightSpec::jacobi(self.alpha, self.beta).with_t(ChebSeries::new(self.tcheb.clone()));
        w.jumps = parse_jumps(&self.jumps)?;
        Ok(w)
    }
}

fn parse_jumps(items: &[String]) -> Result<Vec<Jump>> {
    items
        .iter()
        .map(|s| {
            let (x, g) = s
                .split_once(':')
                .ok_or_else(|| anyhow!("jump {s:?} is not of the form x:gamma"))?;
            Ok(Jump::new(x.trim().parse()?, g.trim().parse()?))
        })
        .collect()
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub draws: usize,
    /// Also write the compact binary batch (requires --out).
    #[arg(long)]
    pub binary: bool,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Args)]
pub struct RigidityArgs {
    /// Comma-separated ascending N-list.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub epsilon: Vec<f64>,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Args)]
pub struct CltArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub draws: usize,
    /// Chebyshev coefficients of the linear statistic f.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub f: Vec<f64>,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Args)]
pub struct HankelArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub weight: WeightArgs,
}

#[derive(Debug, Subcommand)]
pub enum PredictCommand {
    /// Single jump against the jump-free weight.
    Edge {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        gamma: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
    },
    /// Two nearby jumps against their merged jump.
    Merging {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, allow_negative_numbers = true)]
        x1: f64,
        #[arg(long, allow_negative_numbers = true)]
        x2: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma1: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma2: f64,
    },
    /// Smooth tilt w of a weight with separated jumps.
    Separated {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Chebyshev coefficients of the tilt w.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        w: Vec<f64>,
        #[command(flatten)]
        weight: WeightArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum GmcCommand {
    /// Sample paths of the truncated and mollified field.
    Trace {
        #[arg(long, value_delimiter = ',', default_value = "0.05")]
        epsilon: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        traces: usize,
        #[arg(long, default_value_t = 512)]
        terms: usize,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Distributional comparison of eigenvalue and field chaos measures.
    Compare {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0.05")]
        epsilon: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 512)]
        terms: usize,
        #[arg(long, default_value_t = 96)]
        grid_points: usize,
        #[command(flatten)]
        ensemble: EnsembleArgs,
    },
}

#[derive(Debug, Args)]
pub struct ParametrixArgs {
    #[arg(long, value_enum)]
    pub object: ObjectArg,
    /// Parameters as `key=value`: alpha, beta, beta_im, gamma,
    /// jumps (x:g;x:g) and t (c0;c1;...).
    #[arg(long = "params", value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ObjectArg {
    Pinf,
    Bessel,
    Hg,
    M,
}

impl ParametrixArgs {
    fn section(&self) -> Result<ParametrixSection> {
        let mut s = ParametrixSection {
            object: match self.object {
                ObjectArg::Pinf => ParametrixObjectName::Pinf,
                ObjectArg::Bessel => ParametrixObjectName::Bessel,
                ObjectArg::Hg => ParametrixObjectName::Hg,
                ObjectArg::M => ParametrixObjectName::M,
            },
            alpha: None,
            beta: None,
            beta_im: None,
            gamma: None,
            jumps: Vec::new(),
            t: ChebSeries::zero(),
        };
        for p in &self.params {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| anyhow!("parameter {p:?} is not of the form key=value"))?;
            let v = v.trim();
            match k.trim() {
                "alpha" => s.alpha = Some(v.parse()?),
                "beta" => s.beta = Some(v.parse()?),
                "beta_im" => s.beta_im = Some(v.parse()?),
                "gamma" => s.gamma = Some(v.parse()?),
                "jumps" => {
                    let items: Vec<String> = v.split(';').map(str::to_string).collect();
                    s.jumps = parse_jumps(&items)?;
                }
                "t" => {
                    let c = v.split(';').map(|c| c.trim().parse()).collect::<Result<Vec<f64>, _>>()?;
                    s.t = ChebSeries::new(c);
                }
                other => bail!("unknown parametrix parameter {other:?}"),
            }
        }
        Ok(s)
    }
}

impl Command {
    /// Config equivalent of an experiment subcommand; `None` for `validate`.
    pub fn to_config(&self, seed: u64) -> Result<Option<ExperimentConfig>> {
        let c = match self {
            Command::Validate => return Ok(None),
            Command::Sample(a) => {
                let mut c = ExperimentConfig::new(Kind::Sample, seed);
                c.n = vec![a.n];
                c.trials = Some(a.draws);
                c.ensemble = Some(a.ensemble.section());
                c
            }
            Command::Rigidity(a) => {
                let mut c = ExperimentConfig::new(Kind::Rigidity, seed);
                c.n = a.n.clone();
                c.trials = Some(a.trials);
                c.epsilon = a.epsilon.clone();
                c.ensemble = Some(a.ensemble.section());
                c
            }
            Command::Clt(a) => {
                let mut c = ExperimentConfig::new(Kind::Clt, seed);
                c.n = a.n.clone();
                c.trials = Some(a.draws);
                c.test_function = Some(ChebSeries::new(a.f.clone()));
                c.ensemble = Some(a.ensemble.section());
                c
            }
            Command::Hankel(a) => {
                let mut c = ExperimentConfig::new(Kind::HankelSweep, seed);
                c.n = a.n.clone();
                c.weight = Some(a.weight.weight()?);
                c
            }
            Command::Predict(PredictCommand::Edge { n, x, gamma, alpha, beta }) => {
                let mut c = ExperimentConfig::new(Kind::EdgeAsymptotics, seed);
                c.n = n.clone();
                c.x = x.clone();
                c.gamma = gamma.clone();
                c.weight = Some(WeightSpec::jacobi(*alpha, *beta));
                c
            }
            Command::Predict(PredictCommand::Merging { n, x1, x2, gamma1, gamma2 }) => {
                let mut c = ExperimentConfig::new(Kind::MergingAsymptotics, seed);
                c.n = n.clone();
                c.x = vec![*x1, *x2];
                c.gamma = vec![*gamma1, *gamma2];
                c
            }
            Command::Predict(PredictCommand::Separated { n, w, weight }) => {
                let mut c = ExperimentConfig::new(Kind::SeparatedAsymptotics, seed);
                c.n = n.clone();
                c.test_function = Some(ChebSeries::new(w.clone()));
                c.weight = Some(weight.weight()?);
                c
            }
            Command::Gmc(GmcCommand::Trace { epsilon, traces, terms, points }) => {
                let mut c = ExperimentConfig::new(Kind::GmcTrace, seed);
                c.epsilon = epsilon.clone();
                c.trials = Some(*traces);
                c.field = Some(FieldSection {
                    terms: *terms,
                    trace_points: *points,
                    ..FieldSection::default()
                });
                c
            }
            Command::Gmc(GmcCommand::Compare { n, gamma, epsilon, trials, terms, grid_points, ensemble }) => {
                let mut c = ExperimentConfig::new(Kind::GmcCompare, seed);
                c.n = n.clone();
                c.gamma = gamma.clone();
                c.epsilon = epsilon.clone();
                c.trials = Some(*trials);
                c.field = Some(FieldSection {
                    terms: *terms,
                    grid_points: *grid_points,
                    ..FieldSection::default()
                });
                c.ensemble = Some(ensemble.section());
                c
            }
            Command::ParametrixCheck(a) => {
                let mut c = ExperimentConfig::new(Kind::ParametrixCheck, seed);
                c.parametrix = Some(a.section()?);
                c
            }
        };
        Ok(Some(c))
    }

    pub fn wants_binary(&self) -> bool {
        matches!(self, Command::Sample(SampleArgs { binary: true, .. }))
    }
}
