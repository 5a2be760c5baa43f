//! Experiment configuration files.
//!
//! Configs are TOML documents with a mandatory `version = 1` key. The
//! canonical form used for hashing is the `toml` serialization of the parsed
//! config, after command-line overrides have been applied.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use juelab_core::{ChebSeries, EnsembleSpec, McmcConfig, Method, WeightSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Sample,
    Rigidity,
    Clt,
    HankelSweep,
    EdgeAsymptotics,
    MergingAsymptotics,
    SeparatedAsymptotics,
    GmcCompare,
    GmcTrace,
    ParametrixCheck,
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::Sample,
        Kind::Rigidity,
        Kind::Clt,
        Kind::HankelSweep,
        Kind::EdgeAsymptotics,
        Kind::MergingAsymptotics,
        Kind::SeparatedAsymptotics,
        Kind::GmcCompare,
        Kind::GmcTrace,
        Kind::ParametrixCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Sample => "sample",
            Kind::Rigidity => "rigidity",
            Kind::Clt => "clt",
            Kind::HankelSweep => "hankel-sweep",
            Kind::EdgeAsymptotics => "edge-asymptotics",
            Kind::MergingAsymptotics => "merging-asymptotics",
            Kind::SeparatedAsymptotics => "separated-asymptotics",
            Kind::GmcCompare => "gmc-compare",
            Kind::GmcTrace => "gmc-trace",
            Kind::ParametrixCheck => "parametrix-check",
        }
    }

    fn uses_n_list(self) -> bool {
        !matches!(self, Kind::GmcTrace | Kind::ParametrixCheck)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKind(pub String);

impl fmt::Display for UnknownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let known: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
        write!(f, "unknown experiment kind {:?} (expected one of: {})", self.0, known.join(", "))
    }
}

impl std::error::Error for UnknownKind {}

impl FromStr for Kind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// Ensemble parameters; N comes from the experiment's N-list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSection {
    pub alpha: f64,
    pub beta: f64,
    pub method: Method,
    #[serde(default, skip_serializing_if = "ChebSeries::is_zero")]
    pub t: ChebSeries,
}

impl EnsembleSection {
    pub fn spec(&self, n: usize, seed: u64) -> EnsembleSpec {
        EnsembleSpec::new(n, self.alpha, self.beta, self.method, seed).with_t(self.t.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParametrixObjectName {
    Pinf,
    Bessel,
    Hg,
    M,
}

/// Parameters of a parametrix check. `pinf` uses `alpha`, `beta`, `jumps`
/// and `t`; `bessel` uses `alpha`; `hg` uses `beta_im` (β = i·beta_im);
/// `m` uses `gamma`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametrixSection {
    pub object: ParametrixObjectName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_im: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub jumps: Vec<juelab_core::Jump>,
    #[serde(default, skip_serializing_if = "ChebSeries::is_zero")]
    pub t: ChebSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    /// Sine terms of the field truncation.
    #[serde(default = "default_terms")]
    pub terms: usize,
    /// Gauss–Legendre nodes used by `gmc-compare`.
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    /// Number of evenly spaced trace points used by `gmc-trace`.
    #[serde(default = "default_trace_points")]
    pub trace_points: usize,
}

fn default_terms() -> usize {
    512
}

fn default_grid_points() -> usize {
    96
}

fn default_trace_points() -> usize {
    201
}

impl Default for FieldSection {
    fn default() -> Self {
        Self {
            terms: default_terms(),
            grid_points: default_grid_points(),
            trace_points: default_trace_points(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    /// Compact binary batch, `sample` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binary: Option<PathBuf>,
}

impl OutputSection {
    /// `<base>.csv` and `<base>.json` (plus `<base>.bin` when binary output
    /// was requested).
    pub fn from_base(base: &Path, binary: bool) -> Self {
        Self {
            csv: Some(base.with_extension("csv")),
            json: Some(base.with_extension("json")),
            binary: binary.then(|| base.with_extension("bin")),
        }
    }

    fn paths(&self) -> impl Iterator<Item = &PathBuf> {
        self.csv.iter().chain(&self.json).chain(&self.binary)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    pub kind: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub n: Vec<usize>,
    /// Draws or trials per N.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub epsilon: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<f64>,
    /// Linear statistic `f` (clt) or smooth tilt `w` (separated-asymptotics).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_function: Option<ChebSeries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcmc: Option<McmcConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrix: Option<ParametrixSection>,
    /// Where results go; not part of the canonical form or the hash.
    #[serde(default, skip_serializing)]
    pub output: OutputSection,
}

impl ExperimentConfig {
    pub fn new(kind: Kind, seed: u64) -> Self {
        Self {
            version: CONFIG_VERSION,
            kind: kind.name().to_string(),
            seed,
            n: Vec::new(),
            trials: None,
            epsilon: Vec::new(),
            gamma: Vec::new(),
            x: Vec::new(),
            test_function: None,
            ensemble: None,
            weight: None,
            mcmc: None,
            field: None,
            parametrix: None,
            output: OutputSection::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        use anyhow::Context;
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn kind(&self) -> Result<Kind, UnknownKind> {
        self.kind.parse()
    }

    /// Canonical TOML text; the config hash is the SHA-256 of these bytes.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config serializes to TOML")
    }

    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    pub fn mcmc(&self) -> McmcConfig {
        self.mcmc.clone().unwrap_or_default()
    }

    pub fn field(&self) -> FieldSection {
        self.field.clone().unwrap_or_default()
    }

    /// Schema and invariant report; empty when the config can be run.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.version != CONFIG_VERSION {
            out.push(format!(
                "unsupported config version {} (this build reads version {CONFIG_VERSION})",
                self.version
            ));
        }
        let kind = match self.kind() {
            Ok(k) => k,
            Err(e) => {
                out.push(e.to_string());
                return out;
            }
        };
        if kind.uses_n_list() {
            if self.n.is_empty() {
                out.push("N-list nonempty: `n` must list at least one size".into());
            } else if self.n.windows(2).any(|w| w[0] >= w[1]) {
                out.push("N-list ascending: `n` must be strictly increasing".into());
            }
            if self.n.contains(&0) {
                out.push("N-list entries must be positive".into());
            }
        }
        let need = |out: &mut Vec<String>, ok: bool, what: &str| {
            if !ok {
                out.push(format!("{kind} requires {what}"));
            }
        };
        let trials = self.trials.unwrap_or(0);
        match kind {
            Kind::Sample | Kind::Rigidity | Kind::Clt | Kind::GmcCompare => {
                need(&mut out, self.ensemble.is_some(), "an [ensemble] section");
                need(&mut out, trials > 0, "`trials` >= 1");
            }
            _ => {}
        }
        if let Some(e) = &self.ensemble {
            let n = self.n.first().copied().unwrap_or(1).max(1);
            out.extend(e.spec(n, self.seed).diagnostics().into_iter().filter(|d| !d.starts_with("N ")));
        }
        match kind {
            Kind::Sample => {
                need(&mut out, self.n.len() == 1, "exactly one N");
            }
            Kind::Rigidity => {
                need(&mut out, !self.epsilon.is_empty(), "a nonempty `epsilon` list");
                if self.epsilon.iter().any(|e| !(*e > 0.0)) {
                    out.push("epsilon values must be positive".into());
                }
            }
            Kind::Clt => {
                need(&mut out, self.test_function.is_some(), "a `test_function` (Chebyshev coefficients)");
                need(&mut out, trials >= 2, "`trials` >= 2");
            }
            Kind::HankelSweep => {
                need(&mut out, self.weight.is_some(), "a [weight] section");
            }
            Kind::EdgeAsymptotics => {
                need(&mut out, !self.x.is_empty() && !self.gamma.is_empty(), "nonempty `x` and `gamma` lists");
                if self.x.iter().any(|x| !(x.abs() < 1.0)) {
                    out.push("edge-asymptotics points must satisfy |x| < 1".into());
                }
                if self.weight.as_ref().is_some_and(|w| !w.jumps.is_empty()) {
                    out.push("edge-asymptotics base weight must not carry jumps".into());
                }
            }
            Kind::MergingAsymptotics => {
                need(&mut out, self.x.len() == 2 && self.gamma.len() == 2, "`x = [x1, x2]` and `gamma = [g1, g2]`");
                if self.x.len() == 2 && !(-1.0 < self.x[0] && self.x[0] < self.x[1] && self.x[1] < 1.0) {
                    out.push("merging-asymptotics needs -1 < x1 < x2 < 1".into());
                }
            }
            Kind::SeparatedAsymptotics => {
                need(&mut out, self.weight.is_some(), "a [weight] section");
                need(&mut out, self.test_function.is_some(), "a `test_function` (the tilt w)");
            }
            Kind::GmcCompare => {
                need(&mut out, !self.gamma.is_empty() && !self.epsilon.is_empty(), "nonempty `gamma` and `epsilon` lists");
                need(&mut out, trials >= 100, "`trials` >= 100");
            }
            Kind::GmcTrace => {
                need(&mut out, !self.epsilon.is_empty(), "a nonempty `epsilon` list");
            }
            Kind::ParametrixCheck => {
                need(&mut out, self.parametrix.is_some(), "a [parametrix] section");
            }
        }
        if self.epsilon.iter().any(|e| !(*e > 0.0)) && kind != Kind::Rigidity {
            out.push("epsilon values must be positive".into());
        }
        if let Some(w) = &self.weight {
            if let Err(e) = w.validate() {
                out.push(e.to_string());
            }
        }
        if let Some(f) = &self.field {
            if f.terms == 0 || f.grid_points == 0 || f.trace_points == 0 {
                out.push("field terms, grid_points and trace_points must be positive".into());
            }
        }
        if self.output.binary.is_some() && kind != Kind::Sample {
            out.push("binary output is only available for sample".into());
        }
        for p in self.output.paths() {
            if let Some(d) = writable_dir_problem(p) {
                out.push(d);
            }
        }
        out
    }
}

fn writable_dir_problem(path: &Path) -> Option<String> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    match std::fs::metadata(dir) {
        Ok(m) if !m.is_dir() => Some(format!("output path {}: parent is not a directory", path.display())),
        Ok(m) if m.permissions().readonly() => {
            Some(format!("output path {}: directory is read-only", path.display()))
        }
        Ok(_) => None,
        Err(_) => Some(format!("output path {}: directory {} does not exist", path.display(), dir.display())),
    }
}
