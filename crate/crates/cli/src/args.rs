use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rings_core::consensus::{FrequencyVariable, Tolerances, DEFAULT_CURVE_SAMPLES, DEFAULT_EPS, DEFAULT_ZERO_TOL};
use rings_core::dynamics::{DEFAULT_GROW_TOL, DEFAULT_HORIZON, DEFAULT_SHRINK_TOL, DEFAULT_STEP};
use rings_core::{NecklaceVector, RingTopology};
use serde_json::Value;

use crate::output::Format;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "rings", version, about = "Ring digraphs, spectrum loci and consensus checks")]
pub struct Cli {
    /// Read the whole invocation from a JSON file instead of flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output path, `-` for stdout, or a bare format name (csv, json, svg, text, poly) for stdout.
    #[arg(long, global = true, value_name = "PATH|FORMAT")]
    pub out: Option<String>,

    /// Output format; inferred from the `--out` extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of non-isomorphic simple rings on N nodes.
    Count {
        #[arg(long = "N", value_name = "N")]
        nodes: u32,
    },
    /// Canonical necklace vectors of all simple rings of length n.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Laplacian matrix of a ring.
    Laplacian(#[command(flatten)] TopologyArgs),
    /// Characteristic polynomial of a ring's Laplacian, ascending coefficients.
    Charpoly(#[command(flatten)] TopologyArgs),
    /// Laplacian spectrum of a ring from the product form.
    Locus {
        #[command(flatten)]
        topology: TopologyArgs,
        /// Map every eigenvalue λ to -rλ.
        #[arg(long, value_name = "R")]
        reflect: Option<f64>,
    },
    /// Spectrum-locus curve of a macro-vertex.
    Curve {
        #[command(flatten)]
        source: CurveArgs,
        /// Levels of the unit circle sampled for csv and svg output.
        #[arg(long, default_value_t = DEFAULT_CURVE_SAMPLES)]
        samples: usize,
    },
    /// Closed-form spectrum of the weighted two-cycle ring.
    Weighted {
        #[arg(long = "N", value_name = "N")]
        nodes: usize,
        #[arg(long)]
        c: f64,
    },
    /// Boundary of the drop region.
    Drop {
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
    /// Ω-region membership of a point, or the boundary φ(jω) when no point is given.
    Omega {
        #[command(flatten)]
        model: ModelArgs,
        /// Point as `re,im`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<f64>>,
        /// Boundary frequencies span [-omega-max, omega-max].
        #[arg(long, default_value_t = 10.0)]
        omega_max: f64,
        #[arg(long, default_value_t = 801)]
        samples: usize,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Consensus verdict for a ring with gain r.
    Check {
        #[command(flatten)]
        topology: TopologyArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Critical gain r* at which a whole locus leaves the Ω-region.
    Critical {
        #[command(flatten)]
        source: CurveArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Bracket for r*; scanned on a log grid over [1e-3, 1e3] when omitted.
        #[arg(long, requires = "hi")]
        lo: Option<f64>,
        #[arg(long, requires = "lo")]
        hi: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_CURVE_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Integrates the closed loop and reports the disagreement trajectory.
    Simulate {
        #[command(flatten)]
        topology: TopologyArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        r: f64,
        #[arg(long = "T", value_name = "T", default_value_t = DEFAULT_HORIZON)]
        horizon: f64,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        h: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep every k-th step.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Append the full state vector to every row.
        #[arg(long)]
        states: bool,
        #[arg(long, default_value_t = DEFAULT_SHRINK_TOL)]
        shrink_tol: f64,
        #[arg(long, default_value_t = DEFAULT_GROW_TOL)]
        grow_tol: f64,
    },
    /// SVG figure from point and boundary CSV files written by other subcommands.
    Plot {
        #[arg(long, value_name = "CSV")]
        points: Vec<PathBuf>,
        #[arg(long, value_name = "CSV")]
        boundary: Vec<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Enumerate { .. } => "enumerate",
            Command::Laplacian(_) => "laplacian",
            Command::Charpoly(_) => "charpoly",
            Command::Locus { .. } => "locus",
            Command::Curve { .. } => "curve",
            Command::Weighted { .. } => "weighted",
            Command::Drop { .. } => "drop",
            Command::Omega { .. } => "omega",
            Command::Check { .. } => "check",
            Command::Critical { .. } => "critical",
            Command::Simulate { .. } => "simulate",
            Command::Plot { .. } => "plot",
        }
    }
}

#[derive(Debug, Args)]
pub struct TopologyArgs {
    /// Necklace vector over {1, 2}, e.g. `2,1`.
    #[arg(long)]
    pub necklace: String,
    /// Number of macro-vertices.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
}

impl TopologyArgs {
    pub fn ring(&self) -> Result<RingTopology, CliError> {
        Ok(RingTopology::new(NecklaceVector::parse(&self.necklace)?, self.m)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedCurve {
    Circle,
    Cassini,
    Sextic1,
    Sextic2,
    Drop,
}

impl NamedCurve {
    pub fn necklace(self) -> Option<&'static str> {
        match self {
            NamedCurve::Circle => Some("1"),
            NamedCurve::Cassini => Some("2,1"),
            NamedCurve::Sextic1 => Some("2,1,1"),
            NamedCurve::Sextic2 => Some("2,2,1"),
            NamedCurve::Drop => None,
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CurveArgs {
    #[arg(long)]
    pub necklace: Option<String>,
    #[arg(long, value_enum)]
    pub curve: Option<NamedCurve>,
}

/// A locus given either by its macro-vertex or as the drop region.
pub enum Locus {
    Necklace(NecklaceVector),
    Drop,
}

impl CurveArgs {
    pub fn locus(&self) -> Result<Locus, CliError> {
        let text = match (&self.necklace, self.curve) {
            (Some(text), _) => text.as_str(),
            (None, Some(named)) => match named.necklace() {
                Some(text) => text,
                None => return Ok(Locus::Drop),
            },
            (None, None) => unreachable!("clap enforces the group"),
        };
        Ok(Locus::Necklace(NecklaceVector::parse(text)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    FirstOrder,
    AbsoluteVelocity,
    RelativeVelocity,
    Lagging,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Open-loop polynomial a(s), ascending and monic.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "model")]
    pub a: Option<Vec<f64>>,
    /// Coupling polynomial b(s), ascending.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "a")]
    pub b: Option<Vec<f64>>,
    /// Named agent model; absolute-velocity when only --gamma is given.
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[arg(long, conflicts_with = "a")]
    pub gamma: Option<f64>,
}

impl ModelArgs {
    pub fn frequency_variable(&self) -> Result<FrequencyVariable, CliError> {
        if let Some(a) = &self.a {
            let b = self.b.clone().unwrap_or_else(|| vec![1.0]);
            return Ok(FrequencyVariable::new(a.clone(), b)?);
        }
        let gamma = || self.gamma.ok_or_else(|| CliError::Usage("--gamma is required for this model".into()));
        let fv = match self.model {
            Some(ModelKind::FirstOrder) => FrequencyVariable::first_order(),
            Some(ModelKind::AbsoluteVelocity) => FrequencyVariable::absolute_velocity(gamma()?)?,
            Some(ModelKind::RelativeVelocity) => FrequencyVariable::relative_velocity(gamma()?)?,
            Some(ModelKind::Lagging) => FrequencyVariable::lagging(gamma()?)?,
            None => match self.gamma {
                Some(g) => FrequencyVariable::absolute_velocity(g)?,
                None => return Err(CliError::Usage("an agent model is required: --a/--b, --model or --gamma".into())),
            },
        };
        Ok(fv)
    }
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Roots must satisfy Re(s) < -eps.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Eigenvalues closer than this to the origin count as zero.
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL)]
    pub zero_tol: f64,
}

impl ToleranceArgs {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances { eps: self.eps, zero_tol: self.zero_tol }
    }
}

/// Rebuilds an argument vector from a JSON config such as
/// `{"command": "check", "necklace": "1", "m": 7, "a": [0, 0, 1], "r": 0.15}`.
/// Entries in `overrides` replace those of the file.
pub fn config_argv(config: &Value, overrides: &[(&str, String)]) -> Result<Vec<String>, CliError> {
    let object = config.as_object().ok_or_else(|| CliError::Usage("config must be a JSON object".into()))?;
    let command = object
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Usage("config needs a string \"command\" entry".into()))?;
    let mut flags: BTreeMap<String, Option<String>> = BTreeMap::new();
    for (key, value) in object {
        if key == "command" {
            continue;
        }
        let rendered = match value {
            Value::Bool(true) => None,
            Value::Bool(false) | Value::Null => continue,
            Value::Array(items) => Some(items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?.join(",")),
            other => Some(scalar(other)?),
        };
        flags.insert(key.clone(), rendered);
    }
    for (key, value) in overrides {
        flags.insert((*key).to_owned(), Some(value.clone()));
    }
    let mut argv = vec!["rings".to_owned(), command.to_owned()];
    for (key, value) in flags {
        argv.push(format!("--{key}"));
        argv.extend(value);
    }
    Ok(argv)
}

fn scalar(value: &Value) -> Result<String, CliError> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(CliError::Usage(format!("unsupported config value {other}"))),
    }
}
