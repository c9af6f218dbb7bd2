//! Command-line schema, config-file merging, and grid parsing.

use std::path::PathBuf;

use aoi_core::dist::{ModelParams, ServiceDistribution, Theta};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Parser)]
#[command(name = "aoi", version, about = "Age-of-information analytics for a \
two-cell queue with threshold-based service preemption", long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML config file whose keys mirror the long flags; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (defaults to stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format where applicable.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Cap on internal parallelism (replications).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    P2theta,
    Variant,
    B1,
    B2,
}

impl From<PolicyArg> for aoi_core::sim::Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::P2theta => aoi_core::sim::Policy::P2Theta,
            PolicyArg::Variant => aoi_core::sim::Policy::P2ThetaVariant,
            PolicyArg::B1 => aoi_core::sim::Policy::B1,
            PolicyArg::B2 => aoi_core::sim::Policy::B2,
        }
    }
}

/// Model flags shared by most subcommands.
#[derive(Args, Clone)]
pub struct ModelArgs {
    /// Poisson arrival rate.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Preemption threshold (a number or `inf`).
    #[arg(long)]
    pub theta: Option<String>,
    /// Service distribution literal: `exp:MU`, `det:D`, `mix:W,det=D,exp=MU`.
    #[arg(long)]
    pub dist: Option<String>,
}

/// Simulation flags shared by `simulate` and `validate`.
#[derive(Args, Clone)]
pub struct SimArgs {
    /// Arrivals per replication.
    #[arg(long)]
    pub events: Option<f64>,
    /// Number of independent replications.
    #[arg(long)]
    pub reps: Option<u32>,
    /// Base seed for the counter-based random streams.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Leading fraction of arrivals discarded.
    #[arg(long)]
    pub warmup: Option<f64>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the stationary mean AoI and the embedded-chain constants.
    Mean {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Evaluate the AoI transform on an s-grid (CSV columns `s,phi`).
    Transform {
        #[command(flatten)]
        model: ModelArgs,
        /// Grid literal: `start:stop:count` or comma-separated values.
        #[arg(long = "s-grid")]
        s_grid: Option<String>,
    },
    /// Tail probabilities over a threshold grid, or the smallest threshold
    /// meeting a tail tolerance (`--epsilon`).
    Tail {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "nu-grid")]
        nu_grid: Option<String>,
        /// Solve `P(alpha > nu) <= epsilon` for `nu` instead of a grid scan.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Euler inversion: series terms.
        #[arg(long = "inv-terms")]
        inv_terms: Option<usize>,
        /// Euler inversion: averaged partial sums.
        #[arg(long = "inv-avg")]
        inv_avg: Option<usize>,
        /// Euler inversion: discount parameter.
        #[arg(long = "inv-discount")]
        inv_discount: Option<f64>,
    },
    /// Mean AoI as a function of the threshold (CSV `theta,mean_aoi`).
    Sweep {
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        dist: Option<String>,
        /// Threshold grid (`inf` allowed); defaults to
        /// `{0, 0.1, ..., 5} x mean service`, plus `inf`.
        #[arg(long = "theta-grid")]
        theta_grid: Option<String>,
    },
    /// Event-driven simulation; emits the result as JSON and, with `--out`,
    /// the empirical CCDF as a sibling CSV.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        /// CCDF reporting grid.
        #[arg(long = "nu-grid")]
        nu_grid: Option<String>,
    },
    /// Analytic-vs-simulation comparison; exits 1 when they disagree.
    Validate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        sim: SimArgs,
    },
}

/// Config-file defaults: a flat TOML table keyed by the long flag names.
pub struct Defaults {
    table: toml::Table,
}

impl Defaults {
    pub fn load(path: Option<&PathBuf>) -> Result<Self, CliError> {
        let table = match path {
            None => toml::Table::new(),
            Some(p) => std::fs::read_to_string(p)?
                .parse::<toml::Table>()
                .map_err(|e| CliError::malformed(format!("config: {e}")))?,
        };
        Ok(Self { table })
    }

    pub fn f64(&self, key: &str) -> Option<f64> {
        match self.table.get(key) {
            Some(toml::Value::Float(v)) => Some(*v),
            Some(toml::Value::Integer(v)) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn u64(&self, key: &str) -> Option<u64> {
        match self.table.get(key) {
            Some(toml::Value::Integer(v)) if *v >= 0 => Some(*v as u64),
            _ => None,
        }
    }

    pub fn str(&self, key: &str) -> Option<String> {
        match self.table.get(key) {
            Some(toml::Value::String(v)) => Some(v.clone()),
            Some(other) => Some(other.to_string()),
            _ => None,
        }
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::malformed(format!("missing required --{flag}")))
}

impl ModelArgs {
    /// Flags over config-file values; all three parts are required.
    pub fn resolve(&self, defaults: &Defaults) -> Result<ModelParams, CliError> {
        let lambda = required(self.lambda.or_else(|| defaults.f64("lambda")), "lambda")?;
        let theta_lit = required(
            self.theta.clone().or_else(|| defaults.str("theta")),
            "theta",
        )?;
        let dist_lit = required(self.dist.clone().or_else(|| defaults.str("dist")), "dist")?;
        let theta: Theta = theta_lit.parse()?;
        let service: ServiceDistribution = dist_lit.parse()?;
        Ok(ModelParams::new(lambda, theta, service)?)
    }
}

impl SimArgs {
    pub fn resolve(
        &self,
        defaults: &Defaults,
        model: ModelParams,
        policy: aoi_core::sim::Policy,
        nu_grid: Option<Vec<f64>>,
    ) -> Result<aoi_core::sim::SimConfig, CliError> {
        let mut cfg = aoi_core::sim::SimConfig::new(model, policy);
        if let Some(events) = self.events.or_else(|| defaults.f64("events")) {
            if !(events.is_finite() && events >= 1.0) {
                return Err(CliError::malformed(format!("bad --events {events}")));
            }
            cfg.horizon_events = events as u64;
        }
        if let Some(reps) = self.reps.or_else(|| defaults.u64("reps").map(|v| v as u32)) {
            cfg.replications = reps;
        }
        if let Some(seed) = self.seed.or_else(|| defaults.u64("seed")) {
            cfg.seed = seed;
        }
        if let Some(warmup) = self.warmup.or_else(|| defaults.f64("warmup")) {
            cfg.warmup_fraction = warmup;
        }
        cfg.ccdf_grid = nu_grid;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses `start:stop:count` (inclusive linspace) or a comma-separated list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::malformed(format!("bad grid {spec:?}: {msg}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = if parts.len() == 3 {
        let start: f64 = parts[0].trim().parse().map_err(|_| bad("start".into()))?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad("stop".into()))?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad("count".into()))?;
        if count < 2 || stop <= start {
            return Err(bad("need count >= 2 and stop > start".into()));
        }
        (0..count)
            .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
            .collect()
    } else if parts.len() == 1 {
        let vals: Result<Vec<f64>, _> = spec
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad(format!("value {v:?}"))))
            .collect();
        vals?
    } else {
        return Err(bad("expected start:stop:count or v1,v2,...".into()));
    };
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite".into()));
    }
    Ok(grid)
}

/// Threshold grid: same literals as [`parse_grid`], plus `inf` entries in
/// comma lists.
pub fn parse_theta_grid(spec: &str) -> Result<Vec<Theta>, CliError> {
    if spec.contains(':') {
        return Ok(parse_grid(spec)?
            .into_iter()
            .map(Theta::finite)
            .collect::<Result<_, _>>()?);
    }
    spec.split(',')
        .map(|v| v.trim().parse::<Theta>().map_err(CliError::from))
        .collect()
}
