use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use solvgraph_core::graph::{DEFAULT_EXACT_INDEPENDENCE, DEFAULT_K44_BUDGET};
use solvgraph_core::{EngineConfig, GraphMode, VerifyConfig, DEFAULT_GUARD};

#[derive(Debug, Parser)]
#[command(
    name = "solvgraph",
    version,
    about = "Solvabilizers and non-solvable graphs of finite permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radical, solvabilizers per class, degree sequence and graph invariants.
    Analyze { spec: String },
    /// Run the verification battery.
    Verify {
        spec: String,
        /// Run only this check (code such as `C20`, or its id).
        #[arg(long)]
        check: Option<String>,
    },
    /// Export the non-solvable graph.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value = "induced")]
        mode: ModeArg,
    },
    /// Print the multiset of solvabilizer sizes.
    Ordsol { spec: String },
    /// Compare the solvabilizer size profiles of two groups.
    Compare { left: String, right: String },
    /// List the built-in groups.
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Induced,
}

impl From<ModeArg> for GraphMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => GraphMode::Full,
            ModeArg::Induced => GraphMode::Induced,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Graphml,
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Refuse groups with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD, value_parser = positive)]
    pub guard: usize,

    /// Largest vertex count for which the independence number is exact.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_INDEPENDENCE, value_parser = positive)]
    pub exact_independence: usize,

    /// Adjacency-probe budget of the K_{4,4} search.
    #[arg(long, global = true, default_value_t = DEFAULT_K44_BUDGET, value_parser = positive_u64)]
    pub k44_budget: u64,

    /// Fraction of transported solvabilizer rows re-scanned directly.
    #[arg(long, global = true, default_value_t = EngineConfig::default().audit_fraction, value_parser = fraction)]
    pub audit: f64,

    #[arg(long, global = true, default_value_t = EngineConfig::default().seed)]
    pub seed: u64,

    /// Output format; defaults to `dot` for `graph` and `json` elsewhere.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Directory for cached `analyze` reports.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// On a cache hit, recompute and fail if the stored report differs.
    #[arg(long, global = true)]
    pub check_cache: bool,

    /// Worker threads for the engine (default: all cores).
    #[arg(long, global = true, value_parser = positive)]
    pub jobs: Option<usize>,

    /// Record per-check wall time in verification reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl Options {
    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            audit_fraction: self.audit,
            seed: self.seed,
        }
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            engine: self.engine(),
            exact_independence: self.exact_independence,
            k44_budget: self.k44_budget,
            record_timing: self.timings,
            ..VerifyConfig::default()
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn fraction(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(f) if (0.0..=1.0).contains(&f) => Ok(f),
        _ => Err(format!("expected a fraction in [0, 1], got `{s}`")),
    }
}
