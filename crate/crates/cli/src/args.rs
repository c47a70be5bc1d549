use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "coprimes", version, about = "Exact counts of coprime compositions and their asymptotics")]
pub struct Cli {
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest integer covered by the factor table.
    #[arg(long, global = true, env = "COPRIMES_TABLE_LIMIT")]
    pub table_limit: Option<u64>,

    /// TOML file with defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count one composition family exactly.
    Count(CountArgs),
    /// Enclose the Euler-product constants C_k and D_k.
    Constants(ConstantsArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Compare exact counts with main terms over a grid of n.
    Sweep(SweepArgs),
    /// Print every constant C_1..C_7 and D_2..D_7.
    Table(TableArgs),
}

#[derive(Debug, Args, Default)]
pub struct BudgetArgs {
    /// Most compositions an oracle may enumerate.
    #[arg(long)]
    pub enumeration_budget: Option<u64>,
    /// Largest n for the fast exact algorithms.
    #[arg(long)]
    pub fast_n_max: Option<u64>,
    /// Largest k for the fast exact algorithms.
    #[arg(long)]
    pub fast_k_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// A, B, K, U, Kd or Bd.
    #[arg(long)]
    pub family: String,
    #[arg(short = 'k')]
    pub k: u32,
    #[arg(short = 'n')]
    pub n: u64,
    /// Square-free modulus for Kd and Bd.
    #[arg(short = 'd')]
    pub d: Option<u64>,
    /// oracle, moebius, residue-dp, per-head or closed-form.
    #[arg(long)]
    pub method: Option<String>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// C or D.
    #[arg(long, required_unless_present = "reproduce_table1")]
    pub kind: Option<String>,
    #[arg(short = 'k', required_unless_present = "reproduce_table1")]
    pub k: Option<u32>,
    /// Target absolute width of the enclosure.
    #[arg(long)]
    pub width: Option<f64>,
    /// Largest prime cutoff the search may reach.
    #[arg(long)]
    pub max_cutoff: Option<u64>,
    /// Check the eleven published 5-decimal values.
    #[arg(long, conflicts_with_all = ["kind", "k"])]
    pub reproduce_table1: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// lemma32, identities, theta-xi, prop42, prop53, thm1 or factors.
    pub suite: String,
    #[arg(long)]
    pub pmax: Option<u64>,
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long)]
    pub nmax: Option<u64>,
    #[arg(long)]
    pub dmax: Option<u64>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// A or B.
    #[arg(long)]
    pub family: String,
    #[arg(short = 'k')]
    pub k: u32,
    #[arg(long)]
    pub n_from: u64,
    #[arg(long)]
    pub n_to: u64,
    #[arg(long, default_value_t = 1)]
    pub step: u64,
    /// Exact-count method; defaults to the fastest exact one.
    #[arg(long)]
    pub method: Option<String>,
    /// Report main terms only.
    #[arg(long, conflicts_with = "method")]
    pub no_exact: bool,
    /// Absolute width of the constant enclosure behind the main terms.
    #[arg(long)]
    pub width: Option<f64>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub max_cutoff: Option<u64>,
}
