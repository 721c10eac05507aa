use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ltoral", version, about = "Exact weight and Alperin-McKay counts for l-local fusion system families")]
pub struct Cli {
    /// Output format: one JSON object per record, or tab-separated rows.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Element budget for every group built (overrides LTORAL_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Add wall-clock durations to reports (they are no longer byte-stable).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Write records to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table of a group with its invariant checks.
    Chartab {
        spec: String,
        /// Also report the l-defect profile.
        #[arg(long)]
        ell: Option<u64>,
    },
    #[command(subcommand)]
    Lemma(Lemma),
    /// Weight count of a fusion-system family against |Irr(W)| - z(kW).
    Awc(FamilyArgs),
    /// Both sides of the Alperin-McKay count at each level.
    Am {
        #[command(flatten)]
        family: FamilyArgs,
        /// Level range `a..b` (inclusive) or a single level.
        #[arg(long, default_value = "1..1")]
        levels: String,
    },
    /// Fusion of outer classes of S_n into the torus.
    Connectivity {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value = "1..1")]
        levels: String,
    },
    /// The pairs (r, s) attached to N_W(U) and the case analysis on them.
    Mu {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value = "1..1")]
        levels: String,
    },
    /// Run a JSON-configured parameter grid in parallel.
    Sweep { config: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Lemma {
    /// |Irr(W)| - z(kW) = |Irr(N_W(U))| = |Irr_0(N_W(U))| = |Irr_0(W)|.
    Thev {
        spec: String,
        #[arg(long)]
        ell: u64,
    },
    /// Orbit count of Irr(N) against the characters of the inertia quotients.
    Little {
        spec: String,
        #[arg(long)]
        normal: String,
    },
    /// Character counts of the fiber product of X1 with GL2(l) or its Borel.
    Chars {
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long)]
        x1: String,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        ell: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    #[value(name = "A", alias = "a")]
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    Root,
    Coweight,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, conflicts_with_all = ["preset", "config"])]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub ell: Option<u64>,
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// JSON family description (see README).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Lattice for family A.
    #[arg(long, value_enum)]
    pub lattice: Option<LatticeArg>,
    /// Torus rank for family A; only l - 1 is supported.
    #[arg(long)]
    pub rank: Option<usize>,
}
