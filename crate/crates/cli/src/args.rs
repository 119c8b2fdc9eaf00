//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use zerosum::{Group, InvariantKind, LemmaId, WeightSet};

#[derive(Parser, Debug)]
#[command(name = "zerosum", version, about = "Weighted zero-sum invariants of finite abelian groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Node cap per search
    #[arg(long, global = true, env = "ZS_BUDGET_NODES")]
    pub budget_nodes: Option<u64>,
    /// Wall-clock cap per search, in seconds
    #[arg(long, global = true, env = "ZS_BUDGET_SECONDS")]
    pub budget_seconds: Option<f64>,
    /// JSON-lines result cache
    #[arg(long, global = true, env = "ZS_CACHE", value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Report file (CSV for verify-identity, JSON otherwise)
    #[arg(long, global = true, env = "ZS_OUT", value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "ZS_WORKERS")]
    pub workers: Option<usize>,
    /// Seed for every randomized suite
    #[arg(long, global = true, env = "ZS_SEED", default_value_t = 1)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one invariant
    Compute(ComputeArgs),
    /// Check E_A(G) = |G| + D_A(G) - 1 over a catalog
    VerifyIdentity(IdentityArgs),
    /// Search decomposition witnesses for long sequences
    TheoremSweep(SweepArgs),
    /// Run randomized lemma checks
    LemmaSuite(LemmaArgs),
    /// Inspect or reset the result cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// davenport, egz or davenport_classical
    pub kind: InvariantKind,
    #[arg(long)]
    pub group: Group,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub weights: WeightSet,
    /// Subsequence length for egz (default |G|)
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    /// Groups to check (repeatable); defaults to the catalog
    #[arg(long = "group")]
    pub groups: Vec<Group>,
    /// Weight sets to check (repeatable); defaults to the catalog sets
    #[arg(long = "weights", allow_hyphen_values = true)]
    pub weights: Vec<WeightSet>,
    /// Largest catalog group order
    #[arg(long, default_value_t = 9)]
    pub max_order: usize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Groups to sweep (repeatable); defaults to every group up to --max-order
    #[arg(long = "group")]
    pub groups: Vec<Group>,
    /// Weight sets (repeatable); defaults to {1}, {1,-1}, {1,2}
    #[arg(long = "weights", allow_hyphen_values = true)]
    pub weights: Vec<WeightSet>,
    #[arg(long, default_value_t = 6)]
    pub max_order: usize,
    /// Subsequence length (default |G|)
    #[arg(long)]
    pub n: Option<usize>,
    /// Every sequence up to automorphism instead of random samples
    #[arg(long)]
    pub exhaustive: bool,
    /// Random samples per family when not exhaustive
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Also sweep G + C_k glued settings for these k (repeatable)
    #[arg(long = "glue")]
    pub glue: Vec<u64>,
    /// Rerun the instances stored in a replay file instead of sweeping
    #[arg(long, value_name = "PATH")]
    pub replay: Option<PathBuf>,
    /// Where failing instances are written
    #[arg(long, value_name = "PATH", default_value = "theorem-failures.jsonl")]
    pub failures: PathBuf,
}

#[derive(Args, Debug)]
pub struct LemmaArgs {
    /// One lemma, or every lemma when omitted
    #[arg(long)]
    pub lemma: Option<LemmaId>,
    /// Random trials per lemma (default depends on the lemma)
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// Print every valid record
    List,
    /// Re-check every certificate
    Validate,
    /// Delete the cache file
    Clear,
}
