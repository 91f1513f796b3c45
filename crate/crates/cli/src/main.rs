mod cache;
mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spectrex_core::Error;

#[derive(Parser, Debug)]
#[command(name = "spectrex", version, about = "Extremal and spectral-extremal graphs for disjoint copies of a forbidden graph")]
pub struct Cli {
    /// Worker threads for searches and batch spectral work (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build K_{k-1} ∨ EX(n-k+1, F).
    Construct(ConstructArgs),
    /// Exhaustive extremal search.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Compare exhaustive search with the construction over a range of n.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Certified spectral radius of a graph, or of a clique joined to a complete multipartite graph.
    Spectral(SpectralArgs),
    /// Combinatorial bounds with oracle checks.
    Bounds {
        #[command(subcommand)]
        which: BoundsKind,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Forbidden graph: K3, K4, K5, C5, P3, Petersen, or a graph6 string.
    #[arg(long = "F", value_name = "GRAPH")]
    pub f: String,
    /// Number of disjoint copies forbidden.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Override r = χ(F) - 1; refused unless --force-r is also given.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, requires = "r")]
    pub force_r: bool,
    /// Assert the excess a in ex(n, F) = e(T_{n,r}) + a.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    /// Measure a by exhaustive search over this range of n (e.g. 6..9).
    #[arg(long, value_name = "RANGE", conflicts_with = "a")]
    pub measure_a: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    /// Largest order the exhaustive enumerator accepts.
    #[arg(long, default_value_t = spectrex_core::search::DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
    /// Depth at which the search tree is split into parallel tasks.
    #[arg(long)]
    pub split_depth: Option<usize>,
    /// Residual tolerance for spectral radii.
    #[arg(long, default_value_t = spectrex_core::search::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Print bare graph6 lines instead of a JSON report.
    #[arg(long)]
    pub plain: bool,
    #[arg(short, long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SearchKind {
    /// ex(n, kF) and EX(n, kF).
    Edge(SearchArgs),
    /// Maximum spectral radius over kF-free graphs and its extremal classes.
    Spectral(SearchArgs),
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Write the catalog here instead of stdout.
    #[arg(short, long)]
    pub output: Option<std::path::PathBuf>,
    /// Resume from this checkpoint file.
    #[arg(long)]
    pub resume: Option<std::path::PathBuf>,
    /// Keep a checkpoint file up to date while searching.
    #[arg(long)]
    pub checkpoint: Option<std::path::PathBuf>,
    /// Stop after this many tasks, leaving a checkpoint behind.
    #[arg(long, requires = "checkpoint")]
    pub stop_after: Option<usize>,
    /// Ignore SPECTREX_CACHE_DIR.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Subcommand, Debug)]
pub enum VerifyKind {
    Edge(VerifyArgs),
    Spectral(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Range of orders, `a..b` inclusive, or a single n.
    #[arg(long)]
    pub n: String,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(short, long)]
    pub output: Option<std::path::PathBuf>,
    /// Also write the per-n series as CSV.
    #[arg(long)]
    pub csv: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct SpectralArgs {
    #[command(subcommand)]
    pub quotient: Option<QuotientCommand>,
    /// Graph in graph6; `-` reads one line from stdin.
    #[arg(long)]
    pub graph6: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Include the Perron vector in the report.
    #[arg(long)]
    pub vector: bool,
    #[arg(short, long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum QuotientCommand {
    /// ρ of K_c ∨ K(n_1, …, n_r) from its quotient matrix.
    Quotient(QuotientArgs),
}

#[derive(Args, Debug)]
pub struct QuotientArgs {
    /// Part sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub clique: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Also compare with the spectral radius of the expanded graph.
    #[arg(long)]
    pub expand: bool,
    #[arg(short, long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum BoundsKind {
    /// f(ν, Δ) for graphs with matching number ≤ ν and maximum degree ≤ Δ.
    ChvatalHanson {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        delta: usize,
        /// Check against exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
    /// Bounds on e(T_{n,r}).
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
    /// Lower bound on the size of an intersection of finite sets.
    Intersection {
        /// JSON file holding a list of integer lists; `-` reads stdin.
        #[arg(long)]
        sets: String,
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
    /// Leading term of ex(n, F).
    ErdosStone {
        #[arg(long = "F", value_name = "GRAPH")]
        f: String,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Input = 1,
    Capability = 2,
    Internal = 3,
}

pub fn status_of(e: &Error) -> Status {
    match e {
        Error::Capability { .. } => Status::Capability,
        Error::Invariant(_) | Error::NoConvergence { .. } => Status::Internal,
        _ => Status::Input,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(Status::Input as u8);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: could not size the worker pool: {e}");
            return ExitCode::from(Status::Internal as u8);
        }
    }
    let status = match commands::run(cli.command) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            status_of(&e)
        }
    };
    ExitCode::from(status as u8)
}
