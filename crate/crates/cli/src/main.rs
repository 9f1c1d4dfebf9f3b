mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use soergel_core::Error;

use output::Format;

/// Exact computations with Coxeter groups, Hecke algebras, light leaves and
/// Bott-Samelson bimodules.
///
/// Systems are written A<n> (symmetric group on n+1 letters), I2(<m>),
/// I2(inf) or U<k>. Elements and words are dot-separated generators such as
/// s0.s1.s0, with `e` for the empty word.
///
/// Exit codes: 0 success, 2 invalid arguments, 3 unsupported kind of system,
/// 4 internal invariant violation.
#[derive(Parser, Debug)]
#[command(name = "soergel", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,

    /// Append-only KL cache file (JSON lines).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Recompute every cached record of the system and compare byte for byte.
    #[arg(long, global = true, requires = "cache")]
    pub verify: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coxeter group combinatorics.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Hecke algebra and Kazhdan-Lusztig basis.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Light leaves and double leaves.
    #[command(subcommand)]
    Leaves(LeavesCmd),
    /// Bott-Samelson bimodules (symmetric groups only).
    #[command(subcommand)]
    Bs(BsCmd),
    /// Reduced-expression graphs and path morphisms.
    #[command(subcommand)]
    Rex(RexCmd),
}

#[derive(Args, Debug, Clone)]
pub struct SystemArg {
    /// Coxeter system, e.g. A2, I2(5), I2(inf), U3.
    #[arg(long, short = 's')]
    pub system: String,
}

#[derive(Subcommand, Debug)]
pub enum CoxeterCmd {
    /// Rank, order, Coxeter matrix and longest element.
    Info(SystemArg),
    /// Elements in length order with their canonical words.
    Elements {
        #[command(flatten)]
        sys: SystemArg,
        /// Length bound, required for infinite groups.
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Compare two elements in the Bruhat order.
    Bruhat {
        #[command(flatten)]
        sys: SystemArg,
        x: String,
        y: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum HeckeCmd {
    /// Product of two basis elements, expanded in the standard basis.
    Mult {
        #[command(flatten)]
        sys: SystemArg,
        /// Which basis the factors belong to.
        #[arg(long, value_parser = ["std", "kl"], default_value = "kl")]
        basis: String,
        x: String,
        y: String,
    },
    /// The KL basis element of an element.
    Kl {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, short = 'e')]
        element: String,
        /// Left descent used in the recursion (defaults to the lowest).
        #[arg(long)]
        descent: Option<String>,
    },
    /// All coefficients h_{y,x} up to a length bound.
    KlTable {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// b_s b_x in a universal group via Dyer's formula.
    Dyer {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        gen: String,
        #[arg(long, short = 'e')]
        element: String,
    },
    /// (b_x b_y) / (v + v^-1).
    Star {
        #[command(flatten)]
        sys: SystemArg,
        x: String,
        y: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LeavesCmd {
    /// All light leaves of a word.
    Enum {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, short = 'w')]
        word: String,
    },
    /// Graded count of double leaves between two words.
    Homcount {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        word1: String,
        #[arg(long)]
        word2: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BsCmd {
    /// Graded rank of a Bott-Samelson bimodule as a left module.
    Rank {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, short = 'w')]
        word: String,
    },
    /// The idempotent e on B_s B_r B_s and the ranks of its image.
    Idempotent {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        s: String,
        #[arg(long)]
        r: String,
    },
    /// The splitting of B_s B_r B_s in S3.
    DecomposeS3,
}

#[derive(Subcommand, Debug)]
pub enum RexCmd {
    /// Nodes and edges of the reduced-expression graph.
    Build {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, short = 'e')]
        element: String,
    },
    /// Export the graph as JSON, or as Graphviz DOT with --dot.
    Export {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, short = 'e')]
        element: String,
        #[arg(long)]
        dot: bool,
    },
    /// Compare the path morphisms of complete closed walks.
    Forking {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, short = 'e')]
        element: String,
        /// Comma-separated strategies: dfs, bfs, random:<seed>.
        #[arg(long, value_delimiter = ',', default_value = "dfs,bfs,random:1")]
        strategies: Vec<String>,
        /// Report the runtime; without it `runtime_ms` is null so output is reproducible.
        #[arg(long)]
        timing: bool,
    },
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::KindMismatch { .. } => 3,
        Error::Internal(_) | Error::NotIdempotent | Error::Incompatible(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
