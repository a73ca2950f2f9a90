//! `opdyn` — compute Friedkin-Johnsen opinion-dynamics quantities.
//!
//! Exit codes: 0 success, 1 i/o or internal failure, 2 parse error,
//! 3 validation error, 4 solver non-convergence, 5 size-guard refusal.

mod bench;
mod commands;

use clap::{Args, Parser, Subcommand};
use opdyn_core::Error;

pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;
pub const EXIT_GUARD: i32 = 5;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Validation(_) | Error::DimensionMismatch { .. } | Error::Disconnected => {
            EXIT_VALIDATION
        }
        Error::Convergence { .. } => EXIT_CONVERGENCE,
        Error::DenseGuard { .. } | Error::EnumerationCap { .. } => EXIT_GUARD,
        Error::Io(_) => EXIT_IO,
    }
}

#[derive(Parser)]
#[command(
    name = "opdyn",
    about = "Internal conflict, disagreement, polarization, controversy, and the \
             disagreement-controversy index of the Friedkin-Johnsen model",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OpinionArgs {
    /// Opinion file: one value per line, '#' comments skipped
    #[arg(long)]
    opinions: Option<std::path::PathBuf>,
    /// Distribution to sample instead: uniform | exponential | power-law
    #[arg(long)]
    distribution: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Lower cutoff for exponential / power-law sampling
    #[arg(long, default_value_t = 1.0)]
    x_min: f64,
    /// Power-law exponent
    #[arg(long, default_value_t = 2.5)]
    alpha: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the five quantities for one graph
    Compute {
        /// Edge-list file: lines "u v [w]"
        #[arg(long)]
        graph: std::path::PathBuf,
        /// Node index base of the input: auto | 0 | 1
        #[arg(long, default_value = "auto")]
        index_base: String,
        #[command(flatten)]
        opinions: OpinionArgs,
        /// exact | approx
        #[arg(long, default_value = "approx")]
        method: String,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        /// theoretical-delta | practical-tolerance
        #[arg(long, default_value = "practical-tolerance")]
        delta_mode: String,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// text | json
        #[arg(long, default_value = "text")]
        format: String,
        /// Also write the report to this file
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        /// Print the equilibrium vector and cross-check norms
        #[arg(long)]
        debug: bool,
    },
    /// Extract the largest connected component
    Lcc {
        #[arg(long)]
        graph: std::path::PathBuf,
        #[arg(long, default_value = "auto")]
        index_base: String,
        /// Output edge list (relabeled 0-based)
        #[arg(long)]
        output: std::path::PathBuf,
        /// Output two-column "old new" relabeling map
        #[arg(long)]
        map: Option<std::path::PathBuf>,
    },
    /// Sample an internal-opinion vector
    GenOpinions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        distribution: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        x_min: f64,
        #[arg(long, default_value_t = 2.5)]
        alpha: f64,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Cross-check the dense forest matrix against brute-force enumeration
    Oracle {
        /// Largest node count per random instance (enumeration cap is 10)
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the timing / relative-error protocol over several graphs
    Bench {
        /// Edge-list files
        #[arg(long, required = true, num_args = 1..)]
        graphs: Vec<std::path::PathBuf>,
        /// Comma-separated distribution kinds
        #[arg(long, default_value = "uniform,exponential,power-law")]
        distributions: String,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        /// Run the exact path only when n' is at most this
        #[arg(long, default_value_t = 20_000)]
        exact_cutoff: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "practical-tolerance")]
        delta_mode: String,
        /// Write machine-readable line-delimited JSON rows here
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            graph,
            index_base,
            opinions,
            method,
            epsilon,
            delta_mode,
            max_iters,
            format,
            output,
            debug,
        } => commands::compute(
            &graph,
            &index_base,
            &opinions,
            &method,
            epsilon,
            &delta_mode,
            max_iters,
            &format,
            output.as_deref(),
            debug,
        ),
        Command::Lcc {
            graph,
            index_base,
            output,
            map,
        } => commands::lcc(&graph, &index_base, &output, map.as_deref()),
        Command::GenOpinions {
            n,
            distribution,
            seed,
            x_min,
            alpha,
            output,
        } => commands::gen_opinions(n, &distribution, seed, x_min, alpha, output.as_deref()),
        Command::Oracle {
            max_n,
            trials,
            seed,
        } => commands::oracle(max_n, trials, seed),
        Command::Bench {
            graphs,
            distributions,
            epsilon,
            exact_cutoff,
            seed,
            delta_mode,
            output,
        } => bench::run(
            &graphs,
            &distributions,
            epsilon,
            exact_cutoff,
            seed,
            &delta_mode,
            output.as_deref(),
        ),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}
