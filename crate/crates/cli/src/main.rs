//! `binmat`: command-line frontend.
//!
//! Reports go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 2 input error, 3 search budget exhausted, 4 internal consistency failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use binmat::report::ReportFormat;

#[derive(Parser, Debug)]
#[command(name = "binmat", version, about = "Exact tools for binary matroids in PG(n-1, 2)")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Node budget per backtracking search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

impl GlobalOpts {
    pub fn format(&self) -> ReportFormat {
        if self.json {
            ReportFormat::Json
        } else {
            ReportFormat::Text
        }
    }

    pub fn search_budget(&self) -> binmat::SearchBudget {
        self.budget
            .map(binmat::SearchBudget::new)
            .unwrap_or_default()
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a matroid file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Critical number χ(M) with a witness flat.
    Chi { file: PathBuf },
    /// Triangle-freeness and I_(1,t)-freeness.
    Check {
        #[arg(long)]
        triangle_free: bool,
        #[arg(long, value_name = "T")]
        i1t: Option<usize>,
        file: PathBuf,
    },
    /// ω(M): the largest flat inside the ground set.
    Omega { file: PathBuf },
    /// The support of E + E + E.
    Sumset3 { file: PathBuf },
    /// ε-uniformity of the ground set as a subset of F₂ⁿ.
    Uniform {
        #[arg(long, value_name = "P/Q")]
        eps: String,
        file: PathBuf,
    },
    /// Refine to an ε-regular subspace.
    Regularize {
        #[arg(long, value_name = "P/Q")]
        eps: String,
        #[arg(long, value_name = "D")]
        max_codim: Option<usize>,
        file: PathBuf,
    },
    /// A coset of a regular subspace inside E + E + E.
    Keylemma {
        #[arg(long, value_name = "P/Q")]
        alpha: String,
        #[arg(long, value_name = "D")]
        max_codim: Option<usize>,
        file: PathBuf,
    },
    /// Re-verify stated lemmas at small scale.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run the critical-number descent.
    Pipeline {
        #[arg(short = 't', value_name = "T")]
        t: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        #[arg(long, value_name = "K")]
        k_cap: Option<usize>,
        /// A value of GR(c, t) to display the implied density floor.
        #[arg(long, value_name = "N")]
        gr: Option<u64>,
        #[arg(long, value_name = "D")]
        max_codim: Option<usize>,
        file: PathBuf,
    },
    /// Geometric Ramsey searches.
    #[command(subcommand)]
    Ramsey(RamseyCommand),
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// The tripod T_k.
    Tripod {
        #[arg(short = 'k')]
        k: usize,
    },
    /// The five-point circuit in dimension t.
    C5t {
        #[arg(short = 't')]
        t: usize,
    },
    /// AG(n-1, 2) inside PG(n-1, 2).
    Ag {
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// The three tripod properties, point by point.
    TripodLemma {
        #[arg(short = 'k')]
        k: usize,
    },
    /// The triple-count lower bound on random ε-uniform sets.
    Counting {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_name = "P/Q", default_value = "1/4")]
        eps: String,
    },
    /// The Bose–Burton bound on all (or random) subsets.
    BoseBurton {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 't')]
        t: usize,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RamseyCommand {
    /// Least n forcing a monochromatic r-flat in every c-colouring.
    Gr {
        #[arg(short = 'c')]
        c: u32,
        #[arg(short = 'r')]
        r: usize,
        #[arg(long = "nmax")]
        n_max: usize,
        /// Write certificate colourings into this directory.
        #[arg(long, value_name = "DIR")]
        certificates: Option<PathBuf>,
        /// Disable colour-symmetry pruning.
        #[arg(long)]
        no_pruning: bool,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
pub enum StrategyArg {
    Exhaustive,
    Regularity,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || commands::run(&cli.global, &cli.command);
    let outcome = match cli.global.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(commands::CliError::Usage(format!("thread pool: {e}"))),
        },
        None => run(),
    };
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("binmat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
