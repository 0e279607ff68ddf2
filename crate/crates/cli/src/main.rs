mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "tropx", version, about = "Exact divisor computations on tropical complexes")]
struct Cli {
    /// Seed recorded in the report; every subcommand is deterministic.
    #[arg(long, global = true, default_value_t = 20240917)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the structure constants of every ridge sum to its number of facets.
    Validate { complex: PathBuf },
    /// Check that every local intersection matrix has exactly one positive eigenvalue.
    Tropical { complex: PathBuf },
    /// Print the canonical divisor.
    Canonical { complex: PathBuf },
    /// Integral divisors modulo divisors of integral PL functions.
    Classgroup {
        complex: PathBuf,
        /// Restrict to Weil divisors.
        #[arg(long)]
        weil: bool,
    },
    /// Check that a divisor is locally Q-Cartier at every codimension-2 simplex.
    Weil { complex: PathBuf, divisor: PathBuf },
    /// Search subdivision orders for a PL function moving one divisor to the other.
    Equiv {
        complex: PathBuf,
        d: PathBuf,
        d_prime: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_order: u32,
    },
    /// Write the order-m subdivision and the map back to the base complex.
    Subdivide {
        complex: PathBuf,
        #[arg(short = 'm', default_value_t = 2)]
        m: u32,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Rank of a divisor on a graph, by reduction and exhaustive removal.
    Rank { complex: PathBuf, divisor: PathBuf },
    /// h0 of a divisor on a graph, optionally with chips at rational points.
    H0 {
        complex: PathBuf,
        divisor: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Certified lower bound and bounded upper search for h0 on a surface.
    H0Bound {
        complex: PathBuf,
        divisor: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_order: u32,
        /// Bound on |phi| in the searched families; defaults to 4 (number of points) + 4.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Compare h0(D) + h0(K - D) with D.(D - K)/2 + chi.
    Rr {
        complex: PathBuf,
        divisor: PathBuf,
        #[arg(long)]
        h0: i64,
        #[arg(long)]
        h0k: i64,
        #[arg(long)]
        pairing: i64,
    },
    /// Run a built-in surface example.
    Example {
        which: Example,
        /// Largest m for the tetrahedron rows D = 2m [ab].
        #[arg(long, default_value_t = 3)]
        max_m: i64,
        /// Largest subdivision order searched for upper bounds or equivalences.
        #[arg(long, default_value_t = 2)]
        max_order: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Example {
    Tetrahedron,
    Cylinder,
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("TROPX_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Malformed(format!("TROPX_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Malformed(format!("cannot size the thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let name = commands::name(&cli.command);
    let result = configure_threads().and_then(|()| commands::run(&cli.command, cli.seed));
    eprintln!("tropx {name}: {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(match report.outcome {
                Outcome::Holds => 0,
                Outcome::Fails => 1,
            })
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("tropx {name}: {msg}");
            ExitCode::from(2)
        }
    }
}
