mod input;
mod output;
mod repro;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sldkit::Error;

use input::SourceArgs;

#[derive(Parser, Debug)]
#[command(name = "sldkit", version, about = "Sector-length distributions of graph and stabilizer states")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Worker threads for the enumeration kernels (0 = all cores)
    #[arg(long, global = true, env = sldkit::config::THREADS_ENV, default_value_t = 0)]
    threads: usize,
    /// Largest qubit count for brute-force enumeration
    #[arg(long, global = true, default_value_t = sldkit::Limits::default().max_qubits)]
    max_n: usize,
    /// Largest d^n for qudit enumeration
    #[arg(long, global = true, default_value_t = sldkit::Limits::default().max_qudit_states)]
    max_states: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Brute,
    Closed,
    Group,
    Statevector,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Purity,
    Nsl,
    PptGlobal,
    PptGhzLocal,
    Distill,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a sector-length distribution
    Sld {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Mean, second moment and variance of the normalized distribution
    Moments {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Check identities and bounds of a distribution (optionally against a graph)
    Verify {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Noise threshold below which a criterion certifies entanglement
    Threshold {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = Criterion::Purity)]
        criterion: Criterion,
        /// Marginal size for the generalized purity criterion
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Grid cells for the root search
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        /// Final bracket width
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Apply global or local white noise to a distribution
    Noise {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_parser = ["global", "local"])]
        kind: String,
        /// Noise strength, decimal or p/q
        #[arg(long)]
        p: String,
    },
    /// Monte-Carlo statistics over Erdős–Rényi graph states
    Ensemble {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare every sample with this binomial instead of the mean-matched one
        #[arg(long)]
        fixed_p: Option<f64>,
    },
    /// Recompute the reference tables and write a markdown report
    Repro {
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

/// Failure categories with stable exit codes.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Resource(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Resource(m) | CliError::Verification(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> CliResult<String> {
    let g = &cli.global;
    if g.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(g.threads)
            .build_global()
            .map_err(|e| CliError::Input(format!("cannot configure thread pool: {e}")))?;
    }
    let limits = sldkit::Limits {
        max_qubits: g.max_n,
        max_qudit_states: g.max_states,
        ..sldkit::Limits::default()
    };
    let format = g.format;
    match cli.command {
        Command::Sld { source, method } => {
            let resolved = input::resolve(&source, false)?;
            let (sld, used) = input::compute_sld(&resolved, method, &limits)?;
            Ok(output::sld(&sld, used, format))
        }
        Command::Moments { source } => {
            let resolved = input::resolve(&source, false)?;
            output::moments(&resolved, &limits, format)
        }
        Command::Verify { source } => {
            let resolved = input::resolve(&source, true)?;
            output::verify(&resolved, &limits, format)
        }
        Command::Threshold {
            source,
            criterion,
            m,
            grid,
            tol,
        } => {
            let options = sldkit::noise::SolverOptions {
                grid,
                tolerance: tol,
                ..Default::default()
            };
            output::threshold(&source, criterion, m, &options, &limits, format)
        }
        Command::Noise { source, kind, p } => {
            let resolved = input::resolve(&source, false)?;
            let (sld, _) = input::compute_sld(&resolved, Method::Auto, &limits)?;
            let p = input::parse_probability(&p)?;
            let spec = sldkit::noise::NoiseSpec::new(kind.parse()?, p)?;
            let noisy = sldkit::noise::apply_noise(&sld, &spec)?;
            Ok(output::sld(&noisy, "noise", format))
        }
        Command::Ensemble {
            n,
            q,
            samples,
            seed,
            fixed_p,
        } => {
            let report = sldkit::ensemble::monte_carlo_sld(n, q, samples, seed, fixed_p, &limits)?;
            Ok(output::ensemble(&report, format))
        }
        Command::Repro { out } => {
            let (text, ok) = repro::report(&limits)?;
            match out {
                Some(path) => std::fs::write(&path, &text)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            if ok {
                Ok(String::new())
            } else {
                Err(CliError::Verification("some reproduced values differ from the reference".into()))
            }
        }
    }
}
