//! `defect` — command-line reproductions of the defect-variance numbers.
//!
//! Exit status: 0 when every embedded invariant check passes, 1 when a
//! check fails or a numerical routine does not converge, 2 on bad
//! configuration.

mod commands;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Artifact, CmdError};

#[derive(Parser)]
#[command(
    name = "defect",
    version,
    about = "Defect of random spherical harmonics: exact variance, limit constants, Monte Carlo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format; JSON is canonical, CSV is a projection.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sample-level parallelism
    /// (overrides the DEFECT_THREADS environment variable).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Limit constant C by two routes, with bounds and cross-checks.
    Constants,
    /// Scaled Legendre moment table l^2 M_j(l) against its Bessel limit.
    Moments {
        /// Odd moment order >= 3.
        #[arg(long, default_value_t = 3)]
        j: u32,
        /// Comma-separated even degrees.
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        l: Vec<u32>,
    },
    /// Exact defect variance Var(D_l) = 32 pi I_l at even degrees.
    Variance {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
        l: Vec<u32>,
    },
    /// Monte Carlo defect statistics against the exact formula.
    Mc {
        /// Even degree.
        #[arg(long, default_value_t = 16)]
        l: u32,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Fixed default; never derived from the clock.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Grid resolution factor (rings per unit degree), >= 4.
        #[arg(long, default_value_t = 8.0)]
        rho: f64,
    },
    /// Exact identity between the third moment and the squared diagonal
    /// Clebsch-Gordan coefficient.
    CgCheck {
        #[arg(long, default_value_t = 40)]
        l_max: u32,
    },
    /// Two-regime Hilb error envelope: calibrate on one degree, validate on
    /// others.
    HilbCheck {
        #[arg(long, default_value_t = 50)]
        l_fit: u32,
        #[arg(long, value_delimiter = ',', default_value = "100,200")]
        l: Vec<u32>,
    },
    /// Constants plus the variance convergence table and all checks.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads(cli.threads) {
        eprintln!("defect: {msg}");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Constants => commands::constants(),
        Command::Moments { j, l } => commands::moments(*j, l),
        Command::Variance { l } => commands::variance(l),
        Command::Mc {
            l,
            samples,
            seed,
            rho,
        } => commands::mc(*l, *samples, *seed, *rho),
        Command::CgCheck { l_max } => commands::cg_check(*l_max),
        Command::HilbCheck { l_fit, l } => commands::hilb_check(*l_fit, l),
        Command::Report => commands::full_report(),
    };
    let artifact = match result {
        Ok(artifact) => artifact,
        Err(CmdError::Config(msg)) => {
            eprintln!("defect: configuration error: {msg}");
            return ExitCode::from(2);
        }
        Err(CmdError::Run(msg)) => {
            eprintln!("defect: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(msg) = emit(&cli, &artifact) {
        eprintln!("defect: {msg}");
        return ExitCode::from(1);
    }
    if artifact.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("defect: one or more embedded invariant checks failed");
        ExitCode::from(1)
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), String> {
    let requested = match flag {
        Some(n) => Some(n),
        None => match std::env::var("DEFECT_THREADS") {
            Ok(v) => Some(
                v.parse::<usize>()
                    .map_err(|_| format!("DEFECT_THREADS must be a positive integer, got {v:?}"))?,
            ),
            Err(_) => None,
        },
    };
    match requested {
        Some(0) => Err("thread count must be positive".into()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("could not configure the thread pool: {e}")),
        None => Ok(()),
    }
}

fn emit(cli: &Cli, artifact: &Artifact) -> Result<(), String> {
    let body = match cli.format {
        Format::Json => &artifact.json,
        Format::Csv => &artifact.csv,
    };
    match &cli.output {
        Some(path) => {
            fs::write(path, body).map_err(|e| format!("could not write {}: {e}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| format!("could not write report: {e}"))
        }
    }
}
