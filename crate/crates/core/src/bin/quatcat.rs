use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quatcat::cli::{self, SuiteConfig, Verdict, THREADS_ENV};
use quatcat::cover::CoverClass;

#[derive(Debug, Parser)]
#[command(name = "quatcat", version)]
#[command(about = "Verify the quaternionic logarithm cover of Q_n inside Sp(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every property suite and the cover certificates; print a JSON report.
    Verify {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..))]
        steps: u32,
        #[arg(long, default_value_t = 1e-9, value_parser = positive_real)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the normal cells of Sp(n).
    Cells {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=32))]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Trace one contraction path as CSV.
    Path {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Cover set: O1, O2 or O3.
        #[arg(long, value_parser = parse_class)]
        set: CoverClass,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..))]
        steps: u32,
        #[arg(long, default_value_t = 1e-9, value_parser = positive_real)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a positive real".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_class(s: &str) -> Result<CoverClass, String> {
    s.parse().map_err(|e: quatcat::Error| e.to_string())
}

fn init_threads() {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        // only fails if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Verify {
            n,
            samples,
            steps,
            tol,
            seed,
            out,
        } => {
            let config = SuiteConfig {
                n: n as usize,
                samples: samples as usize,
                time_steps: steps as usize,
                tol,
                seed,
            };
            let report = cli::cmd_verify(&config)?;
            emit(&report.to_json(), out.as_ref())?;
            Ok(match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            })
        }
        Command::Cells { n, json } => {
            print!("{}", cli::cmd_cells(n as usize, json)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Path {
            n,
            set,
            steps,
            tol,
            seed,
            out,
        } => {
            let csv = cli::cmd_path(n as usize, set, steps as usize, tol, seed)?;
            emit(&csv, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
