//! `sdissect`: feasibility, planning, realization and verification of face
//! censuses of sphere dissections.
//!
//! Exit codes: 0 ok, 1 infeasible or failed verification, 2 bad input,
//! 3 internal invariant violation.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use sphere_dissect::complex::to_dot;
use sphere_dissect::oracle::enumerate_n0;
use sphere_dissect::surgery::RealizeError;
use sphere_dissect::{check_feasibility, plan_reduction, realize, verify, Census, Certificate, FeasibilityVerdict};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "sdissect", version, about = "Sphere dissection censuses: check, plan, realize, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a census such as "8,1" is realizable.
    Check { census: String },
    /// Print the surgery plan for a feasible census as JSON.
    Plan { census: String },
    /// Build a verified certificate for a feasible census.
    Realize {
        census: String,
        /// Output file; the certificate goes to stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file and print the recomputed census.
    Verify { path: PathBuf },
    /// List every census of disjoint circle systems, one JSON array per line.
    Enumerate {
        #[arg(long, default_value_t = 8)]
        max_circles: usize,
    },
    /// Render a certificate.
    Export {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
}

/// Error carrying the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: EXIT_INPUT,
            error: error.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn parse_census(text: &str) -> Result<Census, Failure> {
    text.parse::<Census>().map_err(Failure::input)
}

fn read_certificate(path: &Path) -> Result<Certificate, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)?;
    Certificate::from_json(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::input)
}

fn cmd_check(text: &str) -> CmdResult {
    let census = parse_census(text)?;
    Ok(match check_feasibility(&census) {
        FeasibilityVerdict::Feasible { n } => {
            println!("feasible n={n}");
            0
        }
        FeasibilityVerdict::Infeasible { reason } => {
            println!("infeasible reason={reason}");
            EXIT_FAILED
        }
    })
}

fn cmd_plan(text: &str) -> CmdResult {
    let census = parse_census(text)?;
    match plan_reduction(&census) {
        Ok(plan) => {
            println!("{}", serde_json::to_string(&plan).expect("plan serializes"));
            Ok(0)
        }
        Err(e) => {
            println!("infeasible: {e}");
            Ok(EXIT_FAILED)
        }
    }
}

fn cmd_realize(text: &str, out: Option<&Path>) -> CmdResult {
    let census = parse_census(text)?;
    let cert = match realize(&census) {
        Ok(cert) => cert,
        Err(RealizeError::NotFeasible(reason)) => {
            println!("infeasible reason={reason}");
            return Ok(EXIT_FAILED);
        }
        Err(e @ RealizeError::InternalInvariantViolation(_)) => {
            return Err(Failure {
                code: EXIT_INTERNAL,
                error: e.into(),
            })
        }
    };
    // a written certificate is always a verified one
    let report = verify(&cert);
    if report.census.as_ref() != Some(&census) {
        return Err(Failure {
            code: EXIT_INTERNAL,
            error: anyhow::anyhow!("self-verification failed:\n{report}"),
        });
    }
    let summary = format!(
        "n={} V={} E={} circles={} census={}",
        report.n.unwrap_or_default(),
        cert.vertex_count(),
        cert.edge_count(),
        cert.circle_count(),
        census
    );
    match out {
        Some(path) => {
            fs::write(path, cert.to_json() + "\n")
                .with_context(|| format!("writing {}", path.display()))
                .map_err(Failure::input)?;
            println!("{summary}");
        }
        None => {
            println!("{}", cert.to_json());
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn cmd_verify(path: &Path) -> CmdResult {
    let cert = read_certificate(path)?;
    let report = verify(&cert);
    println!("{report}");
    Ok(if report.passed() { 0 } else { EXIT_FAILED })
}

fn cmd_enumerate(max_circles: usize) -> CmdResult {
    let censuses = enumerate_n0(max_circles).map_err(Failure::input)?;
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    for census in censuses {
        let line = serde_json::to_string(&census).expect("census serializes");
        writeln!(lock, "{line}").map_err(Failure::input)?;
    }
    Ok(0)
}

fn cmd_export(path: &Path, format: Format) -> CmdResult {
    let cert = read_certificate(path)?;
    match format {
        Format::Dot => match to_dot(&cert) {
            Ok(dot) => {
                print!("{dot}");
                Ok(0)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(EXIT_FAILED)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { census } => cmd_check(census),
        Command::Plan { census } => cmd_plan(census),
        Command::Realize { census, out } => cmd_realize(census, out.as_deref()),
        Command::Verify { path } => cmd_verify(path),
        Command::Enumerate { max_circles } => cmd_enumerate(*max_circles),
        Command::Export { path, format } => cmd_export(path, *format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
