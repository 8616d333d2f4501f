//! `edr`: command-line front end for edr-core.
//!
//! Exit codes: 0 on success, 1 on parse or usage errors, 2 on precondition
//! or verification failures. Errors are printed as `{"error": {"code", "message"}}`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use edr_core::adequate::{adequate_split, pi_split};
use edr_core::checkers::{check_finite_predicate, Predicate};
use edr_core::complete::{complete_row, sr1_quotient_lift, sr2_reduce};
use edr_core::format::{self, Certificate};
use edr_core::reduce::{diagonal_reduce, verify_reduction};
use edr_core::{Error, Matrix, Ring};
use log::{debug, info};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "edr",
    version,
    about = "Diagonal reduction, row completion and adequacy tools over exact rings"
)]
struct Cli {
    /// Ring descriptor: `Z`, `Z/12`, `GF(5)[x]`, `Zser8` or `prod(Z,Z/6)`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Matrix file: `ring: <descriptor>`, `shape: <m> <n>`, then the rows.
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,
    /// Write the output document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized internals; the library itself is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonal reduction certificate `P A Q = D` for the matrix file.
    Reduce,
    /// Complete a row to a square matrix with the given determinant.
    Complete {
        /// Comma-separated element literals.
        #[arg(long)]
        row: String,
        #[arg(long)]
        det: String,
    },
    /// Adequate split `a = r s` relative to `b`.
    Split {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Split a power of `a` (needed over Z/n).
        #[arg(long)]
        pi: bool,
    },
    /// Stable-range lifts for a unimodular triple.
    Lift {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        /// Produce the two-element reduction instead of the quotient lift.
        #[arg(long)]
        sr2: bool,
    },
    /// Exhaustively check a predicate on a finite ring.
    Check {
        /// StableRange1, Clean, PmRing or JStableCondition.
        #[arg(long)]
        predicate: String,
    },
    /// Verify a certificate; reduction certificates also need `--matrix`.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Lib(Error),
    Rejected(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn ring(cli: &Cli) -> Result<Ring, Failure> {
    let text = cli
        .ring
        .as_deref()
        .ok_or_else(|| Failure::Usage("--ring is required".into()))?;
    Ok(format::parse_ring(text)?)
}

/// Loads `--matrix`; a `--ring` flag, when given, must agree with the file.
fn matrix(cli: &Cli) -> Result<Matrix, Failure> {
    let path = cli
        .matrix
        .as_deref()
        .ok_or_else(|| Failure::Usage("--matrix is required".into()))?;
    let m = format::parse_matrix(&read(path)?)?;
    if let Some(text) = &cli.ring {
        let flag = format::parse_ring(text)?;
        if &flag != m.ring() {
            return Err(Error::DescriptorMismatch {
                left: flag.to_string(),
                right: m.ring().to_string(),
            }
            .into());
        }
    }
    Ok(m)
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    if let Some(seed) = cli.seed {
        debug!("seed {seed} (no randomized internals)");
    }
    match &cli.command {
        Command::Reduce => {
            let a = matrix(cli)?;
            info!(
                "reducing a {}x{} matrix over {}",
                a.rows(),
                a.cols(),
                a.ring()
            );
            let cert = diagonal_reduce(&a)?;
            Ok(serde_json::to_value(format::reduction_doc(&cert)).expect("serializable"))
        }
        Command::Complete { row, det } => {
            let ring = ring(cli)?;
            let row = format::parse_element_list(&ring, row)?;
            let det = format::parse_element(&ring, det)?;
            let cert = complete_row(&row, &det)?;
            Ok(serde_json::to_value(format::completion_doc(&cert)).expect("serializable"))
        }
        Command::Split { a, b, pi } => {
            let ring = ring(cli)?;
            let (a, b) = (
                format::parse_element(&ring, a)?,
                format::parse_element(&ring, b)?,
            );
            let split = if *pi {
                pi_split(&a, &b)?
            } else {
                adequate_split(&a, &b)?
            };
            Ok(json!({
                "r": format::element(&split.r),
                "s": format::element(&split.s),
                "power": split.power,
            }))
        }
        Command::Lift { a, b, c, sr2 } => {
            let ring = ring(cli)?;
            let parse = |s: &str| format::parse_element(&ring, s);
            let (a, b, c) = (parse(a)?, parse(b)?, parse(c)?);
            if *sr2 {
                let (y1, y2) = sr2_reduce(&a, &b, &c)?;
                Ok(json!({ "y1": format::element(&y1), "y2": format::element(&y2) }))
            } else {
                let y = sr1_quotient_lift(&a, &b, &c)?;
                Ok(json!({ "y": format::element(&y) }))
            }
        }
        Command::Check { predicate } => {
            let ring = ring(cli)?;
            let predicate: Predicate = predicate.parse()?;
            info!("checking {predicate} on {ring}");
            Ok(check_finite_predicate(&ring, predicate)?.to_json())
        }
        Command::Verify { cert } => verify(cli, cert),
    }
}

fn verify(cli: &Cli, path: &Path) -> Result<Value, Failure> {
    let (kind, failures) = match format::parse_certificate(&read(path)?)? {
        Certificate::Reduction(cert) => {
            let a = matrix(cli)?;
            if a.ring() != cert.d.ring() {
                return Err(Error::DescriptorMismatch {
                    left: a.ring().to_string(),
                    right: cert.d.ring().to_string(),
                }
                .into());
            }
            (format::REDUCTION_KIND, verify_reduction(&a, &cert).failures)
        }
        Certificate::Completion(cert) => {
            let failures = if cert.verify() {
                vec![]
            } else {
                vec!["completion".to_string()]
            };
            (format::COMPLETION_KIND, failures)
        }
    };
    let report = json!({ "kind": kind, "valid": failures.is_empty(), "failures": failures });
    if failures.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Rejected(report))
    }
}

fn emit(cli: &Cli, doc: &Value) -> Result<(), Failure> {
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(doc).expect("serializable")
    );
    match &cli.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_doc(code: &str, message: String) -> Value {
    json!({ "error": { "code": code, "message": message } })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (code, doc) = match run(&cli).and_then(|doc| emit(&cli, &doc)) {
        Ok(()) => return ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => (1, error_doc("UsageError", msg)),
        Err(Failure::Io(msg)) => (1, error_doc("IoError", msg)),
        Err(Failure::Lib(e)) => (
            if e.is_parse() { 1 } else { 2 },
            error_doc(e.code(), e.to_string()),
        ),
        Err(Failure::Rejected(report)) => (2, report),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("serializable")
    );
    ExitCode::from(code)
}
