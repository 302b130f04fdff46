//! `nhom`: validate algebra files, solve derivation spaces, and run the
//! structural checks from the command line.
//!
//! Exit codes: 0 when every requested check passes, 1 when a mathematical
//! check fails (the report is still written), 2 on input errors.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nhom::harness::{Harness, DEFAULT_KMAX, DEFAULT_SAMPLES, DEFAULT_SEED};
use nhom::NHomAlgebra;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "nhom", version, about = "Exact derivation spaces of multiplicative n-Hom Lie superalgebras")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check skew-symmetry, the Hom-Jacobi identity, multiplicativity and the degree law.
    Validate {
        /// Algebra file, or `-` for standard input.
        file: String,
    },
    /// Compute the center, split by parity.
    Center { file: String },
    /// Solve one kind of space for every level up to --kmax.
    Solve {
        file: String,
        /// One of Omega, Der, ZDer, C, QC, QDer, GDer.
        #[arg(long)]
        kind: nhom::Kind,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
        /// 0 or 1; both parities when omitted.
        #[arg(long, value_parser = parse_parity)]
        parity: Option<nhom::Parity>,
    },
    /// Run every structural check on the algebra.
    Props {
        file: String,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random quadruples for the Jordan identity, on top of the basis triples.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Emit the t-extension as an algebra file.
    Extend { file: String },
    /// Check the embedding of quasiderivations and the decomposition of Der of the extension.
    Decompose {
        file: String,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_parity(s: &str) -> Result<nhom::Parity, String> {
    match s {
        "0" => Ok(nhom::Parity::Even),
        "1" => Ok(nhom::Parity::Odd),
        _ => Err(format!("parity must be 0 or 1, got {s:?}")),
    }
}

/// What a command produced: the text to emit and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

#[derive(Debug)]
pub struct InputError(pub String);

fn read_input(file: &str) -> Result<(NHomAlgebra, Vec<u8>), InputError> {
    let mut bytes = Vec::new();
    if file == "-" {
        std::io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| InputError(format!("cannot read standard input: {e}")))?;
    } else {
        bytes = std::fs::read(file).map_err(|e| InputError(format!("cannot read {file}: {e}")))?;
    }
    let text = std::str::from_utf8(&bytes).map_err(|_| InputError(format!("{file}: not valid UTF-8")))?;
    let alg = nhom::format::parse_algebra_str(text).map_err(|e| InputError(format!("{file}: {e}")))?;
    Ok((alg, bytes))
}

/// Commands other than `validate` need an algebra that satisfies the axioms.
fn require_valid(alg: &NHomAlgebra, file: &str) -> Result<(), InputError> {
    let report = alg.validate();
    if report.is_ok() {
        return Ok(());
    }
    let axioms: Vec<String> = report.failures.iter().map(|f| format!("{:?}", f.axiom)).collect();
    Err(InputError(format!("{file}: the algebra fails validation ({})", axioms.join(", "))))
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Validate { file } => {
            let (alg, bytes) = read_input(file)?;
            Ok(commands::validate(&alg, &bytes))
        }
        Command::Center { file } => {
            let (alg, bytes) = read_input(file)?;
            require_valid(&alg, file)?;
            Ok(commands::center(&alg, &bytes))
        }
        Command::Solve {
            file,
            kind,
            kmax,
            parity,
        } => {
            let (alg, bytes) = read_input(file)?;
            require_valid(&alg, file)?;
            Ok(commands::solve(&alg, &bytes, *kind, *kmax, *parity))
        }
        Command::Props {
            file,
            kmax,
            seed,
            samples,
        } => {
            let (alg, bytes) = read_input(file)?;
            require_valid(&alg, file)?;
            let harness = Harness::new(&alg, *kmax, *seed);
            Ok(commands::props(&harness, &bytes, *seed, *samples))
        }
        Command::Extend { file } => {
            let (alg, _) = read_input(file)?;
            require_valid(&alg, file)?;
            commands::extend(&alg).map_err(|e| InputError(format!("{file}: {e}")))
        }
        Command::Decompose { file, kmax, seed } => {
            let (alg, bytes) = read_input(file)?;
            require_valid(&alg, file)?;
            commands::decompose(&alg, &bytes, *kmax, *seed).map_err(|e| InputError(format!("{file}: {e}")))
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.out, &outcome.text) {
                eprintln!("nhom: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("nhom: {msg}");
            ExitCode::from(2)
        }
    }
}
