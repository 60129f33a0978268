//! `birdeg`: classify parameters of the map family `k_F`, compute degree
//! sequences, pull-back matrices and orbits, and cross-check them.
//!
//! Exit codes: 0 success, 1 other error, 2 invalid input, 3 genericity
//! failure (random lines kept disagreeing), 4 verification mismatch.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use birdeg_core::exactnum::{default_width, parse_rational};
use birdeg_core::mapcore::{default_mode, ArithMode, MapError, EXACT_DEFAULT_MAX_ITERS};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use commands::Mismatch;
use input::{InvalidInput, ParamSet};

const BUNDLED_FIXTURES: &str = include_str!("../fixtures/verify_all.json");

#[derive(Parser)]
#[command(name = "birdeg", version, about = "Degree growth of the birational maps k_F")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Number of iterations (degree sequences, orbits).
    #[arg(long, global = true)]
    iters: Option<usize>,
    /// Width of root isolation intervals, as a rational "p/q".
    #[arg(long, global = true)]
    width: Option<String>,
    /// Arithmetic for degree sequences; default exact up to 5 iterations.
    #[arg(long, global = true, value_parser = ["exact", "prime"])]
    mode: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// JSON file with one parameter set or an array of them.
    input: Option<PathBuf>,
    /// Coefficients a_0,...,a_n inline, e.g. "5,0,1".
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    coeffs: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Case label, predicted polynomial and degree complexity.
    Classify(Input),
    /// Degrees of iterates and recurrence residuals.
    Degseq(Input),
    /// Pull-back matrix on the Picard group and its characteristic polynomial.
    Picard(Input),
    /// Orbits of the contracted curves C4 and C2.
    Orbit(Input),
    /// Identities of the universal linear system.
    Identities {
        #[arg(long, default_value_t = 21)]
        kmax: usize,
    },
    /// Full consistency check; uses the bundled fixtures without input.
    VerifyAll(Input),
}

pub struct Settings {
    iters: Option<usize>,
    default_iters: usize,
    mode: Option<ArithMode>,
    width: BigRational,
    seed: u64,
}

impl Settings {
    fn iters(&self) -> usize {
        self.iters.unwrap_or(self.default_iters)
    }

    fn mode(&self) -> ArithMode {
        self.mode.unwrap_or_else(|| default_mode(self.iters()))
    }

    fn warn_about_mode(&self) {
        let n = self.iters();
        match self.mode {
            None if n > EXACT_DEFAULT_MAX_ITERS => eprintln!(
                "warning: {n} iterations exceed the exact-arithmetic limit of {EXACT_DEFAULT_MAX_ITERS}; \
                 switching to prime-field mode"
            ),
            Some(ArithMode::Exact) if n > EXACT_DEFAULT_MAX_ITERS => {
                eprintln!("warning: exact mode with {n} iterations may take very long")
            }
            _ => {}
        }
    }
}

fn load(input: &Input, fallback: Option<&str>) -> Result<Vec<ParamSet>, InvalidInput> {
    match (&input.input, &input.coeffs, fallback) {
        (Some(path), _, _) => input::read_params(path),
        (None, Some(list), _) => input::params_from_list(list).map(|p| vec![p]),
        (None, None, Some(text)) => input::parse_params(text),
        (None, None, None) => Err(InvalidInput("no input file or --coeffs given".into())),
    }
}

/// Runs `f` on every set in parallel, keeping input order.
fn batch<T: Send>(sets: &[ParamSet], f: impl Fn(&ParamSet) -> Result<T> + Sync) -> Result<Vec<T>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = sets.iter().map(|set| s.spawn(|| f(set))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// One object for a single set, an array for a batch.
fn one_or_many<T: Serialize>(mut v: Vec<T>) -> Result<serde_json::Value> {
    Ok(if v.len() == 1 { serde_json::to_value(v.pop().unwrap())? } else { serde_json::to_value(v)? })
}

#[derive(Serialize)]
struct VerifyAll<T> {
    results: Vec<T>,
    all_pass: bool,
}

/// Report and whether every check in it passed.
fn run(cli: &Cli) -> Result<(serde_json::Value, bool)> {
    let width = match &cli.width {
        Some(w) => {
            let w = parse_rational(w).map_err(|e| InvalidInput(e.to_string()))?;
            if !w.is_positive() {
                return Err(InvalidInput("width must be positive".into()).into());
            }
            w
        }
        None => default_width(),
    };
    let mode = cli.mode.as_deref().map(|m| m.parse().map_err(InvalidInput)).transpose()?;
    let s = Settings { iters: cli.iters, default_iters: 8, mode, width, seed: cli.seed };
    match &cli.command {
        Command::Classify(i) => {
            let sets = load(i, None)?;
            Ok((one_or_many(batch(&sets, |p| commands::classify(p, &s))?)?, true))
        }
        Command::Degseq(i) => {
            let sets = load(i, None)?;
            s.warn_about_mode();
            Ok((one_or_many(batch(&sets, |p| commands::degseq(p, &s))?)?, true))
        }
        Command::Picard(i) => {
            let sets = load(i, None)?;
            Ok((one_or_many(batch(&sets, |p| commands::picard(p, &s))?)?, true))
        }
        Command::Orbit(i) => {
            let sets = load(i, None)?;
            let out = batch(&sets, |p| commands::orbit(p, &s))?;
            let ok = out.iter().all(|o| o.consistent);
            Ok((one_or_many(out)?, ok))
        }
        Command::Identities { kmax } => {
            if kmax % 2 == 0 {
                return Err(InvalidInput(format!("kmax must be odd, got {kmax}")).into());
            }
            let out = commands::identities(*kmax, cli.seed)?;
            let ok = out.all_pass;
            Ok((serde_json::to_value(out)?, ok))
        }
        Command::VerifyAll(i) => {
            let sets = load(i, Some(BUNDLED_FIXTURES))?;
            s.warn_about_mode();
            let results = batch(&sets, |p| commands::verify(p, &s))?;
            let all_pass = results.iter().all(|r| r.pass);
            Ok((serde_json::to_value(VerifyAll { results, all_pass })?, all_pass))
        }
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<InvalidInput>().is_some() {
        return 2;
    }
    if e.chain().any(|c| matches!(c.downcast_ref::<MapError>(), Some(MapError::GenericityFailure { .. }))) {
        return 3;
    }
    if e.downcast_ref::<Mismatch>().is_some() {
        return 4;
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(value, ok)| {
        emit(&cli, &value)?;
        if ok {
            Ok(())
        } else {
            Err(Mismatch("some checks failed; see the report".into()).into())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
