//! `paygap`: run reproductions, sweeps, property suites, and claim checks.
//!
//! Exit status is 0 when every check passes, 1 when a claim is violated, and
//! 2 on usage, parse, or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use paygap::experiments::{
    check_claim, parse_grid, run_example, run_sweep, sweep_csv, ClaimId, ExampleName, ExampleParams,
};
use paygap::instance::Instance;
use paygap::suites::{run_suite, Suite};
use paygap::{Mode, Rational, Scalar};

#[derive(Debug, Parser)]
#[command(
    name = "paygap",
    version,
    about = "Pay under mistaken beliefs and extra information"
)]
struct Cli {
    /// Arithmetic backend.
    #[arg(long, global = true, default_value = "rational")]
    mode: Mode,

    /// Comparison slack in float mode; ignored in rational mode.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reproduce a worked example and check its closed form.
    Example {
        /// ex1-reversal, ex2-monotone-fail, ex3-mlr-fail, ex1-disc, or
        /// blackwell-forward.
        name: String,
        /// Probability of the high type.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        /// Perceived probability of the high type.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q_i: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q_j: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Pay of two populations as the signal accuracy varies; writes CSV.
    SweepFigure1 {
        /// Grid `a:b:step` within [1/2, 1].
        #[arg(long, default_value = "1/2:1:1/520")]
        grid: String,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded randomized property suite.
    Suite {
        /// theorem1, lemma1, corollary1, corollary2, prop1, prop2, prop3,
        /// orders, garbling, or blackwell.
        name: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a claim on an instance file.
    Check {
        file: PathBuf,
        /// decomposition, corollary2, narrowing, nearly-full, or lemma1.
        #[arg(long)]
        claim: String,
    },
}

fn parse_opt<T: Scalar>(name: &str, v: &Option<String>) -> Result<Option<T>> {
    v.as_deref()
        .map(|s| T::parse(s).with_context(|| format!("--{name}")))
        .transpose()
}

/// Runs the command and reports whether every check passed.
fn run<T: Scalar>(cli: &Cli) -> Result<bool> {
    if cli.tol.is_nan() || cli.tol < 0.0 {
        bail!("--tol must be a non-negative number");
    }
    let tol = if T::is_exact() { 0.0 } else { cli.tol };
    match &cli.command {
        Command::Example {
            name,
            p,
            q,
            q_i,
            q_j,
            delta,
            seed,
        } => {
            let name: ExampleName = name.parse()?;
            let params = ExampleParams {
                p: parse_opt::<T>("p", p)?,
                q: parse_opt("q", q)?,
                q_i: parse_opt("q-i", q_i)?,
                q_j: parse_opt("q-j", q_j)?,
                delta: parse_opt("delta", delta)?,
                seed: *seed,
            };
            let report = run_example(name, &params, tol)?;
            print!("{}", report.render());
            Ok(report.passed())
        }
        Command::SweepFigure1 { grid, out } => {
            let points = parse_grid::<T>(grid)?;
            let csv = sweep_csv(&run_sweep(&points)?);
            match out {
                Some(path) => {
                    std::fs::write(path, csv)
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("wrote {} rows to {}", points.len(), path.display());
                }
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Command::Suite { name, trials, seed } => {
            let suite: Suite = name.parse()?;
            if *trials == 0 {
                bail!("--trials must be at least 1");
            }
            let summary = run_suite::<T>(suite, *trials, *seed, tol);
            print!("{}", summary.report());
            Ok(summary.passed())
        }
        Command::Check { file, claim } => {
            let claim: ClaimId = claim.parse()?;
            let inst = Instance::<T>::load(file)?;
            let report = check_claim(&inst, claim, tol)?;
            print!("{}", report.render());
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.mode {
        Mode::Rational => run::<Rational>(&cli),
        Mode::Float => run::<f64>(&cli),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
