//! Command line interface: evaluate means, run verification suites, and
//! reproduce the 2x2 counterexample.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use opmean::inequalities::{reproduce_counterexample, Tolerances};
use opmean::report::{csv_summary, failure_count, summarize, write_jsonl};
use opmean::trials::{run_suites, SuiteConfig, DEFAULT_SEED};
use opmean::{evaluate_mean, parse_mean_spec, Error, HermitianMatrix, Result};

#[derive(Parser)]
#[command(
    name = "opmean",
    version,
    about = "Operator means of positive definite matrices, with identity and inequality verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the mean of two positive definite matrices.
    Mean {
        /// Mean specification: arithmetic:MU, geometric:MU, harmonic:MU,
        /// barbour2:(2t)^r:r=R, or measure:FILE.
        #[arg(long)]
        mean: String,
        /// JSON file holding the left matrix.
        #[arg(long)]
        a: PathBuf,
        /// JSON file holding the right matrix.
        #[arg(long)]
        b: PathBuf,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run randomized verification suites and summarize the outcome.
    Verify {
        /// Master seed; falls back to OPMEAN_SEED, then a fixed default.
        #[arg(long)]
        seed: Option<u64>,
        /// Trials per suite.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Matrix dimension range, inclusive.
        #[arg(long, default_value = "1..8", value_parser = parse_dims)]
        dims: (usize, usize),
        /// Suites to run: identity, inequality, scalar, equality, all.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Tolerance override, NAME=VALUE. May repeat.
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
        /// Write per-trial records to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Format for --out.
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
    /// Reproduce the 2x2 pair where the Loewner comparisons fail while
    /// all eigenvalue comparisons hold.
    Counterexample {
        /// Also print the three difference matrices.
        #[arg(long)]
        verbose: bool,
    },
}

fn parse_dims(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range {lo}..{hi} is empty or starts at zero"));
    }
    Ok((lo, hi))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("OPMEAN_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| Error::ParseError {
            position: 0,
            message: format!("OPMEAN_SEED must be an unsigned integer, got `{text}`"),
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn parse_tolerance_overrides(pairs: &[String]) -> Result<Tolerances> {
    let mut tols = Tolerances::default();
    for pair in pairs {
        let (name, value) = pair.split_once('=').ok_or_else(|| Error::ParseError {
            position: 0,
            message: format!("expected NAME=VALUE, got `{pair}`"),
        })?;
        let value: f64 = value.trim().parse().map_err(|_| Error::ParseError {
            position: 0,
            message: format!("tolerance value `{value}` is not a number"),
        })?;
        tols.set(name.trim(), value)?;
    }
    Ok(tols)
}

fn run_mean(mean: &str, a: &Path, b: &Path, out: Option<&PathBuf>) -> Result<ExitCode> {
    let f = parse_mean_spec(mean)?;
    let a = HermitianMatrix::read_json(a)?;
    let b = HermitianMatrix::read_json(b)?;
    let result = evaluate_mean(&f, &a, &b)?;
    match out {
        Some(path) => result.write_json(path)?,
        None => println!("{}", result.to_json_string()?),
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    seed: Option<u64>,
    trials: usize,
    dims: (usize, usize),
    suites: &[String],
    tol: &[String],
    out: Option<&PathBuf>,
    format: &str,
) -> Result<ExitCode> {
    let cfg = SuiteConfig {
        seed: resolve_seed(seed)?,
        trials,
        dim_lo: dims.0,
        dim_hi: dims.1,
        tolerances: parse_tolerance_overrides(tol)?,
    };
    let records = run_suites(suites, &cfg)?;

    if let Some(path) = out {
        let file = std::fs::File::create(path)?;
        let mut writer = std::io::BufWriter::new(file);
        match format {
            "csv" => std::io::Write::write_all(&mut writer, csv_summary(&records).as_bytes())?,
            _ => write_jsonl(&records, &mut writer)?,
        }
    }

    println!("seed {}", cfg.seed);
    for s in summarize(&records) {
        println!(
            "{}: trials {}, min slack {:e}, failures {}",
            s.check_id, s.trials, s.min_slack, s.failures
        );
    }
    let failures = failure_count(&records);
    println!("total records {}, failures {}", records.len(), failures);
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_counterexample(verbose: bool) -> Result<ExitCode> {
    let report = reproduce_counterexample(&Tolerances::default())?;
    let names = ["inverse difference", "ratio", "reversed ratio"];
    for (k, name) in names.iter().enumerate() {
        println!(
            "{}: max entry error {:.2e}, min eigenvalue {:.4e}, loewner {}, eigenvalues {}",
            name,
            report.max_entry_error[k],
            report.min_eigenvalue[k],
            if report.loewner[k].holds { "holds" } else { "fails" },
            if report.eigen[k].holds { "hold" } else { "fail" },
        );
        if verbose {
            println!("{}", report.computed[k].to_json_string()?);
        }
    }
    let as_expected = report.matches_printed
        && report.b_leq_a
        && report.loewner.iter().all(|c| !c.holds)
        && report.eigen.iter().all(|c| c.holds);
    println!(
        "counterexample {}",
        if as_expected { "reproduced" } else { "NOT reproduced" }
    );
    Ok(if as_expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Mean { mean, a, b, out } => run_mean(mean, a, b, out.as_ref()),
        Command::Verify {
            seed,
            trials,
            dims,
            suite,
            tol,
            out,
            format,
        } => run_verify(*seed, *trials, *dims, suite, tol, out.as_ref(), format),
        Command::Counterexample { verbose } => run_counterexample(*verbose),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
