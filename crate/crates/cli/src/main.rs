//! `spa-witness`: build, scan, check and certify the qutrit witness family.
//!
//! Exit codes: 0 success, 1 internal or I/O failure, 2 invalid arguments,
//! 3 a verification step failed.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;

use spa_core::exact::{certify_gamma_three_quarters, certify_with_lambda_prime, parse_rational};
use spa_core::optimality::optimality_report;
use spa_core::realignment::{entanglement_margin, lambda0_threshold, RealignmentReport};
use spa_core::scan::{run_scan, ScanConfig, CSV_HEADER};
use spa_core::witness::{
    build_witness, spa_for_gamma, witness_spectrum_check, BellFamilyParams, SpaResult, WitnessSpectrum,
};

const MIN_SAMPLES: usize = 12;

#[derive(Parser)]
#[command(
    name = "spa-witness",
    version,
    about = "Qutrit Bell-diagonal witnesses and their SPA"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// SPA, spectrum and realignment report for one gamma (JSON).
    Report {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realignment margin over a gamma grid (CSV).
    Scan {
        #[arg(long, default_value_t = 0.01)]
        from: f64,
        #[arg(long, default_value_t = 0.99)]
        to: f64,
        #[arg(long, default_value_t = 99)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Span ranks of the zero sets and the CES see-saw value (JSON).
    Optimality {
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 48)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact certificate for gamma = 3/4 (JSON).
    Certify {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the rational lambda' (decimal or p/q).
        #[arg(long, hide = true, allow_hyphen_values = true)]
        lambda_prime: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type Outcome = Result<u8, Failure>;

#[derive(Serialize)]
struct Report {
    gamma: f64,
    spectrum: WitnessSpectrum,
    lambda0: f64,
    spa: SpaResult,
    realignment: RealignmentReport,
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
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Report { gamma, out } => report(gamma, out.as_deref()),
        Command::Scan {
            from,
            to,
            steps,
            out,
            seed,
        } => scan(
            ScanConfig {
                gamma_from: from,
                gamma_to: to,
                steps,
                seed,
            },
            &out,
        ),
        Command::Optimality {
            gamma,
            samples,
            seed,
            out,
        } => optimality(gamma, samples, seed, out.as_deref()),
        Command::Certify { out, lambda_prime } => certify(lambda_prime.as_deref(), out.as_deref()),
    }
}

fn open_gamma(gamma: f64) -> Result<BellFamilyParams, Failure> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Failure::Usage(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    BellFamilyParams::new(gamma).map_err(|e| Failure::Usage(e.to_string()))
}

fn report(gamma: f64, out: Option<&Path>) -> Outcome {
    let params = open_gamma(gamma)?;
    let spectrum = witness_spectrum_check(build_witness(params).matrix()).context("witness spectrum")?;
    let spa = spa_for_gamma(params).context("structural physical approximation")?;
    let realignment = entanglement_margin(&spa).context("realignment")?;
    let report = Report {
        gamma,
        spectrum,
        lambda0: lambda0_threshold(gamma),
        spa,
        realignment,
    };
    emit_json(&report, out)?;
    Ok(0)
}

fn scan(cfg: ScanConfig, out: &Path) -> Outcome {
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let rows = run_scan(&cfg).context("scan")?;
    let mut w = csv::Writer::from_path(out).with_context(|| format!("cannot write {}", out.display()))?;
    w.write_record(CSV_HEADER).context("csv header")?;
    for r in &rows {
        let fields = [
            r.gamma,
            r.lambda_min,
            r.p_star,
            r.margin,
            r.trace_norm_numeric,
            r.trace_norm_analytic,
            r.lambda0,
        ];
        w.write_record(fields.iter().map(|x| x.to_string()))
            .context("csv row")?;
    }
    w.flush()
        .with_context(|| format!("cannot write {}", out.display()))?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(0)
}

fn optimality(gamma: f64, samples: usize, seed: u64, out: Option<&Path>) -> Outcome {
    open_gamma(gamma)?;
    if samples < MIN_SAMPLES {
        return Err(Failure::Usage(format!(
            "at least {MIN_SAMPLES} samples are needed to certify a rank-9 span, got {samples}"
        )));
    }
    let report = optimality_report(gamma, samples, seed).context("optimality")?;
    emit_json(&report, out)?;
    if report.ranks_match() {
        Ok(0)
    } else {
        eprintln!(
            "rank check failed: B-span {} (want 6), W-span {} (want 9)",
            report.b_span.numeric_rank, report.w_span.numeric_rank
        );
        Ok(3)
    }
}

fn certify(lambda_prime: Option<&str>, out: Option<&Path>) -> Outcome {
    let report = match lambda_prime {
        Some(s) => {
            let lp = parse_rational(s).map_err(|e| Failure::Usage(e.to_string()))?;
            certify_with_lambda_prime(&lp)
        }
        None => certify_gamma_three_quarters(),
    }
    .context("certificate")?;
    emit_json(&report, out)?;
    for line in &report.narrative {
        eprintln!("{line}");
    }
    Ok(if report.verdict { 0 } else { 3 })
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).context("serialize")?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => io::stdout().write_all(text.as_bytes()).context("stdout")?,
    }
    Ok(())
}
