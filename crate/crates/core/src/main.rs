use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jordan_gft::{run_pipeline, AnalysisConfig, DecompositionReport, Error, OutputFormat, Stage};

#[derive(Parser)]
#[command(name = "jordan-gft", version, about = "Jordan-basis graph Fourier analysis of directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: eigenstructure, projectors, GFT energies and TV.
    Decompose(Inputs),
    /// Eigenstructure and the GFT energies of a signal.
    Gft(Inputs),
    /// Eigenstructure and total variation of every Jordan subspace.
    Tv(Inputs),
    /// Decompose and print the conformance residuals only.
    Check(Inputs),
}

#[derive(Args)]
struct Inputs {
    /// TOML analysis configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Adjacency as Matrix Market (.mtx) or edge-list CSV.
    #[arg(long)]
    graph: PathBuf,
    /// Signal CSV with `node,value` rows.
    #[arg(long)]
    signal: Option<PathBuf>,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the configured output format.
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        _ => Err(format!("unknown format '{s}' (json or csv)")),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (stage, inputs) = match cli.command {
        Command::Decompose(i) => (Stage::Decompose, i),
        Command::Gft(i) => (Stage::Gft, i),
        Command::Tv(i) => (Stage::Tv, i),
        Command::Check(i) => (Stage::Check, i),
    };
    match run(stage, &inputs) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(stage: Stage, inputs: &Inputs) -> Result<ExitCode, Error> {
    let mut cfg = match &inputs.config {
        Some(p) => AnalysisConfig::load(p)?,
        None => AnalysisConfig::default(),
    };
    if let Some(f) = inputs.format {
        cfg.format = f;
    }
    let report = run_pipeline(&cfg, &inputs.graph, inputs.signal.as_deref(), stage)?;
    if stage == Stage::Check {
        write_check(&report, inputs.out.as_deref())?;
    } else {
        write_report(&report, cfg.format, inputs.out.as_deref())?;
    }
    if report.conformant {
        Ok(ExitCode::SUCCESS)
    } else {
        let e = Error::Conformance(report.failures.join(", "));
        eprintln!("error: {e}");
        Ok(ExitCode::from(e.exit_code() as u8))
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_report(report: &DecompositionReport, format: OutputFormat, out: Option<&Path>) -> Result<(), Error> {
    let mut w = sink(out)?;
    match format {
        OutputFormat::Json => writeln!(w, "{}", report.to_json()?)?,
        OutputFormat::Csv => report.write_csv(&mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn write_check(report: &DecompositionReport, out: Option<&Path>) -> Result<(), Error> {
    let mut w = sink(out)?;
    writeln!(
        w,
        "{} nodes, {} eigenvalues, {} Jordan subspaces ({:?} backend)",
        report.node_count,
        report.eigenvalues.len(),
        report.subspaces.len(),
        report.backend
    )?;
    for (name, value) in report.residuals.named() {
        let status = if report.failures.iter().any(|f| f == name) { "FAIL" } else { "ok" };
        writeln!(w, "{name:<22} {value:.3e}  {status}")?;
    }
    writeln!(w, "{}", if report.conformant { "conformant" } else { "NOT conformant" })?;
    w.flush()?;
    Ok(())
}
