use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use chernslope::{parse_scenario, run_scenario, Format, RunOptions, Scenario};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    /// Rationals as p/q
    Exact,
    /// Six significant digits
    Decimal,
    /// Machine-readable report with exact and decimal values
    Json,
}

/// Chern numbers of degeneracy loci and slopes of the induced families of curves.
#[derive(Debug, Parser)]
#[command(version)]
#[command(group(ArgGroup::new("input").required(true).args(["config", "scenario"])))]
struct Cli {
    /// Scenario file (JSON)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Run a bundled scenario
    #[arg(long, value_parser = ["m15", "m16"])]
    scenario: Option<String>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Exact)]
    format: OutputFormat,

    /// Also run the double-point cross-check and the section identity; fail on mismatch
    #[arg(long)]
    check: bool,
}

fn main() -> ExitCode {
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

    let scenario = match (&cli.config, &cli.scenario) {
        (Some(path), _) => parse_scenario(path),
        (None, Some(name)) => Scenario::bundled(name),
        (None, None) => unreachable!("clap enforces one input"),
    };
    let format = match cli.format {
        OutputFormat::Exact => Format::Exact,
        OutputFormat::Decimal => Format::Decimal,
        OutputFormat::Json => Format::Json,
    };
    let result =
        scenario.and_then(|s| run_scenario(&s, RunOptions { check: cli.check }));
    match result {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
