use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, ValueEnum};
use siccost::scenario::LoadedScenario;
use siccost::{emit, run_subcommand, CliError, Flags, Format, Subcommand};
use siccost_core::RoundingMode;

/// Per-chip production cost and attack economics for smart-card ICs.
#[derive(Debug, Parser)]
#[command(name = "siccost", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Subcommand)]
enum Command {
    /// Full cost breakdown of the scenario's wafer and die.
    Cost(Common),
    /// Apply named security overlays and compare against the baseline.
    Overlay(Common),
    /// Compare against another scenario (--variant is a path or sibling name).
    Transition(Common),
    /// One-at-a-time sensitivity sweep of a single parameter.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// die_area, wafer_cost, wafer_yield, defect_density, masking_levels,
        /// testing_cost, packaging_cost, final_test_yield or diameter
        #[arg(long)]
        param: String,
        /// Comma-separated values; the first is the baseline.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        values: Vec<f64>,
    },
    /// Attack development cost and break-even against each loss model.
    Attack {
        #[command(flatten)]
        common: Common,
        /// Feasibility ratio above which an attack counts as rational.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Residual risk and net benefit of the scenario's security assessments.
    WorthIt(Common),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_enum)]
    rounding: Option<Rounding>,
    #[arg(long, value_enum, env = "SICCOST_FORMAT")]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rounding {
    Exact,
    Paper,
}

impl From<Rounding> for RoundingMode {
    fn from(r: Rounding) -> Self {
        match r {
            Rounding::Exact => RoundingMode::Exact,
            Rounding::Paper => RoundingMode::Paper,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut flags = Flags::default();
    let (subcommand, common) = match cli.command {
        Command::Cost(c) => (Subcommand::Cost, c),
        Command::Overlay(c) => (Subcommand::Overlay, c),
        Command::Transition(c) => (Subcommand::Transition, c),
        Command::Sweep {
            common,
            param,
            values,
        } => {
            flags.sweep_parameter = Some(param);
            flags.sweep_values = values;
            (Subcommand::Sweep, common)
        }
        Command::Attack { common, threshold } => {
            flags.rationality_threshold = threshold;
            (Subcommand::Attack, common)
        }
        Command::WorthIt(c) => (Subcommand::WorthIt, c),
    };
    flags.rounding = common.rounding.map(Into::into);
    flags.variant = common.variant;

    let scenario = LoadedScenario::load(&common.scenario)?;
    let format = common
        .format
        .or(scenario.file.options.output_format)
        .unwrap_or_default();
    let report = run_subcommand(subcommand, &scenario, &flags)?;
    let bytes = emit(&report, format);
    match common.out {
        Some(path) => std::fs::write(&path, &bytes).map_err(|source| CliError::Io { path, source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("siccost: {err}");
            ExitCode::from(err.exit_status() as u8)
        }
    }
}
