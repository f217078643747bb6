//! Scenario files, reports and subcommands for the `siccost` tool.
//!
//! The numerical models live in `siccost-core`; this crate reads scenario
//! files, drives the models per subcommand and renders deterministic reports
//! as aligned text, CSV, JSON or Markdown.

pub mod commands;
pub mod emit;
pub mod error;
pub mod report;
pub mod scenario;

pub use commands::{run_subcommand, Flags, Subcommand};
pub use emit::{emit, Format};
pub use error::{CliError, ExitStatus};
pub use report::{Cell, Provenance, Report, Table};
pub use scenario::{parse_scenario, LoadedScenario, ScenarioFile};

/// Version string recorded in report provenance.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
