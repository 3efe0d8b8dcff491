//! Declarative scenario runner: configs, suites, reports, and the CLI.

pub mod cli;
pub mod config;
pub mod report;
pub mod suites;

pub use config::{parse_scenario, OutputFormat, Scenario};
pub use report::{Check, RunReport, Status, SuiteReport};
pub use suites::{run_suite, SuiteError, SUITE_NAMES};
