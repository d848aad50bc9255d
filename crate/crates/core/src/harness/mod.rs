//! Suite runner, configuration, and report / table emission behind the CLI.

pub mod config;
pub mod report;
pub mod suites;
pub mod tables;

pub use config::{ConfigPatch, OutputFormat, RunConfig};
pub use report::{write_reports, write_rows, Quantity, Record, Status, SuiteReport, Summary};
pub use suites::{resolve, run_suite, run_suites, SUITE_IDS};
pub use tables::{class_number_table, newform_table, trace_table, Table, TableKind};
