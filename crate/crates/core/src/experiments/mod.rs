//! Sweep engine, CSV output and the command-line front end.

pub mod cli;
pub mod csv;
pub mod sweep;

pub use self::csv::{export_csv, parse_csv, write_csv};
pub use cli::cli_main;
pub use sweep::{parse_values, run_sweep, Scheme, SchemeMean, SweepRecord, SweepSpec, SweepVariable};
