//! Scenario files in, plot-ready tables out.

#![allow(clippy::needless_range_loop)]

pub mod output;
pub mod run;
pub mod scenario;

pub use run::{compute, run_scenario, RunError, RunReport, Summary};
pub use scenario::{
    load_scenario, parse_document, validate_scenario, ConfigError, FieldError, Format, Kind,
    Scenario,
};
