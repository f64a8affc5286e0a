//! Scenario harness: theorem-by-theorem experiment configs, the engine
//! that grades them, report documents, and the built-in battery.

pub mod config;
pub mod report;
pub mod scenario;
pub mod suite;

pub use config::{Direction, Expected, Exponent, GridParams, ScenarioConfig, SpaceParams, TheoremId};
pub use report::{
    emit_report, emit_suite, ExperimentReport, ReportFormat, StatRow, SuiteReport, VerdictRow,
};
pub use scenario::{run_scenario, LabError};
pub use suite::{builtin_suite, run_suite};
