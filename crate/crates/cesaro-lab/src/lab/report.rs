//! Experiment reports and their CSV/JSON serializations.

use super::config::ScenarioConfig;
use crate::trend::Verdict;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv emission failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// One (parameter, statistic) pair; failed rows carry the error instead of
/// a value and leave the report intact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatRow {
    pub group: String,
    pub name: String,
    pub parameter: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl StatRow {
    pub fn value(group: &str, name: &str, parameter: f64, value: f64) -> Self {
        StatRow {
            group: group.into(),
            name: name.into(),
            parameter,
            value: Some(value),
            error: None,
        }
    }

    pub fn failed(group: &str, name: &str, parameter: f64, error: String) -> Self {
        StatRow {
            group: group.into(),
            name: name.into(),
            parameter,
            value: None,
            error: Some(error),
        }
    }
}

/// A trend decision together with what was expected of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRow {
    pub name: String,
    pub slope: f64,
    pub verdict: Verdict,
    pub expected_growing: bool,
    pub pass: bool,
}

/// Deterministic run metadata (nothing wall-clock dependent: reports from
/// identical configs must be byte-identical).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub tool_version: String,
    pub required_exponent: Option<f64>,
    pub log_required: Option<f64>,
    pub truncation: usize,
    pub moment_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: String,
    pub name: String,
    pub scenario: ScenarioConfig,
    pub rows: Vec<StatRow>,
    pub verdicts: Vec<VerdictRow>,
    pub pass: bool,
    pub meta: ReportMeta,
}

/// A batch of scenario reports with an aggregate outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: String,
    pub reports: Vec<ExperimentReport>,
    pub pass: bool,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn new(reports: Vec<ExperimentReport>) -> Self {
        let failures: Vec<String> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.name.clone())
            .collect();
        SuiteReport {
            schema_version: SCHEMA_VERSION.to_string(),
            pass: failures.is_empty(),
            reports,
            failures,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

fn fmt15(v: f64) -> String {
    format!("{v:.14e}")
}

/// Serialize a report.  JSON preserves floats exactly (documents round-trip
/// to equal reports); CSV prints 15 significant digits.
pub fn emit_report(rep: &ExperimentReport, format: ReportFormat) -> Result<String, ReportError> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(rep)? + "\n"),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["section", "group", "name", "parameter", "value", "error"])?;
            w.write_record(["meta", "", "schema_version", "", SCHEMA_VERSION, ""])?;
            w.write_record(["meta", "", "scenario", "", &rep.name, ""])?;
            w.write_record([
                "meta",
                "",
                "pass",
                "",
                if rep.pass { "true" } else { "false" },
                "",
            ])?;
            for row in &rep.rows {
                w.write_record([
                    "stat",
                    &row.group,
                    &row.name,
                    &fmt15(row.parameter),
                    &row.value.map(fmt15).unwrap_or_default(),
                    row.error.as_deref().unwrap_or(""),
                ])?;
            }
            for v in &rep.verdicts {
                w.write_record([
                    "verdict",
                    "",
                    &v.name,
                    &fmt15(v.slope),
                    &v.verdict.to_string(),
                    if v.pass { "" } else { "expectation failed" },
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| {
                ReportError::Io(std::io::Error::other(e.to_string()))
            })?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn emit_suite(rep: &SuiteReport, format: ReportFormat) -> Result<String, ReportError> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(rep)? + "\n"),
        ReportFormat::Csv => {
            let mut out = String::new();
            for r in &rep.reports {
                out.push_str(&emit_report(r, ReportFormat::Csv)?);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::config::{Direction, Expected, GridParams, SpaceParams, TheoremId, Tolerances};
    use crate::measure::RadialMeasure;

    fn sample_report() -> ExperimentReport {
        ExperimentReport {
            schema_version: SCHEMA_VERSION.into(),
            name: "demo".into(),
            scenario: ScenarioConfig {
                name: Some("demo".into()),
                theorem: TheoremId::R3_7,
                direction: Direction::Both,
                expected: Expected::Bounded,
                params: SpaceParams::default(),
                measure: RadialMeasure::Lebesgue,
                truncation: 256,
                grid: GridParams::default(),
                tolerances: Tolerances::default(),
            },
            rows: vec![
                StatRow::value("necessity", "witness", 0.5, 1.25e-3),
                StatRow::failed("sufficiency", "log_kernel", 0.0, "quadrature failed".into()),
            ],
            verdicts: vec![VerdictRow {
                name: "necessity".into(),
                slope: 0.01,
                verdict: Verdict::ConsistentBounded,
                expected_growing: false,
                pass: true,
            }],
            pass: true,
            meta: ReportMeta {
                tool_version: "test".into(),
                required_exponent: Some(2.0),
                log_required: None,
                truncation: 256,
                moment_order: 1024,
            },
        }
    }

    #[test]
    fn json_round_trips_to_equal_report() {
        let rep = sample_report();
        let doc = emit_report(&rep, ReportFormat::Json).unwrap();
        let back: ExperimentReport = serde_json::from_str(&doc).unwrap();
        assert_eq!(rep, back);
    }

    #[test]
    fn csv_has_one_row_per_stat_and_keeps_error_rows() {
        let rep = sample_report();
        let doc = emit_report(&rep, ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = doc.lines().collect();
        assert!(lines[0].starts_with("section,group,name,parameter,value,error"));
        assert!(lines.iter().any(|l| l.contains("schema_version")));
        assert!(lines.iter().any(|l| l.contains("quadrature failed")));
        let stat_rows = lines.iter().filter(|l| l.starts_with("stat,")).count();
        assert_eq!(stat_rows, rep.rows.len());
    }
}
