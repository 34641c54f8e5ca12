//! Report schema and emitters. JSON is the primary format; CSV is a flat
//! row-per-record view. Identical configuration and seed produce
//! byte-identical output, except for the wall-time field of the JSON report.

use std::io::Write;

use serde::Serialize;

use crate::ConfigError;

/// One named check: a number compared against a tolerance, annotated with
/// the anchor of the fact it verifies ("plumbing" for harness checks).
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    /// What was measured.
    pub name: String,
    /// Audit anchor of the underlying fact.
    pub anchor: &'static str,
    /// Measured residual, probability, or eigenvalue.
    pub value: f64,
    /// Threshold the value was compared against.
    pub tolerance: f64,
    /// Whether the comparison passed.
    pub pass: bool,
}

/// One oracle invocation in a reduction trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    /// Trial index.
    pub trial: usize,
    /// Planted kind of the instance ("yes"/"no").
    pub kind: &'static str,
    /// Parallel register count `t`.
    pub copies: usize,
    /// Leading eigenvalue of the combined operator.
    pub lambda1: f64,
    /// Second eigenvalue.
    pub lambda2: f64,
    /// Oracle verdict ("yes"/"no"/"violation").
    pub verdict: &'static str,
    /// True when the verdict at this `t` is recorded for observation only
    /// (no claim backs the behavior at `t` away from the planted dimension).
    pub observational: bool,
}

/// Eigenvalue listings for the spectrum command.
#[derive(Debug, Clone, Serialize)]
pub struct SpectraSection {
    /// Spectrum of the composite acceptance operator on all qubits.
    pub composite: Vec<f64>,
    /// Spectrum of the witness-space compression.
    pub witness_compressed: Vec<f64>,
    /// Copies count for the combined-operator spectrum, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combined_copies: Option<usize>,
    /// Spectrum of the combined operator, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combined: Option<Vec<f64>>,
}

/// Pass/fail tally.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    /// Number of checks.
    pub total: usize,
    /// Checks that passed.
    pub passed: usize,
    /// Checks that failed.
    pub failed: usize,
}

/// A full command report.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// Report schema version.
    pub schema: u32,
    /// Which command produced the report.
    pub command: &'static str,
    /// Echo of the effective configuration.
    pub config: serde_json::Value,
    /// All checks, in execution order.
    pub checks: Vec<CheckRecord>,
    /// Oracle trace (reduce command).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRecord>,
    /// Eigenvalue listings (spectrum command).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra: Option<SpectraSection>,
    /// Tally over `checks`.
    pub summary: Summary,
    /// Wall time in milliseconds; excluded from determinism guarantees.
    pub wall_time_ms: u64,
}

impl RunReport {
    /// Assemble a report, computing the summary.
    pub fn new(
        command: &'static str,
        config: serde_json::Value,
        checks: Vec<CheckRecord>,
        trace: Vec<TraceRecord>,
        spectra: Option<SpectraSection>,
        wall_time_ms: u64,
    ) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        RunReport {
            schema: 1,
            command,
            config,
            checks,
            trace,
            spectra,
            summary,
            wall_time_ms,
        }
    }

    /// True when every check passed.
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String, ConfigError> {
        let mut out = serde_json::to_string_pretty(self)?;
        out.push('\n');
        Ok(out)
    }

    /// Flat CSV: one row per check, trace entry, and spectrum value.
    pub fn to_csv(&self) -> Result<String, ConfigError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record([
                "record", "trial", "copies", "name", "anchor", "value", "tolerance", "pass",
                "verdict",
            ])
            .map_err(|e| ConfigError(e.to_string()))?;
        for check in &self.checks {
            writer
                .write_record([
                    "check",
                    "",
                    "",
                    &check.name,
                    check.anchor,
                    &format_float(check.value),
                    &format_float(check.tolerance),
                    if check.pass { "true" } else { "false" },
                    "",
                ])
                .map_err(|e| ConfigError(e.to_string()))?;
        }
        for row in &self.trace {
            writer
                .write_record([
                    "trace",
                    &row.trial.to_string(),
                    &row.copies.to_string(),
                    "",
                    "oracle:unique-witness-promise",
                    &format_float(row.lambda1),
                    &format_float(row.lambda2),
                    if row.observational { "observational" } else { "" },
                    row.verdict,
                ])
                .map_err(|e| ConfigError(e.to_string()))?;
        }
        if let Some(spectra) = &self.spectra {
            let mut emit = |label: &str, values: &[f64]| -> Result<(), ConfigError> {
                for (i, v) in values.iter().enumerate() {
                    writer
                        .write_record([
                            "spectrum",
                            "",
                            "",
                            &format!("{label}[{i}]"),
                            "plumbing",
                            &format_float(*v),
                            "",
                            "",
                            "",
                        ])
                        .map_err(|e| ConfigError(e.to_string()))?;
                }
                Ok(())
            };
            emit("composite", &spectra.composite)?;
            emit("witness_compressed", &spectra.witness_compressed)?;
            if let Some(combined) = &spectra.combined {
                emit("combined", combined)?;
            }
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| ConfigError(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ConfigError(e.to_string()))
    }

    /// Write in the chosen format to a file or stdout.
    pub fn write(
        &self,
        format: crate::config::OutputFormat,
        out: Option<&std::path::Path>,
    ) -> Result<(), ConfigError> {
        let body = match format {
            crate::config::OutputFormat::Json => self.to_json()?,
            crate::config::OutputFormat::Csv => self.to_csv()?,
        };
        match out {
            Some(path) => std::fs::write(path, body)?,
            None => std::io::stdout().write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

/// Shortest round-trip float formatting, matching the JSON emitter.
fn format_float(v: f64) -> String {
    let mut buf = ryu_like(v);
    if buf.is_empty() {
        buf = v.to_string();
    }
    buf
}

fn ryu_like(v: f64) -> String {
    // serde_json prints floats with shortest round-trip formatting; Rust's
    // Display for f64 has the same property.
    format!("{v}")
}

/// Build a check record from a residual-style comparison `value ≤ tolerance`.
pub fn residual_check(
    name: impl Into<String>,
    anchor: &'static str,
    value: f64,
    tolerance: f64,
) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        anchor,
        value,
        tolerance,
        pass: value <= tolerance,
    }
}

/// Build a check record from a lower-bound comparison `value ≥ bound`.
pub fn bound_check(
    name: impl Into<String>,
    anchor: &'static str,
    value: f64,
    bound: f64,
) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        anchor,
        value,
        tolerance: bound,
        pass: value >= bound,
    }
}

/// Build a boolean check record (value 1 = pass, 0 = fail).
pub fn flag_check(name: impl Into<String>, anchor: &'static str, pass: bool) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        anchor,
        value: if pass { 1.0 } else { 0.0 },
        tolerance: 0.5,
        pass,
    }
}
