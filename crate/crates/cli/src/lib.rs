//! Verification suites and report emission for the `nkflag` command.
//!
//! A [`SuiteSpec`] names a suite and its numeric knobs; [`run`] executes it
//! deterministically for the given seed and returns a [`Report`]; [`emit`]
//! renders the report as JSON or as an aligned text table.

mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nkflag::classify::GridSpec;
use nkflag::par::Execution;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown suite {0:?} (expected one of field, algebra, tensors, curvature, examples, classify, all)")]
    UnknownSuite(String),
    #[error("unknown format {0:?} (expected text or json)")]
    UnknownFormat(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error(transparent)]
    Core(#[from] nkflag::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Field,
    Algebra,
    Tensors,
    Curvature,
    Examples,
    Classify,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Field,
        Suite::Algebra,
        Suite::Tensors,
        Suite::Curvature,
        Suite::Examples,
        Suite::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Field => "field",
            Suite::Algebra => "algebra",
            Suite::Tensors => "tensors",
            Suite::Curvature => "curvature",
            Suite::Examples => "examples",
            Suite::Classify => "classify",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(CliError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteSpec {
    pub suite: Suite,
    /// Tolerance for the numeric cross-checks.
    pub tol: f64,
    /// Random samples per numeric sweep.
    pub samples: usize,
    pub grid: GridSpec,
    pub format: Format,
    pub seed: u64,
    pub execution: Execution,
}

impl SuiteSpec {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            tol: 1e-8,
            samples: 100,
            grid: GridSpec::default(),
            format: Format::Text,
            seed: 1,
            execution: Execution::Parallel,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::InvalidValue(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.samples == 0 {
            return Err(CliError::InvalidValue("--samples must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Which mathematical statement the check exercises.
    pub anchor: String,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub totals: Totals,
    pub elapsed_ms: u64,
    /// Structured extras such as certificates or the case-to-example table.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn empty(suite: &str, seed: u64) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            checks: Vec::new(),
            totals: Totals::default(),
            elapsed_ms: 0,
            details: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// Sorts checks by name and recomputes the totals.
    fn finish(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        self.totals = Totals {
            total: self.checks.len(),
            passed,
            failed: self.checks.len() - passed,
        };
    }

    /// Process exit status: 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// Collects check records for one suite.
pub(crate) struct Recorder<'a> {
    prefix: &'static str,
    report: &'a mut Report,
}

impl Recorder<'_> {
    pub(crate) fn check(&mut self, name: impl AsRef<str>, ok: bool, anchor: &str, witness: impl Into<String>) {
        self.report.checks.push(CheckRecord {
            name: format!("{}/{}", self.prefix, name.as_ref()),
            status: Status::from_bool(ok),
            anchor: anchor.to_string(),
            witness: witness.into(),
        });
    }

    pub(crate) fn detail(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report details serialize");
        self.report.details.insert(format!("{}.{key}", self.prefix), value);
    }
}

pub fn run(spec: &SuiteSpec) -> Result<Report, CliError> {
    spec.validate()?;
    let start = Instant::now();
    let mut report = Report::empty(spec.suite.name(), spec.seed);
    let suites: Vec<Suite> = match spec.suite {
        Suite::All => Suite::INDIVIDUAL.to_vec(),
        s => vec![s],
    };
    for suite in suites {
        let mut rec = Recorder {
            prefix: suite.name(),
            report: &mut report,
        };
        match suite {
            Suite::Field => suites::field(spec, &mut rec),
            Suite::Algebra => suites::algebra(spec, &mut rec),
            Suite::Tensors => suites::tensors(spec, &mut rec),
            Suite::Curvature => suites::curvature(spec, &mut rec)?,
            Suite::Examples => suites::examples(spec, &mut rec),
            Suite::Classify => suites::classify(spec, &mut rec),
            Suite::All => unreachable!("expanded above"),
        }
    }
    report.finish();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Renders the report. JSON output is pretty-printed UTF-8 with a trailing
/// newline; text output has one line per check and a final PASS/FAIL line.
pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Text => emit_text(report).into_bytes(),
    }
}

fn emit_text(report: &Report) -> String {
    let width = report.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    let mut out = format!("suite {} (seed {})\n", report.suite, report.seed);
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let pad = width - c.name.chars().count();
        out.push_str(&format!("{status}  {}{}  {}\n", c.name, " ".repeat(pad), c.witness));
    }
    if let Some(mapping) = report.details.get("classify.mapping").and_then(|m| m.as_array()) {
        out.push_str("case -> example\n");
        for m in mapping {
            out.push_str(&format!(
                "  {:<3} -> {}\n",
                m["case"].as_str().unwrap_or("?"),
                m["family"].as_str().unwrap_or("none")
            ));
        }
    }
    out.push_str(&format!(
        "{} ({}/{} checks passed, {} ms)\n",
        if report.passed() { "PASS" } else { "FAIL" },
        report.totals.passed,
        report.totals.total,
        report.elapsed_ms
    ));
    out
}
