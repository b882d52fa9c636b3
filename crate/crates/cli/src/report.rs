//! The JSON run report.

use serde::Serialize;
use torsionlab_core::{Certificate, Error};

use crate::cache::CacheStats;
use crate::exec::Config;

pub const SCHEMA: &str = "torsionlab.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Pass,
    Fail,
    Inapplicable,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        let kind = match e {
            Error::Dimension(_) => "dimension",
            Error::Input(_) => "input",
            Error::Structural(_) => "structural",
            Error::Resource(_) => "resource",
            Error::Unsupported(_) => "unsupported",
            Error::Degenerate(_) => "degenerate",
            Error::Parse { .. } => "parse",
        };
        let (line, column, message) = match e {
            Error::Parse { line, column, message } => (Some(*line), Some(*column), message.clone()),
            other => (None, None, other.to_string()),
        };
        ErrorInfo { kind: kind.into(), message, line, column }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatementReport {
    pub index: usize,
    pub line: usize,
    pub column: usize,
    pub kind: String,
    pub source: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub statements: usize,
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub errors: usize,
}

impl Summary {
    pub fn of(rs: &[StatementReport]) -> Self {
        let count = |s: Status| rs.iter().filter(|r| r.status == s).count();
        Summary {
            statements: rs.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            inapplicable: count(Status::Inapplicable),
            errors: count(Status::Error),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub total_us: u64,
    pub statements_us: Vec<u64>,
    pub cache: Option<CacheStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// Everything but `timing` is a function of (script, seed, degree cap,
/// tool version).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool: Tool,
    pub input_hash: String,
    pub seed: u64,
    pub degree_cap: u64,
    pub parse_error: Option<ErrorInfo>,
    pub statements: Vec<StatementReport>,
    pub summary: Summary,
    pub exit_code: i32,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(input_hash: String, config: &Config) -> Self {
        RunReport {
            schema: SCHEMA,
            tool: Tool { name: "torsionlab", version: env!("CARGO_PKG_VERSION") },
            input_hash,
            seed: config.seed,
            degree_cap: config.degree_cap,
            parse_error: None,
            statements: Vec::new(),
            summary: Summary::default(),
            exit_code: 0,
            timing: Timing::default(),
        }
    }

    /// 3 for parse errors, 1 if any claim fails, 3 for runtime errors,
    /// 2 if something was inapplicable, else 0.
    pub fn compute_exit_code(&self) -> i32 {
        if self.parse_error.is_some() {
            return 3;
        }
        let s = Summary::of(&self.statements);
        if s.fail > 0 {
            1
        } else if s.errors > 0 {
            3
        } else if s.inapplicable > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with the timing block removed, for determinism checks.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Some(o) = v.as_object_mut() {
            o.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }
}

/// `deterministic_json` for a report already rendered as JSON text.
pub fn strip_timing(json: &str) -> serde_json::Result<String> {
    let mut v: serde_json::Value = serde_json::from_str(json)?;
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
    }
    serde_json::to_string_pretty(&v)
}
