use std::fmt::Write as _;
use std::path::PathBuf;

use defset_core::{GridError, ParseError, PatternWitness, PropagationTrace, SearchError, Verdict};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ASSERTION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_IMPROPER: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;
pub const EXIT_IO: u8 = 6;

pub const EXIT_CODES_HELP: &str = "\
Exit codes:
  0  success (verify: unique completion; detect: no pattern found)
  1  the requested assertion does not hold (verify: none or multiple; detect: pattern found)
  2  usage error or invalid construction / search parameters
  3  grid file could not be parsed (including colours outside 1..k)
  4  grid is not a proper partial colouring (a colour repeats in a row or column)
  5  node or work budget exceeded
  6  file could not be read or written";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(ParseError),
    #[error("improper grid: {0}")]
    Improper(GridError),
    #[error("{0}")]
    Budget(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Improper(_) => EXIT_IMPROPER,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Improper(g) => CliError::Improper(g),
            other => CliError::Parse(other),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Everything a command has to say, rendered either as text or JSON.
#[derive(Debug, Default, Serialize)]
pub struct CommandReport {
    pub command: &'static str,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completions_found: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Closed-form value for the searched parameters; `novel` is set when
    /// there is none and `d` is purely a computed result.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub novel: Option<bool>,
    /// Grids in the text format: the completion, the two distinct
    /// completions, the constructed grid or the search witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub patterns: Option<Vec<PatternWitness>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncolored_bound_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<PropagationTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: u8,
    /// Human-readable rendering, filled in by the command.
    #[serde(skip)]
    pub text: String,
}

impl CommandReport {
    pub fn new(command: &'static str, input_digest: String) -> Self {
        CommandReport {
            command,
            input_digest,
            ..Default::default()
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn failed(command: &'static str, input_digest: String, err: &CliError) -> Self {
        let mut r = CommandReport::new(command, input_digest);
        r.error = Some(err.to_string());
        r.exit_code = err.exit_code();
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn describe_witness(w: &PatternWitness) -> String {
    let mut s = String::from(w.pattern.name());
    let cells: Vec<String> = w.positions.iter().map(|p| p.to_string()).collect();
    write!(s, " at {}", cells.join(" ")).unwrap();
    if !w.available_sets.is_empty() {
        let sets: Vec<String> = w.available_sets.iter().map(|c| c.to_string()).collect();
        write!(s, " available {}", sets.join(" ")).unwrap();
    }
    if matches!(w.orientation, defset_core::Orientation::Transposed) {
        s.push_str(" (transposed)");
    }
    s
}
