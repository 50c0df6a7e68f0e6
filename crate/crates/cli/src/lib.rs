//! Command implementations behind the `fixpoint` binary.
//!
//! Every command returns a report of `key: value` lines. Vertices are
//! numbered from 1 in files and reports.

pub mod commands;
pub mod sysfile;

use std::fmt;

use fixpoint_core::count::CountError;
use fixpoint_core::reductions::ReductionError;
use thiserror::Error;

pub use commands::{classify, count, gadget, simulate, CountOptions, EngineChoice, GadgetKind};
pub use sysfile::{
    parse_network, parse_system, print_network, print_system, ParseError, SystemFile,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Reduction(#[from] ReductionError),
    #[error("{}", describe(.0))]
    Count(CountError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    /// 2 for bad input, 3 when a cap stops the computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Count(e) if e.is_cap() => 3,
            _ => 2,
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        CliError::Count(e)
    }
}

/// Count errors with 1-based vertex numbers.
fn describe(e: &CountError) -> String {
    match *e {
        CountError::NonLinearFunction { vertex } => {
            format!("function of vertex {} is not linear", vertex + 1)
        }
        CountError::NotAndOr { vertex } => {
            format!(
                "function of vertex {} is not an AND, OR or constant of the required kind",
                vertex + 1
            )
        }
        CountError::ScopeNotCovered { vertex } => {
            format!("no bag contains the scope of vertex {}", vertex + 1)
        }
        CountError::ArityCapExceeded { vertex, arity, cap } => format!(
            "function of vertex {} has arity {arity} above the arity cap {cap}",
            vertex + 1
        ),
        _ => e.to_string(),
    }
}

/// Ordered `key: value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

pub(crate) fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

pub(crate) fn write(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

pub fn load_system(path: &str) -> Result<SystemFile, CliError> {
    parse_system(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_string(),
        source,
    })
}
