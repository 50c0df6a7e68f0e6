//! Exact fixed-point counting engines and the dispatcher.

mod andor;
mod bagdp;
mod brute;
mod dispatch;
mod linear;
mod twdp;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::DecompositionError;
use crate::system::System;

pub use andor::{count_and_or, extract_and_or, AndOrSystem, Local};
pub use brute::count_brute;
pub use dispatch::{dispatch, dispatch_plan, Branch, DispatchReport, Hardness};
pub use linear::{count_linear, linear_rank, vertex_coefficients};
pub use twdp::{count_twdp, count_twdp_auto};

/// Number of fixed points.
pub type Count = BigUint;

/// Resource limits shared by the engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest vertex count for exhaustive enumeration.
    pub brute: usize,
    /// Largest arity converted to a lookup table.
    pub arity: usize,
    /// Largest decomposition width accepted by the DP engines.
    pub width: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            brute: 26,
            arity: 20,
            width: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Brute,
    Linear,
    AndOr,
    Twdp,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Brute, Engine::Linear, Engine::AndOr, Engine::Twdp];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Linear => "linear",
            Engine::AndOr => "andor",
            Engine::Twdp => "twdp",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine {s:?}"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("{n} vertices exceed the brute-force cap {cap}")]
    BruteCapExceeded { n: usize, cap: usize },
    #[error("function of vertex {vertex} is not linear")]
    NonLinearFunction { vertex: usize },
    #[error("function of vertex {vertex} is not an AND, OR or constant of the required kind")]
    NotAndOr { vertex: usize },
    #[error("decomposition width {width} exceeds the cap {cap}")]
    DecompositionTooWide { width: usize, cap: usize },
    #[error("no bag contains the scope of vertex {vertex}")]
    ScopeNotCovered { vertex: usize },
    #[error("function of vertex {vertex} has arity {arity} above the table cap {cap}")]
    ArityCapExceeded {
        vertex: usize,
        arity: usize,
        cap: usize,
    },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(#[from] DecompositionError),
}

impl CountError {
    /// Whether the failure is a resource limit rather than a bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            CountError::BruteCapExceeded { .. }
                | CountError::DecompositionTooWide { .. }
                | CountError::ArityCapExceeded { .. }
        )
    }
}

/// Runs one engine directly, without dispatch.
pub fn count_with(engine: Engine, s: &System, caps: &Caps) -> Result<Count, CountError> {
    match engine {
        Engine::Brute => count_brute(s, caps.brute),
        Engine::Linear => count_linear(s, caps.arity),
        Engine::AndOr => count_and_or(s, caps),
        Engine::Twdp => count_twdp_auto(s, caps),
    }
}
