//! Hardness gadgets as system generators.
//!
//! Each generator documents the count identity its output satisfies.

mod amplifier;
mod cnf;
mod horn;
mod stars;
mod vertex_cover;

use thiserror::Error;

use crate::graph::EmbeddingError;

pub use amplifier::{amplifier, Amplifier};
pub use cnf::{HornFormula, PositiveFormula};
pub use horn::{bipartite_to_horn, horn_to_and_system, horn_to_or_system, BipartiteGraph};
pub use stars::{pos2sat_to_d2_star, pos2sat_to_s00_star, pos2sat_to_s10_star, star_vertex};
pub use vertex_cover::{
    face_triples, in_planar_degree_four_regime, subdivision, vc_to_d2_system, VcGadget,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("variable {var} out of range for {vars} variables")]
    VariableOutOfRange { var: usize, vars: usize },
    #[error("clause {clause} must have {expected}")]
    SignPattern {
        clause: usize,
        expected: &'static str,
    },
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("the construction needs at least one clause")]
    NoClauses,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("embedding: {0}")]
    Embedding(#[from] EmbeddingError),
}
