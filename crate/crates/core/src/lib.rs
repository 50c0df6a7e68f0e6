//! Exact fixed-point counting for boolean dynamical systems.
//!
//! A system is an undirected network together with one local transition
//! function per vertex. A configuration is a fixed point when every vertex
//! already holds the value its function computes from its closed
//! neighbourhood. This crate provides:
//!
//! * [`system`]: networks, systems, configurations, update schedules and the
//!   global transition/global map semantics.
//! * [`repr`]: lookup tables, formulas and circuits, with a formula parser.
//! * [`post`]: membership of concrete functions in the Post classes used by
//!   the dichotomy (R0, R1, M, D, L, E, V, N, S0, S1 and derived classes).
//! * [`graph`]: SCC condensation, planarity with a rotation system, tree
//!   decompositions and network reports.
//! * [`count`]: the exact counting engines and the dispatcher that picks one.
//! * [`reductions`]: generators for the hardness gadgets together with the
//!   count identities they satisfy.
//!
//! Vertices are addressed by 0-based indices in the API. Text formats (CNF,
//! system files, formula variables) are 1-based.

pub mod count;
pub mod graph;
pub mod post;
pub mod reductions;
pub mod repr;
pub mod system;

pub use count::{Caps, Count, CountError, Engine};
pub use repr::{Circuit, Formula, FunctionRepr, TruthTable};
pub use system::{Configuration, Network, System, SystemError, UpdateSchedule};
