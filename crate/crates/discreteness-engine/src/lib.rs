//! The trace-minimizing replacement procedure for a pair of hyperbolic real
//! Möbius transformations with disjoint axes, with F-sequence bookkeeping and
//! Jørgensen / elliptic-order certificates of non-discreteness.

pub mod corpus;
mod engine;
mod growth;

pub use engine::{
    finite_order, jorgensen_test, normalize_pair, run, step, Certificate, EngineConfig, GeneratorPair,
    Normalization, StepRecord, StepStop, AlgorithmTrace, Verdict,
};
pub use farey_combinatorics::StepKind;
pub use growth::{growth_report, GrowthReport, GrowthRow};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("input is not a pair of hyperbolic elements: {0}")]
    NotHyperbolicInput(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
}
