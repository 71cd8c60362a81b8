//! continlab: a numerical verification toolkit for continuity, convexity,
//! monotonicity and algebraic postulates of real-valued functions and binary
//! preference relations on convex subsets of R^n.
//!
//! Direct sampled checks produce three-valued verdicts with refinement-tested
//! witnesses; a forward-chaining implication graph encodes the classical
//! equivalence theorems between the postulates and audits derived facts
//! against the direct checks over a golden counterexample corpus.

pub mod continuity;
pub mod deduction;
pub mod core;
pub mod corpus;
pub mod emit;
pub mod io;
pub mod functions;
pub mod relations;
pub mod geometry;

pub use crate::core::{CheckConfig, PropertyReport, Verdict, Witness};
