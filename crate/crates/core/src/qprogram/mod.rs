// SPDX-License-Identifier: Apache-2.0

//! Hybrid exact query programs and an amplitude-level simulator.
//!
//! A program is a tree of classical queries, one-query XOR gadgets, unitary
//! blocks measured in the standard basis, and axiom leaves whose cost is
//! taken from the literature. Only axiom-free programs can be simulated.

mod axiom;
mod builders;
mod matrix;
mod program;
mod sim;

use thiserror::Error;

pub use axiom::{axiom_table, AxiomClass, AxiomRow, AXIOM_TABLE_ARITY};
pub use builders::{
    eq_nand_on, eq_nand_program, measured_block, nae_on, nae_program, parity_on, parity_program, xor_gadget,
};
pub use matrix::ScaledMatrix;
pub use program::{AxiomLeaf, NodePath, QueryProgram, UnitaryBlock};
pub use sim::{apply_oracle, simulate, SimulationReport, EPS};

pub(crate) use builders::xor_block;
pub(crate) use sim::{simulate_with, validate};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProgramError {
    #[error("x{0} used twice where two distinct variables are required")]
    SameVariable(usize),
    #[error("malformed matrix: {0}")]
    BadMatrix(String),
    #[error("at {path}: {msg}")]
    Malformed { path: NodePath, msg: String },
    #[error("at {path}: variable x{var} is unbound for arity {arity}")]
    UnboundVariable { path: NodePath, var: usize, arity: usize },
    #[error("at {path}: unitary {index} is not unitary (residual {residual:.3e})")]
    NonUnitary { path: NodePath, index: usize, residual: f64 },
    #[error("not simulatable: axiom leaves at {}", join_paths(.0))]
    AxiomLeaf(Vec<NodePath>),
    #[error("state has dimension {got}, labels expect {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown axiom class `{0}`")]
    UnknownClass(String),
}

fn join_paths(paths: &[NodePath]) -> String {
    paths.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
