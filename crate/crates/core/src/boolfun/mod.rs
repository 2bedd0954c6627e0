// SPDX-License-Identifier: Apache-2.0

//! Truth-table Boolean functions and the structural analyses run on them.

mod depth;
pub mod families;
mod monotone;
mod npn;
mod poly;
mod symmetric;
mod table;
mod text;

use thiserror::Error;

pub use depth::{decision_tree_depth, DepthSolver, MAX_DEPTH_ARITY};
pub use monotone::{is_monotone, prime_normal_forms, MonotoneNormalForm};
pub use npn::{
    and_orbit, are_npn_equivalent, is_and_isomorphic, npn_canonical, NpnTransform, MAX_NPN_ARITY,
};
pub use poly::{degree, multilinear, MultilinearPoly};
pub use symmetric::{symmetric_profile, SymmetricProfile};
pub use table::{weight, TruthTable, MAX_ARITY};
pub use text::parse_function;

pub(crate) use table::{len_mask, MASKS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFunError {
    #[error("variable x{var} out of range for arity {arity}")]
    VariableOutOfRange { var: usize, arity: usize },
    #[error("x{0} used twice where two distinct variables are required")]
    SameVariable(usize),
    #[error("arity {arity} exceeds the supported bound {max}")]
    ArityTooLarge { arity: usize, max: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("table length {0} is not a power of two")]
    BadLength(usize),
    #[error("function is not monotone")]
    NotMonotone,
    #[error("function is constant")]
    Constant,
    #[error("{0}")]
    Parse(String),
}
