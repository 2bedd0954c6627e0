// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolfun::TruthTable;
use crate::qprogram::QueryProgram;

pub const CERTIFICATE_SCHEMA: &str = "exactq.certificate/1";

/// Synthesis rules, tried in this order at every sub-function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl Rule {
    pub const ALL: [Rule; 7] = [Rule::R0, Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6];

    pub fn citation(self) -> &'static str {
        match self {
            Rule::R0 => "constant function: output without queries",
            Rule::R1 => "dead variables dropped; a single literal costs one classical query",
            Rule::R2 => {
                "AND_n-isomorphic: classical chain with early exit; optimal since Q_E(AND_n) = n (BBC+98)"
            }
            Rule::R3 => {
                "symmetric named class: PARITY_n in ceil(n/2) via XOR gadgets, NAE_n in n-1, \
                 EXACT_n^k in max(k, n-k) and Th_n^k in max(k, n-k+1) (AISJ13)"
            }
            Rule::R4 => {
                "3-bit base classes: x1 & (x2 | x3) in 2 queries (MJM11); \
                 (x1 == x2) & ~(x2 & x3) in 2 queries by an explicit 5-dimensional block"
            }
            Rule::R5 => "disjoint decomposition f = g & h or g | h: Q_E(f) <= Q_E(g) + Q_E(h)",
            Rule::R6 => {
                "observable split: Q_E(f) <= 1 + max(Q_E(f|o=0), Q_E(f|o=1)) for o = x_i or x_i XOR x_j"
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    /// Contains quantum blocks and no axiom leaves; checked by simulation.
    FullySimulated,
    /// Contains axiom leaves; their residual functions are audited.
    CountCertified,
    /// Classical queries only.
    ClassicalOnly,
}

impl Level {
    pub fn of(program: &QueryProgram) -> Level {
        if program.has_axiom() {
            Level::CountCertified
        } else if program.is_classical() {
            Level::ClassicalOnly
        } else {
            Level::FullySimulated
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleUse {
    pub id: Rule,
    pub citation: String,
}

/// An exact query program for `function` with its claimed cost and how it
/// can be checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub function: TruthTable,
    pub claimed_queries: u32,
    pub level: Level,
    pub rules_used: Vec<RuleUse>,
    /// Set only for `AND_n`-isomorphic functions, where `n` queries is a
    /// proven lower bound.
    pub optimal: bool,
    /// Whether the `n - 1` bound is claimed for this arity (`n <= 5`).
    pub guarantee_asserted: bool,
    pub program: QueryProgram,
}

impl Certificate {
    pub fn arity(&self) -> usize {
        self.function.arity()
    }
}
