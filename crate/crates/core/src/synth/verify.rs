// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::{Certificate, Level, CERTIFICATE_SCHEMA};
use crate::boolfun::{are_npn_equivalent, is_and_isomorphic, TruthTable};
use crate::qprogram::{simulate_with, validate, AxiomClass, NodePath, ProgramError, SimulationReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unsupported schema `{0}`")]
    Schema(String),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error("claimed {claimed} queries, program costs {recount}")]
    CostMismatch { claimed: u32, recount: u32 },
    #[error("level {claimed} declared, program is {actual}")]
    LevelMismatch { claimed: Level, actual: Level },
    #[error("optimal flag set on a function not isomorphic to AND_n or with cost {claimed} != n")]
    BadOptimalFlag { claimed: u32 },
    #[error("program is not exact; failing inputs {0:?}")]
    Inexact(Vec<usize>),
    #[error("at {path}: {class} claims {claimed} queries, table gives {table}")]
    AxiomCost { path: NodePath, class: AxiomClass, claimed: u32, table: u32 },
    #[error("at {path}: citation does not match the axiom table entry for {class}")]
    AxiomCitation { path: NodePath, class: AxiomClass },
    #[error("at {path}: residual function is not determined by {vars:?}")]
    ResidualUndefined { path: NodePath, vars: Vec<usize> },
    #[error("at {path}: residual {residual} is not NPN-equivalent to {class}")]
    AxiomMismatch { path: NodePath, class: AxiomClass, residual: TruthTable },
    #[error("at {path}: cannot compare residual with {class}: {msg}")]
    AxiomUnchecked { path: NodePath, class: AxiomClass, msg: String },
}

/// One audited axiom leaf.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomAudit {
    pub path: String,
    pub class: AxiomClass,
    pub vars: Vec<usize>,
    pub residual: TruthTable,
    pub queries: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub claimed_queries: u32,
    pub recounted_queries: u32,
    /// Execution with axiom leaves answering correctly; for axiom-free
    /// programs this is the plain simulation.
    pub simulation: SimulationReport,
    pub axioms: Vec<AxiomAudit>,
}

/// Residual of `f` on the inputs reaching a leaf, as a function of `vars`.
fn residual(
    f: &TruthTable,
    inputs: &[usize],
    vars: &[usize],
    path: &NodePath,
) -> Result<TruthTable, VerifyError> {
    let undefined = || VerifyError::ResidualUndefined {
        path: path.clone(),
        vars: vars.to_vec(),
    };
    let k = vars.len();
    let mut seen: Vec<Option<bool>> = vec![None; 1 << k];
    for &x in inputs {
        let a = vars
            .iter()
            .enumerate()
            .fold(0, |a, (b, &v)| a | (x >> (v - 1) & 1) << b);
        match seen[a] {
            Some(v) if v != f.get(x) => return Err(undefined()),
            _ => seen[a] = Some(f.get(x)),
        }
    }
    let bits: Option<Vec<bool>> = seen.into_iter().collect();
    TruthTable::from_bits(&bits.ok_or_else(undefined)?).map_err(|_| undefined())
}

/// Independently re-checks a certificate: recount, level, optimality flag,
/// exact simulation of every elaborated part, and an audit of each axiom leaf
/// (cost from the axiom table, residual NPN-equivalent to the named class).
pub fn verify_certificate(c: &Certificate) -> Result<VerifyReport, VerifyError> {
    if c.schema != CERTIFICATE_SCHEMA {
        return Err(VerifyError::Schema(c.schema.clone()));
    }
    let f = &c.function;
    let n = f.arity();
    validate(&c.program, n, true)?;
    let recount = c.program.query_cost();
    if recount != c.claimed_queries {
        return Err(VerifyError::CostMismatch {
            claimed: c.claimed_queries,
            recount,
        });
    }
    let actual = Level::of(&c.program);
    if actual != c.level {
        return Err(VerifyError::LevelMismatch {
            claimed: c.level,
            actual,
        });
    }
    if c.optimal && !(is_and_isomorphic(f) && c.claimed_queries as usize == n) {
        return Err(VerifyError::BadOptimalFlag {
            claimed: c.claimed_queries,
        });
    }

    let leaves = c.program.axiom_leaves();
    for (path, leaf) in &leaves {
        if leaf.queries != leaf.class.queries() {
            return Err(VerifyError::AxiomCost {
                path: path.clone(),
                class: leaf.class,
                claimed: leaf.queries,
                table: leaf.class.queries(),
            });
        }
        if leaf.citation != leaf.class.citation() {
            return Err(VerifyError::AxiomCitation {
                path: path.clone(),
                class: leaf.class,
            });
        }
    }

    // leaves answer f(x) here; the audit below justifies that
    let mut reach: BTreeMap<NodePath, Vec<usize>> = BTreeMap::new();
    let simulation = simulate_with(&c.program.elaborate(), f, &mut |x, path, _| {
        reach.entry(path.clone()).or_default().push(x);
        f.get(x)
    });
    if !simulation.exact {
        return Err(VerifyError::Inexact(simulation.failing_inputs));
    }

    let mut axioms = Vec::new();
    for (path, leaf) in leaves {
        let inputs = reach.get(&path).map(Vec::as_slice).unwrap_or(&[]);
        let r = residual(f, inputs, &leaf.vars, &path)?;
        let same = are_npn_equivalent(&r, &leaf.class.table()).map_err(|e| VerifyError::AxiomUnchecked {
            path: path.clone(),
            class: leaf.class,
            msg: e.to_string(),
        })?;
        if !same {
            return Err(VerifyError::AxiomMismatch {
                path,
                class: leaf.class,
                residual: r,
            });
        }
        axioms.push(AxiomAudit {
            path: path.to_string(),
            class: leaf.class,
            vars: leaf.vars.clone(),
            residual: r,
            queries: leaf.queries,
        });
    }

    Ok(VerifyReport {
        level: actual,
        claimed_queries: c.claimed_queries,
        recounted_queries: recount,
        simulation,
        axioms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{families, parse_function};
    use crate::qprogram::QueryProgram;
    use crate::synth::{synthesize, Synthesizer};

    #[test]
    fn tampered_count_fails() {
        let mut c = synthesize(&families::parity(4));
        c.claimed_queries = 1;
        assert!(matches!(verify_certificate(&c), Err(VerifyError::CostMismatch { .. })));
    }

    #[test]
    fn wrong_axiom_class_fails() {
        let th = parse_function("profile:0,0,1,1").unwrap();
        let mut c = synthesize(&th);
        assert_eq!(c.level, Level::CountCertified);
        verify_certificate(&c).unwrap();
        c.program = QueryProgram::axiom(AxiomClass::Exact { n: 3, k: 1 }, vec![1, 2, 3]);
        c.claimed_queries = 2;
        let err = verify_certificate(&c).unwrap_err();
        assert!(matches!(err, VerifyError::AxiomMismatch { .. }), "{err}");
    }

    #[test]
    fn inexact_program_fails() {
        let mut c = synthesize(&families::nae(3));
        c.function = families::parity(3);
        assert!(matches!(verify_certificate(&c), Err(VerifyError::Inexact(_))));
    }

    #[test]
    fn undetermined_residual_fails() {
        // leaf on x1..x3 while the function also depends on x4
        let f = families::exact(3, 1).xor(&TruthTable::var(3, 1).unwrap()).unwrap();
        let f4 = TruthTable::from_fn(4, |m| f.get(m & 7) ^ (m >> 3 & 1 == 1));
        let mut c = synthesize(&f4);
        c.program = QueryProgram::axiom(AxiomClass::Exact { n: 3, k: 1 }, vec![1, 2, 3]);
        c.claimed_queries = 2;
        c.level = Level::CountCertified;
        assert!(verify_certificate(&c).is_err());
    }

    #[test]
    fn all_four_bit_certificates_verify() {
        let mut s = Synthesizer::new();
        for code in (0..65536u64).step_by(97) {
            let f = TruthTable::from_u64(4, code);
            let c = s.certificate(&f);
            verify_certificate(&c).unwrap_or_else(|e| panic!("{f}: {e}"));
        }
    }
}
