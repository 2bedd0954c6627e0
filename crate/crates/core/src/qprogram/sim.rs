// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde::Serialize;

use super::{AxiomLeaf, NodePath, ProgramError, QueryProgram};
use crate::boolfun::TruthTable;

/// Tolerance on wrong-outcome amplitudes and on unitarity residuals.
pub const EPS: f64 = 1e-9;

/// Phase oracle: multiplies the amplitude of every basis state labelled `i`
/// by `(-1)^{x_i}`; unlabelled states are left alone.
pub fn apply_oracle(
    state: &[Complex64],
    labels: &[Option<usize>],
    x: usize,
) -> Result<Vec<Complex64>, ProgramError> {
    if state.len() != labels.len() {
        return Err(ProgramError::DimensionMismatch {
            expected: labels.len(),
            got: state.len(),
        });
    }
    Ok(state
        .iter()
        .zip(labels)
        .map(|(&a, l)| match l {
            Some(i) if x >> (i - 1) & 1 == 1 => -a,
            _ => a,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub arity: usize,
    pub exact: bool,
    /// Largest norm, over inputs, of the amplitude on wrong or dropped outcomes.
    pub worst_wrong_amplitude: f64,
    pub queries_used_worst_case: u32,
    /// Most likely output per input code.
    pub outcomes: TruthTable,
    pub failing_inputs: Vec<usize>,
}

/// Structural checks: variables bound, blocks well-shaped and unitary, axiom
/// leaves consistent with their class. Axiom leaves are an error unless
/// `allow_axioms`.
pub(crate) fn validate(p: &QueryProgram, arity: usize, allow_axioms: bool) -> Result<(), ProgramError> {
    let bound = |path: &NodePath, var: usize| {
        if var == 0 || var > arity {
            Err(ProgramError::UnboundVariable {
                path: path.clone(),
                var,
                arity,
            })
        } else {
            Ok(())
        }
    };
    let malformed = |path: &NodePath, msg: String| ProgramError::Malformed {
        path: path.clone(),
        msg,
    };
    for (path, node) in p.nodes() {
        match node {
            QueryProgram::Output { .. } => {}
            QueryProgram::ClassicalQuery { var, .. } => bound(&path, *var)?,
            QueryProgram::XorQuery { vars, .. } => {
                bound(&path, vars[0])?;
                bound(&path, vars[1])?;
                if vars[0] == vars[1] {
                    return Err(malformed(&path, format!("XOR query on x{} twice", vars[0])));
                }
            }
            QueryProgram::Unitary(b) => {
                if b.dim == 0 || b.labels.len() != b.dim || b.outcomes.len() != b.dim {
                    return Err(malformed(
                        &path,
                        format!(
                            "block of dimension {} has {} labels and {} outcomes",
                            b.dim,
                            b.labels.len(),
                            b.outcomes.len()
                        ),
                    ));
                }
                if b.unitaries.is_empty() {
                    return Err(malformed(&path, "block has no unitaries".into()));
                }
                for l in b.labels.iter().flatten() {
                    bound(&path, *l)?;
                }
                for (index, u) in b.unitaries.iter().enumerate() {
                    u.check_shape()
                        .map_err(|e| malformed(&path, format!("unitary {index}: {e}")))?;
                    if u.dim() != b.dim {
                        return Err(malformed(
                            &path,
                            format!("unitary {index} has dimension {}, block {}", u.dim(), b.dim),
                        ));
                    }
                    let residual = u.unitarity_residual();
                    if !(residual <= EPS) {
                        return Err(ProgramError::NonUnitary {
                            path: path.clone(),
                            index,
                            residual,
                        });
                    }
                }
            }
            QueryProgram::Axiom(a) => {
                for &v in &a.vars {
                    bound(&path, v)?;
                }
                let mut seen = a.vars.clone();
                seen.sort_unstable();
                seen.dedup();
                if seen.len() != a.vars.len() || a.vars.len() != a.class.arity() {
                    return Err(malformed(
                        &path,
                        format!("axiom {} applied to variables {:?}", a.class, a.vars),
                    ));
                }
            }
        }
    }
    if !allow_axioms {
        let leaves: Vec<NodePath> = p.axiom_leaves().into_iter().map(|(path, _)| path).collect();
        if !leaves.is_empty() {
            return Err(ProgramError::AxiomLeaf(leaves));
        }
    }
    Ok(())
}

/// Probability mass reaching each output on one input.
#[derive(Debug, Default)]
pub(crate) struct Trace {
    pub prob: [f64; 2],
    pub stray: f64,
    pub queries: u32,
}

pub(crate) type AxiomHook<'a> = dyn FnMut(&NodePath, &AxiomLeaf) -> bool + 'a;

/// Runs an elaborated, validated program on input `x`.
pub(crate) fn run(
    node: &QueryProgram,
    x: usize,
    path: &mut Vec<usize>,
    weight: f64,
    spent: u32,
    tr: &mut Trace,
    on_axiom: &mut AxiomHook<'_>,
) {
    match node {
        QueryProgram::Output { value } => {
            tr.prob[*value as usize] += weight;
            tr.queries = tr.queries.max(spent);
        }
        QueryProgram::ClassicalQuery { var, zero, one } => {
            let bit = x >> (var - 1) & 1;
            let next = if bit == 1 { one } else { zero };
            path.push(bit);
            run(next, x, path, weight, spent + 1, tr, on_axiom);
            path.pop();
        }
        QueryProgram::XorQuery { .. } => run(&node.elaborate(), x, path, weight, spent, tr, on_axiom),
        QueryProgram::Unitary(b) => {
            let mut state = vec![Complex64::new(0.0, 0.0); b.dim];
            state[0] = Complex64::new(1.0, 0.0);
            for (k, u) in b.unitaries.iter().enumerate() {
                if k > 0 {
                    state = apply_oracle(&state, &b.labels, x).expect("validated block");
                }
                state = u.apply(&state);
            }
            let spent = spent + b.queries();
            for (s, amp) in state.iter().enumerate() {
                let mass = amp.norm_sqr() * weight;
                if amp.norm() > EPS {
                    path.push(s);
                    run(&b.outcomes[s], x, path, mass, spent, tr, on_axiom);
                    path.pop();
                } else {
                    tr.stray += mass;
                }
            }
        }
        QueryProgram::Axiom(a) => {
            let out = on_axiom(&NodePath(path.clone()), a);
            tr.prob[out as usize] += weight;
            tr.queries = tr.queries.max(spent + a.queries);
        }
    }
}

/// Executes `p` on every input of `f` and compares with `f`.
///
/// Fails on unbound variables, malformed or non-unitary blocks, and on any
/// axiom leaf, since leaves carry no circuit to simulate.
pub fn simulate(p: &QueryProgram, f: &TruthTable) -> Result<SimulationReport, ProgramError> {
    validate(p, f.arity(), false)?;
    Ok(simulate_with(&p.elaborate(), f, &mut |_, _, _| unreachable!("axiom leaves rejected")))
}

/// Shared driver; `on_axiom` supplies leaf outputs for mixed programs.
pub(crate) fn simulate_with(
    elaborated: &QueryProgram,
    f: &TruthTable,
    on_axiom: &mut dyn FnMut(usize, &NodePath, &AxiomLeaf) -> bool,
) -> SimulationReport {
    let n = f.arity();
    let mut outcomes = TruthTable::constant(n, false);
    let mut failing = Vec::new();
    let mut worst = 0.0f64;
    let mut queries = 0;
    for x in 0..f.len() {
        let mut tr = Trace::default();
        run(elaborated, x, &mut Vec::new(), 1.0, 0, &mut tr, &mut |path, leaf| {
            on_axiom(x, path, leaf)
        });
        let want = f.get(x);
        let wrong = (tr.prob[!want as usize] + tr.stray).max(0.0).sqrt();
        outcomes.set(x, tr.prob[1] > tr.prob[0]);
        if wrong > EPS {
            failing.push(x);
        }
        worst = worst.max(wrong);
        queries = queries.max(tr.queries);
    }
    SimulationReport {
        arity: n,
        exact: failing.is_empty(),
        worst_wrong_amplitude: worst,
        queries_used_worst_case: queries,
        outcomes,
        failing_inputs: failing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::families;
    use crate::qprogram::{ScaledMatrix, UnitaryBlock};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn oracle_involution() {
        let labels = [Some(1), Some(2), None];
        let s = vec![c(0.6), Complex64::new(0.0, 0.8), c(0.0)];
        for x in 0..4 {
            let once = apply_oracle(&s, &labels, x).unwrap();
            assert_eq!(apply_oracle(&once, &labels, x).unwrap(), s);
            assert_eq!(once[2], s[2]);
            assert_eq!(once[0] == s[0], x & 1 == 0);
        }
        assert!(apply_oracle(&s[..2], &labels, 0).is_err());
    }

    #[test]
    fn classical_and_chain() {
        let p = QueryProgram::cq(
            1,
            QueryProgram::output(false),
            QueryProgram::cq(
                2,
                QueryProgram::output(false),
                QueryProgram::cq(3, QueryProgram::output(false), QueryProgram::output(true)),
            ),
        );
        let r = simulate(&p, &families::and(3)).unwrap();
        assert!(r.exact);
        assert_eq!(r.queries_used_worst_case, 3);
        assert_eq!(r.outcomes, families::and(3));
        let r = simulate(&p, &families::or(3)).unwrap();
        assert!(!r.exact);
        assert_eq!(r.failing_inputs.len(), 6);
    }

    #[test]
    fn rejects_bad_programs() {
        let unbound = QueryProgram::cq(4, QueryProgram::output(false), QueryProgram::output(true));
        assert!(matches!(
            simulate(&unbound, &families::and(3)),
            Err(ProgramError::UnboundVariable { var: 4, .. })
        ));
        let bad = QueryProgram::Unitary(UnitaryBlock {
            dim: 2,
            labels: vec![Some(1), None],
            unitaries: vec![ScaledMatrix::from_real(2, 0, &[1, 1, 1, -1]).unwrap()],
            outcomes: vec![QueryProgram::output(false), QueryProgram::output(true)],
        });
        assert!(matches!(
            simulate(&bad, &families::and(1)),
            Err(ProgramError::NonUnitary { index: 0, .. })
        ));
        let axiom = QueryProgram::cq(
            1,
            QueryProgram::output(false),
            QueryProgram::axiom(crate::qprogram::AxiomClass::Or(2), vec![2, 3]),
        );
        let err = simulate(&axiom, &families::and(3)).unwrap_err();
        assert!(err.to_string().contains("root/1"), "{err}");
    }
}
