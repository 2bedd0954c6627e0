// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::{apply_oracle, NodePath, ProgramError, QueryProgram, ScaledMatrix, UnitaryBlock, EPS};
use crate::boolfun::{families, TruthTable};

/// The 1-query circuit for `x_i XOR x_j`: prepare `(|i> - |j>)/sqrt2`, query,
/// rotate back; basis state `x_i XOR x_j` is measured with certainty.
pub(crate) fn xor_block(i: usize, j: usize, zero: QueryProgram, one: QueryProgram) -> QueryProgram {
    let u1 = ScaledMatrix::from_real(2, 1, &[1, 1, -1, 1]).expect("2x2");
    let u2 = ScaledMatrix::from_real(2, 1, &[1, -1, 1, 1]).expect("2x2");
    QueryProgram::Unitary(UnitaryBlock {
        dim: 2,
        labels: vec![Some(i), Some(j)],
        unitaries: vec![u1, u2],
        outcomes: vec![zero, one],
    })
}

/// Unitary-block form of the XOR gadget; continues in `child0` when
/// `x_i = x_j` and in `child1` otherwise. Costs one query.
pub fn xor_gadget(
    i: usize,
    j: usize,
    child0: QueryProgram,
    child1: QueryProgram,
) -> Result<QueryProgram, ProgramError> {
    if i == j {
        return Err(ProgramError::SameVariable(i));
    }
    Ok(xor_block(i, j, child0, child1))
}

/// Parity of `vars` XOR `negated`: XOR gadgets on consecutive pairs, a
/// classical read for an odd last variable. Costs `ceil(len/2)`.
pub fn parity_on(vars: &[usize], negated: bool) -> QueryProgram {
    match vars {
        [] => QueryProgram::output(negated),
        [v] => QueryProgram::cq(*v, QueryProgram::output(negated), QueryProgram::output(!negated)),
        [a, b, rest @ ..] => QueryProgram::XorQuery {
            vars: [*a, *b],
            zero: Box::new(parity_on(rest, negated)),
            one: Box::new(parity_on(rest, !negated)),
        },
    }
}

/// NAE of `vars` XOR `negated`: XOR gadgets on adjacent pairs, stopping at
/// the first unequal pair. Costs `len - 1`. Needs at least two variables.
pub fn nae_on(vars: &[usize], negated: bool) -> QueryProgram {
    assert!(vars.len() >= 2, "NAE needs two variables");
    let mut p = QueryProgram::output(negated);
    for w in vars.windows(2).rev() {
        p = QueryProgram::XorQuery {
            vars: [w[0], w[1]],
            zero: Box::new(p),
            one: Box::new(QueryProgram::output(!negated)),
        };
    }
    p
}

/// `PARITY_n` in `ceil(n/2)` queries.
pub fn parity_program(n: usize) -> QueryProgram {
    parity_on(&(1..=n).collect::<Vec<_>>(), false)
}

/// `NAE_n` in `n - 1` queries.
pub fn nae_program(n: usize) -> QueryProgram {
    nae_on(&(1..=n).collect::<Vec<_>>(), false)
}

fn real_matrix(dim: usize, at: impl Fn(usize, usize) -> f64) -> ScaledMatrix {
    let entries = (0..dim * dim).map(|k| Complex64::new(at(k / dim, k % dim), 0.0)).collect();
    ScaledMatrix::new(dim, 0, entries).expect("square")
}

/// Orthogonal matrix with the given columns placed at the given indices; the
/// rest is filled by Gram-Schmidt over the standard basis.
fn complete_columns(dim: usize, given: &[(usize, Vec<f64>)]) -> ScaledMatrix {
    let mut cols: Vec<Option<Vec<f64>>> = vec![None; dim];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for (k, c) in given {
        cols[*k] = Some(c.clone());
        basis.push(c.clone());
    }
    let mut e = 0;
    for slot in cols.iter_mut().filter(|c| c.is_none()) {
        loop {
            let mut v = vec![0.0; dim];
            v[e] = 1.0;
            e += 1;
            for b in &basis {
                let dot: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                v.iter_mut().for_each(|x| *x /= norm);
                basis.push(v.clone());
                *slot = Some(v);
                break;
            }
        }
    }
    let cols: Vec<Vec<f64>> = cols.into_iter().map(Option::unwrap).collect();
    real_matrix(dim, |r, c| cols[c][r])
}

fn gram_schmidt(basis: &mut Vec<Vec<Complex64>>, v: &[Complex64]) {
    let mut w = v.to_vec();
    for b in basis.iter() {
        let dot: Complex64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
        w.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
    }
    let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > 1e-7 {
        w.iter_mut().for_each(|x| *x /= norm);
        basis.push(w);
    }
}

/// Completes `U_1, Q, ..., U_t, Q` with a final unitary measuring whether the
/// state lies in the span of the states of `f`'s true inputs. Fails unless
/// those states are orthogonal to the states of the false inputs.
pub fn measured_block(
    labels: Vec<Option<usize>>,
    prefix: Vec<ScaledMatrix>,
    f: &TruthTable,
) -> Result<QueryProgram, ProgramError> {
    let dim = labels.len();
    let finals: Vec<Vec<Complex64>> = (0..f.len())
        .map(|x| {
            let mut state = vec![Complex64::new(0.0, 0.0); dim];
            state[0] = Complex64::new(1.0, 0.0);
            for u in &prefix {
                state = apply_oracle(&u.apply(&state), &labels, x)?;
            }
            Ok(state)
        })
        .collect::<Result<_, ProgramError>>()?;
    let mut basis = Vec::new();
    for x in (0..f.len()).filter(|&x| f.get(x)) {
        gram_schmidt(&mut basis, &finals[x]);
    }
    let ones = basis.len();
    for x in (0..f.len()).filter(|&x| !f.get(x)) {
        let leak: f64 = basis[..ones]
            .iter()
            .map(|b| b.iter().zip(&finals[x]).map(|(p, q)| p.conj() * q).sum::<Complex64>().norm_sqr())
            .sum();
        if leak.sqrt() > EPS {
            return Err(ProgramError::Malformed {
                path: NodePath::default(),
                msg: format!("input {x} is not separated from the true inputs"),
            });
        }
        gram_schmidt(&mut basis, &finals[x]);
    }
    for k in 0..dim {
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        e[k] = Complex64::new(1.0, 0.0);
        gram_schmidt(&mut basis, &e);
    }
    let entries = basis.iter().flat_map(|b| b.iter().map(|z| z.conj())).collect();
    let mut unitaries = prefix;
    unitaries.push(ScaledMatrix::new(dim, 0, entries)?);
    Ok(QueryProgram::Unitary(UnitaryBlock {
        dim,
        labels,
        unitaries,
        outcomes: (0..dim).map(|k| QueryProgram::output(k < ones)).collect(),
    }))
}

/// Two-query exact block for `eq_nand3(z XOR neg) XOR negated`, where role
/// `r` of [`families::eq_nand3`] is read from program variable `vars[r]`.
///
/// Basis states: one unlabelled, two for the first role, one each for the
/// others. The first query weighs (unlabelled, role 2, role 3) by
/// (1/3, 1/2, 1/6); the second mixes them into all five states.
pub fn eq_nand_on(vars: [usize; 3], neg: [bool; 3], negated: bool) -> QueryProgram {
    let labels = vec![None, Some(1), Some(1), Some(2), Some(3)];
    let (r2, r3, r6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let psi = vec![1.0 / r3, 0.0, 0.0, 1.0 / r2, 1.0 / r6];
    let u1 = complete_columns(5, &[(0, psi)]);
    let a = 3.0 / (4.0 * r2);
    let w = [
        (0, vec![-a, r6 / 8.0, a, a, -0.25]),
        (3, vec![r3 / 4.0, -0.25, r3 / 4.0, r3 / 4.0, r6 / 4.0]),
        (4, vec![0.5, r3 / 2.0, 0.0, 0.0, 0.0]),
    ];
    // negated roles: fold their oracle sign into the next unitary
    let w: Vec<(usize, Vec<f64>)> = w
        .into_iter()
        .map(|(k, c)| {
            let sign = match labels[k] {
                Some(r) if neg[r - 1] => -1.0,
                _ => 1.0,
            };
            (k, c.into_iter().map(|x| x * sign).collect())
        })
        .collect();
    let u2 = complete_columns(5, &w);
    let base = families::eq_nand3();
    let local = TruthTable::from_fn(3, |z| {
        let x = z ^ (0..3).fold(0, |m, r| m | (neg[r] as usize) << r);
        base.get(x) ^ negated
    });
    measured_block(labels, vec![u1, u2], &local)
        .expect("construction separates the outputs")
        .relabel(&vars)
}

/// `families::eq_nand3` on `x1, x2, x3` in two queries.
pub fn eq_nand_program() -> QueryProgram {
    eq_nand_on([1, 2, 3], [false; 3], false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{families, TruthTable};
    use crate::qprogram::simulate;

    #[test]
    fn gadget_branch_is_xor() {
        for n in 2..=6 {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    let g = xor_gadget(i, j, QueryProgram::output(false), QueryProgram::output(true)).unwrap();
                    let f = TruthTable::var(n, i).unwrap().xor(&TruthTable::var(n, j).unwrap()).unwrap();
                    let r = simulate(&g, &f).unwrap();
                    assert!(r.exact && r.worst_wrong_amplitude <= 1e-12);
                    assert_eq!(r.queries_used_worst_case, 1);
                }
            }
        }
        assert!(xor_gadget(2, 2, QueryProgram::output(false), QueryProgram::output(true)).is_err());
        let one = xor_gadget(1, 2, QueryProgram::output(true), QueryProgram::output(true)).unwrap();
        let r = simulate(&one, &TruthTable::constant(2, true)).unwrap();
        assert!(r.exact);
        assert_eq!(r.queries_used_worst_case, 1);
    }

    #[test]
    fn parity_and_nae_counts() {
        for n in 1..=12 {
            let p = parity_program(n);
            assert_eq!(p.query_cost() as usize, n.div_ceil(2));
            let r = simulate(&p, &families::parity(n)).unwrap();
            assert!(r.exact, "parity {n}");
            assert_eq!(r.queries_used_worst_case, p.query_cost());
        }
        for n in 2..=12 {
            let p = nae_program(n);
            assert_eq!(p.query_cost() as usize, n - 1);
            let r = simulate(&p, &families::nae(n)).unwrap();
            assert!(r.exact, "nae {n}");
            assert_eq!(r.queries_used_worst_case as usize, n - 1);
        }
    }

    #[test]
    fn eq_nand_two_queries() {
        let r = simulate(&eq_nand_program(), &families::eq_nand3()).unwrap();
        assert!(r.exact, "{:?}", r);
        assert_eq!(r.queries_used_worst_case, 2);
        for code in 0..16usize {
            let neg = [code & 1 == 1, code & 2 == 2, code & 4 == 4];
            let p = eq_nand_on([3, 1, 4], neg, code & 8 == 8);
            let f = TruthTable::from_fn(4, |m| {
                let z = [m >> 2 & 1, m & 1, m >> 3 & 1];
                let x = (0..3).fold(0, |x, r| x | (z[r] ^ neg[r] as usize) << r);
                families::eq_nand3().get(x) ^ (code & 8 == 8)
            });
            assert!(simulate(&p, &f).unwrap().exact);
        }
    }

    #[test]
    fn unseparated_measurement_rejected() {
        let labels = vec![Some(1), Some(2)];
        let u = ScaledMatrix::identity(2);
        assert!(measured_block(labels, vec![u], &families::or(2)).is_err());
    }

    #[test]
    fn negated_variants() {
        let r = simulate(&parity_on(&[1, 2, 3], true), &families::parity(3).not()).unwrap();
        assert!(r.exact);
        let r = simulate(&nae_on(&[1, 2, 3, 4], true), &families::nae(4).not()).unwrap();
        assert!(r.exact);
    }
}
