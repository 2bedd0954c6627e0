// SPDX-License-Identifier: Apache-2.0

//! Read-once recognition by unate normalization and co-occurrence splitting.
//!
//! A read-once function is unate in every variable. After flipping the
//! negative variables the function is monotone, and a monotone read-once
//! function splits as an OR over the connected components of its prime DNF
//! co-occurrence graph, or as an AND over those of its prime CNF graph. If
//! neither graph is disconnected and more than one variable remains, no
//! read-once formula exists.

use crate::boolfun::{prime_normal_forms, TruthTable};

use super::{Formula, FormulaError};

pub const MAX_READ_ONCE_ARITY: usize = 12;

/// Returns a read-once formula computing `f`, or `None` if there is none.
pub fn recognize_read_once(f: &TruthTable) -> Result<Option<Formula>, FormulaError> {
    let n = f.arity();
    if n > MAX_READ_ONCE_ARITY {
        return Err(FormulaError::ArityTooLarge {
            arity: n,
            max: MAX_READ_ONCE_ARITY,
        });
    }
    if let Some(p) = (0..n).find(|&p| !f.depends_on_pos(p)) {
        return Err(FormulaError::DeadVariable(p + 1));
    }
    if n == 0 {
        return Ok(None);
    }

    let mut neg_mask = 0usize;
    for p in 0..n {
        let f0 = f.restrict_pos(p, false);
        let f1 = f.restrict_pos(p, true);
        let up = f0.and(&f1.not()).unwrap().count_ones() == 0;
        let down = f1.and(&f0.not()).unwrap().count_ones() == 0;
        match (up, down) {
            (true, _) => {}
            (false, true) => neg_mask |= 1 << p,
            (false, false) => return Ok(None),
        }
    }
    let monotone = TruthTable::from_fn(n, |m| f.get(m ^ neg_mask));
    let vars: Vec<usize> = (1..=n).collect();
    let Some(positive) = split(&monotone, &vars) else {
        return Ok(None);
    };
    let formula = apply_negations(positive, neg_mask);
    // cheap guard: never hand back a formula that does not compute f
    if formula.to_truth_table_with_arity(n)? != *f {
        return Ok(None);
    }
    Ok(Some(formula))
}

fn apply_negations(f: Formula, neg_mask: usize) -> Formula {
    match f {
        Formula::Lit { var, negated } => Formula::lit(var, negated ^ (neg_mask >> (var - 1) & 1 == 1)),
        Formula::And(cs) => Formula::And(cs.into_iter().map(|c| apply_negations(c, neg_mask)).collect()),
        Formula::Or(cs) => Formula::Or(cs.into_iter().map(|c| apply_negations(c, neg_mask)).collect()),
    }
}

/// Recursive split of a monotone function all of whose variables are live.
/// `vars[k]` names local variable `k + 1`.
fn split(g: &TruthTable, vars: &[usize]) -> Option<Formula> {
    let n = g.arity();
    if n == 1 {
        return Some(Formula::var(vars[0]));
    }
    let nf = prime_normal_forms(g).ok()?;
    let dnf: Vec<usize> = nf.dnf_terms.iter().map(|t| mask(t)).collect();
    let parts = components(n, &dnf);
    if parts.len() > 1 {
        // OR split: other components are 0 on each part's cofactor
        let children = parts
            .iter()
            .map(|&c| split(&project(g, c, false), &sub_vars(vars, c)))
            .collect::<Option<Vec<_>>>()?;
        return Some(Formula::or(children));
    }
    let cnf: Vec<usize> = nf.cnf_clauses.iter().map(|t| mask(t)).collect();
    let parts = components(n, &cnf);
    if parts.len() > 1 {
        let children = parts
            .iter()
            .map(|&c| split(&project(g, c, true), &sub_vars(vars, c)))
            .collect::<Option<Vec<_>>>()?;
        return Some(Formula::and(children));
    }
    None
}

fn mask(set: &std::collections::BTreeSet<usize>) -> usize {
    set.iter().fold(0, |m, &v| m | 1 << (v - 1))
}

/// Connected components (as variable masks) of the graph joining variables
/// that share a set.
fn components(n: usize, sets: &[usize]) -> Vec<usize> {
    let mut comps: Vec<usize> = Vec::new();
    for &s in sets {
        let mut merged = s;
        comps.retain(|&c| {
            if c & merged != 0 {
                merged |= c;
                false
            } else {
                true
            }
        });
        comps.push(merged);
    }
    let covered = comps.iter().fold(0, |a, &c| a | c);
    for p in 0..n {
        if covered >> p & 1 == 0 {
            comps.push(1 << p);
        }
    }
    comps.sort_unstable_by_key(|c| c.trailing_zeros());
    comps
}

/// `g` on the variables in `keep`, every other variable fixed to `fill`.
fn project(g: &TruthTable, keep: usize, fill: bool) -> TruthTable {
    let positions: Vec<usize> = (0..g.arity()).filter(|p| keep >> p & 1 == 1).collect();
    let base = if fill { (g.len() - 1) & !keep } else { 0 };
    TruthTable::from_fn(positions.len(), |y| {
        let x = positions
            .iter()
            .enumerate()
            .fold(base, |x, (k, &p)| x | ((y >> k) & 1) << p);
        g.get(x)
    })
}

fn sub_vars(vars: &[usize], keep: usize) -> Vec<usize> {
    vars.iter()
        .enumerate()
        .filter(|(p, _)| keep >> p & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::formula::{parse_formula, random_read_once};

    /// Every table computed by some read-once formula over exactly the
    /// variables in `vars` (positions), on `n` variables.
    fn all_read_once(n: usize, vars: usize) -> HashSet<TruthTable> {
        let mut out = HashSet::new();
        if vars.count_ones() == 1 {
            let t = TruthTable::var_pos(n, vars.trailing_zeros() as usize);
            out.insert(t.not());
            out.insert(t);
            return out;
        }
        let low = vars & vars.wrapping_neg();
        let rest = vars ^ low;
        // enumerate splits A | B = vars with the lowest variable in A
        let mut sub = rest;
        loop {
            let a = low | sub;
            let b = vars ^ a;
            if b != 0 {
                let left = all_read_once(n, a);
                let right = all_read_once(n, b);
                for l in &left {
                    for r in &right {
                        out.insert(l.and(r).unwrap());
                        out.insert(l.or(r).unwrap());
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        out
    }

    #[test]
    fn recognizes_the_textbook_pair() {
        let f = parse_formula("(x1|x2)&~x3").unwrap().to_truth_table().unwrap();
        let r = recognize_read_once(&f).unwrap().expect("read-once");
        assert_eq!(r.to_truth_table().unwrap(), f);
        assert!(r.is_read_once(3));
        let g = parse_formula("(x1|x2)&(~x1|~x3)").unwrap().to_truth_table().unwrap();
        assert_eq!(recognize_read_once(&g).unwrap(), None);
    }

    #[test]
    fn dead_variable_rejected() {
        let f = TruthTable::var(3, 2).unwrap();
        assert_eq!(recognize_read_once(&f), Err(FormulaError::DeadVariable(1)));
    }

    #[test]
    fn complete_up_to_four_variables() {
        for n in 1..=4 {
            let all = all_read_once(n, (1 << n) - 1);
            for code in 0u64..(1 << (1 << n)) {
                let f = TruthTable::from_u64(n, code);
                if f.live_vars().len() != n {
                    continue;
                }
                let got = recognize_read_once(&f).unwrap();
                assert_eq!(got.is_some(), all.contains(&f), "n={n} f={f}");
                if let Some(r) = got {
                    assert!(r.is_read_once(n));
                }
            }
        }
    }

    #[test]
    fn recognizes_generated_formulas() {
        for n in 2..=12 {
            for seed in 0..40 {
                let f = random_read_once(n, seed);
                let t = f.to_truth_table().unwrap();
                let r = recognize_read_once(&t).unwrap().expect("generated formula is read-once");
                assert_eq!(r.to_truth_table().unwrap(), t);
            }
        }
    }
}
