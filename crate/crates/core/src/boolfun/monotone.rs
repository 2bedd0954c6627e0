// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::{len_mask, BoolFunError, TruthTable, MASKS};

/// True iff `f(x) <= f(y)` whenever `x <= y` componentwise. Checking pairs
/// that differ in a single bit suffices.
pub fn is_monotone(f: &TruthTable) -> bool {
    let n = f.arity();
    let words = f.words();
    let lm = len_mask(n);
    (0..n).all(|p| {
        if p < 6 {
            let s = 1u32 << p;
            // entry m (bit p clear) is 1 while m + 2^p is 0
            words.iter().all(|&w| w & MASKS[p] & !(w >> s) & lm == 0)
        } else {
            let stride = 1usize << (p - 6);
            words
                .iter()
                .enumerate()
                .filter(|(k, _)| k & stride == 0)
                .all(|(k, &lo)| lo & !words[k | stride] == 0)
        }
    })
}

/// Prime CNF clauses and prime DNF terms of a monotone function, each a set
/// of 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneNormalForm {
    pub arity: usize,
    pub cnf_clauses: BTreeSet<BTreeSet<usize>>,
    pub dnf_terms: BTreeSet<BTreeSet<usize>>,
}

fn mask_of(set: &BTreeSet<usize>) -> usize {
    set.iter().fold(0, |m, &v| m | (1 << (v - 1)))
}

fn set_of(mask: usize, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|p| mask >> p & 1 == 1).map(|p| p + 1).collect()
}

impl MonotoneNormalForm {
    pub fn dnf_table(&self) -> TruthTable {
        let terms: Vec<usize> = self.dnf_terms.iter().map(mask_of).collect();
        TruthTable::from_fn(self.arity, |m| terms.iter().any(|&t| m & t == t))
    }

    pub fn cnf_table(&self) -> TruthTable {
        let clauses: Vec<usize> = self.cnf_clauses.iter().map(mask_of).collect();
        TruthTable::from_fn(self.arity, |m| clauses.iter().all(|&c| m & c != 0))
    }
}

fn is_antichain(sets: &BTreeSet<BTreeSet<usize>>) -> bool {
    sets.iter()
        .all(|a| sets.iter().all(|b| a == b || !a.is_subset(b)))
}

impl MonotoneNormalForm {
    pub fn is_prime(&self) -> bool {
        is_antichain(&self.cnf_clauses) && is_antichain(&self.dnf_terms)
    }
}

/// DNF terms are the supports of minimal true points; CNF clauses are the
/// zero-sets of maximal false points.
pub fn prime_normal_forms(f: &TruthTable) -> Result<MonotoneNormalForm, BoolFunError> {
    if f.is_constant() {
        return Err(BoolFunError::Constant);
    }
    if !is_monotone(f) {
        return Err(BoolFunError::NotMonotone);
    }
    let n = f.arity();
    let full = f.len() - 1;
    let mut dnf_terms = BTreeSet::new();
    let mut cnf_clauses = BTreeSet::new();
    for m in 0..f.len() {
        if f.get(m) {
            if (0..n).all(|p| m >> p & 1 == 0 || !f.get(m ^ (1 << p))) {
                dnf_terms.insert(set_of(m, n));
            }
        } else if (0..n).all(|p| m >> p & 1 == 1 || f.get(m | (1 << p))) {
            cnf_clauses.insert(set_of(full & !m, n));
        }
    }
    Ok(MonotoneNormalForm {
        arity: n,
        cnf_clauses,
        dnf_terms,
    })
}
