// SPDX-License-Identifier: Apache-2.0

//! Boolean formulas over `{AND, OR, NOT}` with negations pushed to the leaves.

mod parse;
mod random;
mod readonce;

use std::fmt;

use thiserror::Error;

use crate::boolfun::{TruthTable, MAX_ARITY};

pub use parse::parse_formula;
pub use random::random_read_once;
pub use readonce::{recognize_read_once, MAX_READ_ONCE_ARITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable index 0 at position {pos} (variables start at x1)")]
    ZeroVariable { pos: usize },
    #[error("function ignores x{0}")]
    DeadVariable(usize),
    #[error("arity {arity} exceeds the supported bound {max}")]
    ArityTooLarge { arity: usize, max: usize },
}

/// Formula tree. `And`/`Or` nodes always have at least two children and
/// never have a child of their own kind (nested nodes are flattened).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Lit { var: usize, negated: bool },
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn var(var: usize) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        Formula::Lit { var, negated: false }
    }

    pub fn lit(var: usize, negated: bool) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        Formula::Lit { var, negated }
    }

    pub fn and(children: impl IntoIterator<Item = Formula>) -> Self {
        Self::join(children, true)
    }

    pub fn or(children: impl IntoIterator<Item = Formula>) -> Self {
        Self::join(children, false)
    }

    fn join(children: impl IntoIterator<Item = Formula>, is_and: bool) -> Self {
        let mut flat = Vec::new();
        for c in children {
            match c {
                Formula::And(cs) if is_and => flat.extend(cs),
                Formula::Or(cs) if !is_and => flat.extend(cs),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "empty conjunction or disjunction");
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        if is_and {
            Formula::And(flat)
        } else {
            Formula::Or(flat)
        }
    }

    /// De Morgan negation; stays in negation-at-leaves form.
    pub fn negate(&self) -> Self {
        match self {
            Formula::Lit { var, negated } => Formula::Lit {
                var: *var,
                negated: !negated,
            },
            Formula::And(cs) => Formula::Or(cs.iter().map(Formula::negate).collect()),
            Formula::Or(cs) => Formula::And(cs.iter().map(Formula::negate).collect()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Formula::Lit { .. } => 1,
            Formula::And(cs) | Formula::Or(cs) => cs.iter().map(Formula::leaf_count).sum(),
        }
    }

    /// Variable index of every leaf, in tree order.
    pub fn leaf_vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Lit { var, .. } => out.push(*var),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Highest variable index mentioned; the formula's inferred arity.
    pub fn max_var(&self) -> usize {
        self.leaf_vars().into_iter().max().unwrap_or(0)
    }

    fn min_var(&self) -> usize {
        self.leaf_vars().into_iter().min().unwrap_or(0)
    }

    /// True iff each of `x1..x_arity` labels exactly one leaf.
    pub fn is_read_once(&self, arity: usize) -> bool {
        let mut vars = self.leaf_vars();
        vars.sort_unstable();
        vars.len() == arity && vars.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn eval(&self, m: usize) -> bool {
        match self {
            Formula::Lit { var, negated } => ((m >> (var - 1)) & 1 == 1) ^ negated,
            Formula::And(cs) => cs.iter().all(|c| c.eval(m)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval(m)),
        }
    }

    /// Table over the inferred arity `max_var()`.
    pub fn to_truth_table(&self) -> Result<TruthTable, FormulaError> {
        self.to_truth_table_with_arity(self.max_var())
    }

    pub fn to_truth_table_with_arity(&self, arity: usize) -> Result<TruthTable, FormulaError> {
        if arity > MAX_ARITY {
            return Err(FormulaError::ArityTooLarge {
                arity,
                max: MAX_ARITY,
            });
        }
        if self.max_var() > arity {
            return Err(FormulaError::ArityTooLarge {
                arity: self.max_var(),
                max: arity,
            });
        }
        Ok(self.table(arity))
    }

    fn table(&self, n: usize) -> TruthTable {
        match self {
            Formula::Lit { var, negated } => {
                let t = TruthTable::var_pos(n, var - 1);
                if *negated {
                    t.not()
                } else {
                    t
                }
            }
            Formula::And(cs) => cs
                .iter()
                .map(|c| c.table(n))
                .reduce(|a, b| a.and(&b).unwrap())
                .unwrap(),
            Formula::Or(cs) => cs
                .iter()
                .map(|c| c.table(n))
                .reduce(|a, b| a.or(&b).unwrap())
                .unwrap(),
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, parent_is_and: bool) -> fmt::Result {
        match self {
            Formula::Or(_) if parent_is_and => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

/// Canonical text: children ordered by their smallest variable index, and
/// parentheses only around a disjunction inside a conjunction.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Lit { var, negated } => {
                write!(f, "{}x{var}", if *negated { "~" } else { "" })
            }
            Formula::And(cs) | Formula::Or(cs) => {
                let is_and = matches!(self, Formula::And(_));
                let mut sorted: Vec<&Formula> = cs.iter().collect();
                sorted.sort_by_key(|c| c.min_var());
                for (k, c) in sorted.into_iter().enumerate() {
                    if k > 0 {
                        write!(f, "{}", if is_and { "&" } else { "|" })?;
                    }
                    c.write_child(f, is_and)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{families, symmetric_profile};

    #[test]
    fn tables() {
        let and2 = Formula::and([Formula::var(1), Formula::var(2)]);
        assert_eq!(and2.to_truth_table().unwrap().to_bin_string(), "0001");
        let f = Formula::and([Formula::var(1), Formula::or([Formula::var(2), Formula::var(3)])]);
        let t = f.to_truth_table().unwrap();
        assert_eq!(t.count_ones(), 3);
        assert_eq!(t, families::and_or3());
        let or3 = Formula::or((1..=3).map(Formula::var));
        let p = symmetric_profile(&or3.to_truth_table().unwrap()).unwrap();
        assert_eq!(p.to_string(), "0,1,1,1");
    }

    #[test]
    fn flattening_and_negation() {
        let f = Formula::and([
            Formula::and([Formula::var(1), Formula::var(2)]),
            Formula::var(3),
        ]);
        assert_eq!(f, Formula::And(vec![Formula::var(1), Formula::var(2), Formula::var(3)]));
        let n = f.negate();
        assert_eq!(n.to_string(), "~x1|~x2|~x3");
        assert_eq!(n.to_truth_table().unwrap(), f.to_truth_table().unwrap().not());
    }

    #[test]
    fn display_is_canonical() {
        let f = Formula::and([Formula::lit(3, true), Formula::or([Formula::var(2), Formula::var(1)])]);
        assert_eq!(f.to_string(), "(x1|x2)&~x3");
        assert_eq!(parse_formula(&f.to_string()).unwrap().to_truth_table(), f.to_truth_table());
    }

    #[test]
    fn read_once_check() {
        let f = parse_formula("(x1|x2)&~x3").unwrap();
        assert!(f.is_read_once(3));
        let g = parse_formula("(x1|x2)&(~x1|~x3)").unwrap();
        assert_eq!(g.leaf_count(), 4);
        assert!(!g.is_read_once(3));
    }
}
