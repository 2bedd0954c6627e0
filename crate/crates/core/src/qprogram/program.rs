// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AxiomClass, ProgramError, ScaledMatrix};

/// Location of a node: the child index taken at each step from the root
/// (`0`/`1` under queries, the measured basis state under a block).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn child(&self, k: usize) -> NodePath {
        let mut v = self.0.clone();
        v.push(k);
        NodePath(v)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root")?;
        for k in &self.0 {
            write!(f, "/{k}")?;
        }
        Ok(())
    }
}

/// A hybrid exact query algorithm.
///
/// JSON form is tagged by `kind`: `output`, `cq`, `xq`, `ub` or `axiom`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum QueryProgram {
    #[serde(rename = "output")]
    Output { value: bool },
    /// Read `x_var`, continue in `zero` or `one`.
    #[serde(rename = "cq")]
    ClassicalQuery {
        var: usize,
        zero: Box<QueryProgram>,
        one: Box<QueryProgram>,
    },
    /// One-query evaluation of `x_i XOR x_j`; sugar for [`xor_gadget`](super::xor_gadget).
    #[serde(rename = "xq")]
    XorQuery {
        vars: [usize; 2],
        zero: Box<QueryProgram>,
        one: Box<QueryProgram>,
    },
    #[serde(rename = "ub")]
    Unitary(UnitaryBlock),
    #[serde(rename = "axiom")]
    Axiom(AxiomLeaf),
}

/// `U_1, Q, U_2, ..., Q, U_{t+1}` on a `dim`-dimensional space starting in
/// basis state 0, followed by a standard-basis measurement. The oracle flips
/// the sign of basis state `s` when `labels[s] = Some(i)` and `x_i = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryBlock {
    pub dim: usize,
    pub labels: Vec<Option<usize>>,
    pub unitaries: Vec<ScaledMatrix>,
    /// Continuation per measured basis state.
    pub outcomes: Vec<QueryProgram>,
}

impl UnitaryBlock {
    /// Number of oracle calls `t`.
    pub fn queries(&self) -> u32 {
        self.unitaries.len().saturating_sub(1) as u32
    }
}

/// A literature-cited subroutine computing `class` on `vars`: the class's
/// `x_k` is the program variable `vars[k-1]`. No circuit is provided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomLeaf {
    pub class: AxiomClass,
    pub vars: Vec<usize>,
    pub queries: u32,
    pub citation: String,
}

impl AxiomLeaf {
    /// Leaf with cost and citation taken from the axiom table.
    pub fn new(class: AxiomClass, vars: Vec<usize>) -> Self {
        Self {
            class,
            vars,
            queries: class.queries(),
            citation: class.citation().to_string(),
        }
    }
}

impl QueryProgram {
    pub fn output(value: bool) -> Self {
        QueryProgram::Output { value }
    }

    pub fn cq(var: usize, zero: QueryProgram, one: QueryProgram) -> Self {
        QueryProgram::ClassicalQuery {
            var,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    pub fn xq(i: usize, j: usize, zero: QueryProgram, one: QueryProgram) -> Result<Self, ProgramError> {
        if i == j {
            return Err(ProgramError::SameVariable(i));
        }
        Ok(QueryProgram::XorQuery {
            vars: [i, j],
            zero: Box::new(zero),
            one: Box::new(one),
        })
    }

    pub fn axiom(class: AxiomClass, vars: Vec<usize>) -> Self {
        QueryProgram::Axiom(AxiomLeaf::new(class, vars))
    }

    /// Worst-case number of oracle calls over all root-to-leaf paths.
    pub fn query_cost(&self) -> u32 {
        match self {
            QueryProgram::Output { .. } => 0,
            QueryProgram::ClassicalQuery { zero, one, .. } | QueryProgram::XorQuery { zero, one, .. } => {
                1 + zero.query_cost().max(one.query_cost())
            }
            QueryProgram::Unitary(b) => {
                b.queries() + b.outcomes.iter().map(Self::query_cost).max().unwrap_or(0)
            }
            QueryProgram::Axiom(a) => a.queries,
        }
    }

    /// Direct children with their child indices.
    pub fn children(&self) -> Vec<&QueryProgram> {
        match self {
            QueryProgram::Output { .. } | QueryProgram::Axiom(_) => vec![],
            QueryProgram::ClassicalQuery { zero, one, .. } | QueryProgram::XorQuery { zero, one, .. } => {
                vec![zero, one]
            }
            QueryProgram::Unitary(b) => b.outcomes.iter().collect(),
        }
    }

    fn walk<'a>(&'a self, path: &mut Vec<usize>, visit: &mut dyn FnMut(&NodePath, &'a QueryProgram)) {
        visit(&NodePath(path.clone()), self);
        for (k, c) in self.children().into_iter().enumerate() {
            path.push(k);
            c.walk(path, visit);
            path.pop();
        }
    }

    /// Pre-order traversal with node paths.
    pub fn nodes(&self) -> Vec<(NodePath, &QueryProgram)> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |p, n| out.push((p.clone(), n)));
        out
    }

    pub fn axiom_leaves(&self) -> Vec<(NodePath, &AxiomLeaf)> {
        self.nodes()
            .into_iter()
            .filter_map(|(p, n)| match n {
                QueryProgram::Axiom(a) => Some((p, a)),
                _ => None,
            })
            .collect()
    }

    pub fn has_axiom(&self) -> bool {
        !self.axiom_leaves().is_empty()
    }

    /// Only classical queries and outputs.
    pub fn is_classical(&self) -> bool {
        self.nodes()
            .iter()
            .all(|(_, n)| matches!(n, QueryProgram::Output { .. } | QueryProgram::ClassicalQuery { .. }))
    }

    /// Largest variable index mentioned anywhere, 0 if none.
    pub fn max_var(&self) -> usize {
        self.nodes()
            .iter()
            .map(|(_, n)| match n {
                QueryProgram::ClassicalQuery { var, .. } => *var,
                QueryProgram::XorQuery { vars, .. } => vars[0].max(vars[1]),
                QueryProgram::Unitary(b) => b.labels.iter().flatten().copied().max().unwrap_or(0),
                QueryProgram::Axiom(a) => a.vars.iter().copied().max().unwrap_or(0),
                QueryProgram::Output { .. } => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Copy with every [`QueryProgram::XorQuery`] replaced by its unitary
    /// block. Child indices, hence node paths, are preserved.
    pub fn elaborate(&self) -> QueryProgram {
        match self {
            QueryProgram::Output { .. } | QueryProgram::Axiom(_) => self.clone(),
            QueryProgram::ClassicalQuery { var, zero, one } => {
                QueryProgram::cq(*var, zero.elaborate(), one.elaborate())
            }
            QueryProgram::XorQuery { vars, zero, one } => {
                super::xor_block(vars[0], vars[1], zero.elaborate(), one.elaborate())
            }
            QueryProgram::Unitary(b) => QueryProgram::Unitary(UnitaryBlock {
                dim: b.dim,
                labels: b.labels.clone(),
                unitaries: b.unitaries.clone(),
                outcomes: b.outcomes.iter().map(Self::elaborate).collect(),
            }),
        }
    }

    /// Rename variables through `map` (`x_v` becomes `x_{map[v-1]}`).
    pub fn relabel(&self, map: &[usize]) -> QueryProgram {
        let m = |v: usize| map[v - 1];
        match self {
            QueryProgram::Output { .. } => self.clone(),
            QueryProgram::ClassicalQuery { var, zero, one } => {
                QueryProgram::cq(m(*var), zero.relabel(map), one.relabel(map))
            }
            QueryProgram::XorQuery { vars, zero, one } => QueryProgram::XorQuery {
                vars: [m(vars[0]), m(vars[1])],
                zero: Box::new(zero.relabel(map)),
                one: Box::new(one.relabel(map)),
            },
            QueryProgram::Unitary(b) => QueryProgram::Unitary(UnitaryBlock {
                dim: b.dim,
                labels: b.labels.iter().map(|l| l.map(m)).collect(),
                unitaries: b.unitaries.clone(),
                outcomes: b.outcomes.iter().map(|o| o.relabel(map)).collect(),
            }),
            QueryProgram::Axiom(a) => QueryProgram::Axiom(AxiomLeaf {
                vars: a.vars.iter().map(|&v| m(v)).collect(),
                ..a.clone()
            }),
        }
    }

    /// Replace every `Output { value }` leaf with `leaf(value)`.
    pub fn map_outputs(&self, leaf: &mut dyn FnMut(bool) -> QueryProgram) -> QueryProgram {
        match self {
            QueryProgram::Output { value } => leaf(*value),
            QueryProgram::Axiom(_) => self.clone(),
            QueryProgram::ClassicalQuery { var, zero, one } => {
                QueryProgram::cq(*var, zero.map_outputs(leaf), one.map_outputs(leaf))
            }
            QueryProgram::XorQuery { vars, zero, one } => QueryProgram::XorQuery {
                vars: *vars,
                zero: Box::new(zero.map_outputs(leaf)),
                one: Box::new(one.map_outputs(leaf)),
            },
            QueryProgram::Unitary(b) => QueryProgram::Unitary(UnitaryBlock {
                dim: b.dim,
                labels: b.labels.clone(),
                unitaries: b.unitaries.clone(),
                outcomes: b.outcomes.iter().map(|o| o.map_outputs(leaf)).collect(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> QueryProgram {
        QueryProgram::cq(
            1,
            QueryProgram::xq(2, 3, QueryProgram::output(false), QueryProgram::output(true)).unwrap(),
            QueryProgram::axiom(AxiomClass::Exact { n: 3, k: 1 }, vec![2, 3, 4]),
        )
    }

    #[test]
    fn cost_and_queries() {
        let p = sample();
        assert_eq!(p.query_cost(), 3);
        assert_eq!(p.max_var(), 4);
        assert!(!p.is_classical());
        let leaves = p.axiom_leaves();
        assert_eq!(leaves.len(), 1);
        assert_eq!(leaves[0].0.to_string(), "root/1");
        assert!(QueryProgram::xq(2, 2, QueryProgram::output(false), QueryProgram::output(true)).is_err());
    }

    #[test]
    fn elaboration_keeps_cost_and_paths() {
        let p = sample();
        let e = p.elaborate();
        assert_eq!(e.query_cost(), p.query_cost());
        assert_eq!(e.axiom_leaves()[0].0, p.axiom_leaves()[0].0);
        assert!(e.nodes().iter().all(|(_, n)| !matches!(n, QueryProgram::XorQuery { .. })));
    }

    #[test]
    fn json_round_trip() {
        let p = sample().elaborate();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with(r#"{"kind":"cq","var":1,"zero":{"kind":"ub","dim":2"#));
        assert!(json.contains(r#""class":"EXACT_3^1""#));
        let back: QueryProgram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"kind":"axiom","class":"EXACT_3^7","vars":[1,2,3],"queries":2,"citation":""}"#;
        assert!(serde_json::from_str::<QueryProgram>(bad).is_err());
    }

    #[test]
    fn relabel_moves_variables() {
        let p = sample().relabel(&[5, 6, 7, 8]);
        assert_eq!(p.max_var(), 8);
        match &p {
            QueryProgram::ClassicalQuery { var, .. } => assert_eq!(*var, 5),
            _ => unreachable!(),
        }
    }
}
