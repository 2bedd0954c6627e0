// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ProgramError;
use crate::boolfun::{families, TruthTable};

/// Largest arity listed by [`axiom_table`]. Class costs are closed-form, so
/// [`AxiomClass::queries`] is defined beyond it.
pub const AXIOM_TABLE_ARITY: usize = 12;

const CITE_AND_OR: &str =
    "BBC+98: Q_E(AND_n) = Q_E(OR_n) = n (Beals, Buhrman, Cleve, Mosca, de Wolf)";
const CITE_EXACT: &str =
    "AISJ13: Q_E(EXACT_n^k) = max(k, n-k) (Ambainis, Iraids, Smotrovs)";
const CITE_TH: &str = "AISJ13: Q_E(Th_n^k) = max(k, n-k+1) (Ambainis, Iraids, Smotrovs)";
const CITE_AND_OR3: &str =
    "MJM11: Q_E(x1 & (x2 | x3)) = 2 (Montanaro, Jozsa, Mitchison)";

/// Function classes whose exact query cost is taken from the literature
/// rather than simulated.
///
/// Text form: `AND_n`, `OR_n`, `EXACT_n^k`, `TH_n^k`, `AND_OR_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AxiomClass {
    And(usize),
    Or(usize),
    Exact { n: usize, k: usize },
    Threshold { n: usize, k: usize },
    AndOr3,
}

impl AxiomClass {
    pub fn arity(&self) -> usize {
        match *self {
            AxiomClass::And(n) | AxiomClass::Or(n) => n,
            AxiomClass::Exact { n, .. } | AxiomClass::Threshold { n, .. } => n,
            AxiomClass::AndOr3 => 3,
        }
    }

    /// Whether the parameters name a non-constant member of the class.
    pub fn is_valid(&self) -> bool {
        match *self {
            AxiomClass::And(n) | AxiomClass::Or(n) => n >= 1,
            AxiomClass::Exact { n, k } => n >= 1 && k <= n,
            AxiomClass::Threshold { n, k } => n >= 1 && (1..=n).contains(&k),
            AxiomClass::AndOr3 => true,
        }
    }

    pub fn queries(&self) -> u32 {
        let q = match *self {
            AxiomClass::And(n) | AxiomClass::Or(n) => n,
            AxiomClass::Exact { n, k } => k.max(n - k),
            AxiomClass::Threshold { n, k } => k.max(n - k + 1),
            AxiomClass::AndOr3 => 2,
        };
        q as u32
    }

    pub fn citation(&self) -> &'static str {
        match self {
            AxiomClass::And(_) | AxiomClass::Or(_) => CITE_AND_OR,
            AxiomClass::Exact { .. } => CITE_EXACT,
            AxiomClass::Threshold { .. } => CITE_TH,
            AxiomClass::AndOr3 => CITE_AND_OR3,
        }
    }

    /// The class representative on `x1..x_arity`.
    pub fn table(&self) -> TruthTable {
        match *self {
            AxiomClass::And(n) => families::and(n),
            AxiomClass::Or(n) => families::or(n),
            AxiomClass::Exact { n, k } => families::exact(n, k),
            AxiomClass::Threshold { n, k } => families::threshold(n, k),
            AxiomClass::AndOr3 => families::and_or3(),
        }
    }

    pub fn row(&self) -> AxiomRow {
        AxiomRow {
            class: *self,
            arity: self.arity(),
            queries: self.queries(),
            citation: self.citation(),
        }
    }
}

impl fmt::Display for AxiomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomClass::And(n) => write!(f, "AND_{n}"),
            AxiomClass::Or(n) => write!(f, "OR_{n}"),
            AxiomClass::Exact { n, k } => write!(f, "EXACT_{n}^{k}"),
            AxiomClass::Threshold { n, k } => write!(f, "TH_{n}^{k}"),
            AxiomClass::AndOr3 => write!(f, "AND_OR_3"),
        }
    }
}

impl FromStr for AxiomClass {
    type Err = ProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProgramError::UnknownClass(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let class = if s == "AND_OR_3" {
            AxiomClass::AndOr3
        } else if let Some(n) = s.strip_prefix("AND_") {
            AxiomClass::And(num(n)?)
        } else if let Some(n) = s.strip_prefix("OR_") {
            AxiomClass::Or(num(n)?)
        } else if let Some(rest) = s.strip_prefix("EXACT_") {
            let (n, k) = rest.split_once('^').ok_or_else(bad)?;
            AxiomClass::Exact { n: num(n)?, k: num(k)? }
        } else if let Some(rest) = s.strip_prefix("TH_") {
            let (n, k) = rest.split_once('^').ok_or_else(bad)?;
            AxiomClass::Threshold { n: num(n)?, k: num(k)? }
        } else {
            return Err(bad());
        };
        if !class.is_valid() {
            return Err(bad());
        }
        Ok(class)
    }
}

impl TryFrom<String> for AxiomClass {
    type Error = ProgramError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<AxiomClass> for String {
    fn from(c: AxiomClass) -> String {
        c.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomRow {
    pub class: AxiomClass,
    pub arity: usize,
    pub queries: u32,
    pub citation: &'static str,
}

/// Every permitted axiom class up to [`AXIOM_TABLE_ARITY`] variables.
pub fn axiom_table() -> Vec<AxiomRow> {
    let mut rows = Vec::new();
    for n in 1..=AXIOM_TABLE_ARITY {
        rows.push(AxiomClass::And(n).row());
        rows.push(AxiomClass::Or(n).row());
        rows.extend((0..=n).map(|k| AxiomClass::Exact { n, k }.row()));
        rows.extend((1..=n).map(|k| AxiomClass::Threshold { n, k }.row()));
    }
    rows.push(AxiomClass::AndOr3.row());
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literature_costs() {
        assert_eq!(AxiomClass::Exact { n: 3, k: 1 }.queries(), 2);
        assert_eq!(AxiomClass::Threshold { n: 4, k: 2 }.queries(), 3);
        assert_eq!(AxiomClass::Exact { n: 4, k: 2 }.queries(), 2);
        assert_eq!(AxiomClass::AndOr3.queries(), 2);
        assert_eq!(AxiomClass::Or(5).queries(), 5);
    }

    #[test]
    fn text_round_trip() {
        for row in axiom_table() {
            let s = row.class.to_string();
            assert_eq!(s.parse::<AxiomClass>().unwrap(), row.class);
            assert_eq!(row.class.table().arity(), row.arity);
        }
        assert!("TH_3^0".parse::<AxiomClass>().is_err());
        assert!("EXACT_3^4".parse::<AxiomClass>().is_err());
        assert!("MAJ_3".parse::<AxiomClass>().is_err());
        let json = serde_json::to_string(&AxiomClass::Exact { n: 3, k: 1 }).unwrap();
        assert_eq!(json, "\"EXACT_3^1\"");
    }
}
