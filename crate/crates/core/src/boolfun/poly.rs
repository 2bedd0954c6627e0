// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::{BoolFunError, TruthTable, MAX_ARITY};

/// The unique real multilinear polynomial agreeing with a Boolean function on
/// `{0,1}^n`. Coefficient `a_S` is stored at index `mask(S)`; all coefficients
/// are integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    arity: usize,
    coeffs: Vec<i64>,
}

impl MultilinearPoly {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `a_S` for `S` given as a bitmask over variable positions (`x1` = bit 0).
    pub fn coeff(&self, subset: usize) -> i64 {
        self.coeffs[subset]
    }

    /// `a_S` for `S` given as 1-based variable indices.
    pub fn coeff_of(&self, vars: &[usize]) -> i64 {
        self.coeffs[vars.iter().fold(0, |m, &v| m | 1 << (v - 1))]
    }

    /// Nonzero monomials as `(subset mask, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, &c)| (s, c))
    }

    pub fn degree(&self) -> usize {
        self.terms()
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Value at the 0/1 point with input code `m`.
    pub fn eval(&self, m: usize) -> i64 {
        self.terms().filter(|(s, _)| m & s == *s).map(|(_, c)| c).sum()
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, i64)> = self.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by_key(|&(s, _)| {
            let vars: Vec<usize> = (0..self.arity).filter(|p| s >> p & 1 == 1).collect();
            (vars.len(), vars)
        });
        for (k, (s, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (k, c < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let vars: Vec<String> = (0..self.arity)
                .filter(|p| s >> p & 1 == 1)
                .map(|p| format!("x{}", p + 1))
                .collect();
            let mag = c.unsigned_abs();
            match (vars.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Möbius transform over the subset lattice:
/// `a_S = sum_{T subset S} (-1)^{|S|-|T|} f(1_T)`.
pub fn multilinear(f: &TruthTable) -> Result<MultilinearPoly, BoolFunError> {
    let n = f.arity();
    if n > MAX_ARITY {
        return Err(BoolFunError::ArityTooLarge { arity: n, max: MAX_ARITY });
    }
    let mut a: Vec<i64> = f.iter().map(i64::from).collect();
    for p in 0..n {
        let bit = 1 << p;
        for m in 0..a.len() {
            if m & bit != 0 {
                a[m] -= a[m ^ bit];
            }
        }
    }
    Ok(MultilinearPoly { arity: n, coeffs: a })
}

/// `deg(f)`, the size of the largest monomial with nonzero coefficient.
pub fn degree(f: &TruthTable) -> Result<usize, BoolFunError> {
    Ok(multilinear(f)?.degree())
}
