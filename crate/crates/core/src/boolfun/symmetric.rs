// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use super::{weight, BoolFunError, TruthTable, MAX_ARITY};

/// Value vector `(b_0, ..., b_n)` of a symmetric function, `f(x) = b_|x|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricProfile(Vec<bool>);

impl SymmetricProfile {
    pub fn new(bits: Vec<bool>) -> Result<Self, BoolFunError> {
        match bits.len() {
            0 => Err(BoolFunError::Parse("empty profile".into())),
            l if l - 1 > MAX_ARITY => Err(BoolFunError::ArityTooLarge {
                arity: l - 1,
                max: MAX_ARITY,
            }),
            _ => Ok(Self(bits)),
        }
    }

    /// Builds `(b_0..b_n)` from `b_w = f(w)`.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Self {
        Self((0..=n).map(f).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len() - 1
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, w: usize) -> bool {
        self.0[w]
    }

    pub fn to_table(&self) -> TruthTable {
        TruthTable::from_fn(self.arity(), |m| self.0[weight(m)])
    }

    pub fn negate(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }

    /// Profile after negating every input: `b_w -> b_{n-w}`.
    pub fn reverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// `(b_0..b_{n-1})`, the profile of any restriction to 0.
    pub fn prefix(&self) -> Option<Self> {
        (self.arity() > 0).then(|| Self(self.0[..self.0.len() - 1].to_vec()))
    }

    /// `(b_1..b_n)`, the profile of any restriction to 1.
    pub fn suffix(&self) -> Option<Self> {
        (self.arity() > 0).then(|| Self(self.0[1..].to_vec()))
    }

    /// The four vectors of functions isomorphic to AND_n:
    /// `(0..0,1)`, `(0,1..1)`, `(1,0..0)`, `(1..1,0)`.
    pub fn is_and_vector(&self) -> bool {
        let n = self.arity();
        if n == 0 {
            return false;
        }
        let odd_one_at = |k: usize, v: bool| {
            self.0
                .iter()
                .enumerate()
                .all(|(w, &b)| b == ((w == k) == v))
        };
        odd_one_at(n, true) || odd_one_at(0, false) || odd_one_at(0, true) || odd_one_at(n, false)
    }
}

impl fmt::Display for SymmetricProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The profile of `f` if `f` depends only on the Hamming weight of its input.
pub fn symmetric_profile(f: &TruthTable) -> Option<SymmetricProfile> {
    let n = f.arity();
    let mut bits: Vec<Option<bool>> = vec![None; n + 1];
    for m in 0..f.len() {
        let v = f.get(m);
        let slot = &mut bits[weight(m)];
        match *slot {
            None => *slot = Some(v),
            Some(prev) if prev != v => return None,
            _ => {}
        }
    }
    Some(SymmetricProfile(bits.into_iter().map(Option::unwrap).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::families;

    fn profile(bits: &[u8]) -> SymmetricProfile {
        SymmetricProfile::new(bits.iter().map(|&b| b == 1).collect()).unwrap()
    }

    #[test]
    fn named_profiles() {
        assert_eq!(symmetric_profile(&families::parity(3)), Some(profile(&[0, 1, 0, 1])));
        assert_eq!(symmetric_profile(&families::nae(3)), Some(profile(&[0, 1, 1, 0])));
        assert_eq!(symmetric_profile(&families::and_or3()), None);
    }

    #[test]
    fn constants_have_flat_profile() {
        assert_eq!(
            symmetric_profile(&TruthTable::constant(4, true)),
            Some(profile(&[1, 1, 1, 1, 1]))
        );
        assert_eq!(
            symmetric_profile(&TruthTable::constant(0, false)),
            Some(profile(&[0]))
        );
    }

    #[test]
    fn restriction_takes_prefix_and_suffix() {
        for code in 0u32..(1 << 6) {
            let p = SymmetricProfile::from_fn(5, |w| (code >> w) & 1 == 1);
            let f = p.to_table();
            for i in 1..=5 {
                let r0 = f.restrict(i, false).unwrap();
                let r1 = f.restrict(i, true).unwrap();
                assert_eq!(symmetric_profile(&r0), p.prefix());
                assert_eq!(symmetric_profile(&r1), p.suffix());
            }
        }
    }

    #[test]
    fn and_vectors() {
        for (bits, expected) in [
            (vec![0, 0, 0, 1], true),
            (vec![0, 1, 1, 1], true),
            (vec![1, 0, 0, 0], true),
            (vec![1, 1, 1, 0], true),
            (vec![0, 1, 1, 0], false),
            (vec![0, 0, 0, 0], false),
        ] {
            assert_eq!(profile(&bits).is_and_vector(), expected, "{bits:?}");
        }
    }
}
