// SPDX-License-Identifier: Apache-2.0

//! NPN equivalence: input negations, input permutations, output negation.
//!
//! The canonical representative of a class is the member whose packed table,
//! read as an integer with entry `m` at bit `m`, is smallest. It is found by
//! walking all `2 * 2^n * n!` transforms: permutations in plain-changes order
//! (each step swaps two adjacent variables) and, inside each permutation,
//! input negations in Gray-code order (each step flips one variable), so
//! every step is a couple of word operations.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::{len_mask, symmetric_profile, weight, BoolFunError, TruthTable, MASKS};

/// Largest arity accepted by [`npn_canonical`].
pub const MAX_NPN_ARITY: usize = 6;

/// Maps `f` to `g` with `g(y) = f(x) ^ output_neg`, where the original input
/// is `x_{perm[k]} = y_k ^ bit k of input_neg` (positions 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NpnTransform {
    pub perm: Vec<usize>,
    pub input_neg: u32,
    pub output_neg: bool,
}

impl NpnTransform {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            input_neg: 0,
            output_neg: false,
        }
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        self.perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
            && (n >= 32 || self.input_neg >> n == 0)
    }

    pub fn apply(&self, f: &TruthTable) -> Result<TruthTable, BoolFunError> {
        if f.arity() != self.arity() {
            return Err(BoolFunError::ArityMismatch {
                left: f.arity(),
                right: self.arity(),
            });
        }
        Ok(TruthTable::from_fn(f.arity(), |y| {
            let z = y ^ self.input_neg as usize;
            let x = self
                .perm
                .iter()
                .enumerate()
                .fold(0usize, |x, (k, &p)| x | ((z >> k) & 1) << p);
            f.get(x) ^ self.output_neg
        }))
    }

    /// The transform equal to applying `self` first and then `next`.
    pub fn then(&self, next: &NpnTransform) -> NpnTransform {
        assert_eq!(self.arity(), next.arity());
        let perm: Vec<usize> = next.perm.iter().map(|&q| self.perm[q]).collect();
        let input_neg = (0..self.arity()).fold(0u32, |acc, k| {
            let bit = (next.input_neg >> k) & 1 ^ (self.input_neg >> next.perm[k]) & 1;
            acc | bit << k
        });
        NpnTransform {
            perm,
            input_neg,
            output_neg: self.output_neg ^ next.output_neg,
        }
    }

    pub fn inverse(&self) -> NpnTransform {
        let n = self.arity();
        let mut perm = vec![0; n];
        for (k, &p) in self.perm.iter().enumerate() {
            perm[p] = k;
        }
        let input_neg = (0..n).fold(0u32, |acc, k| acc | ((self.input_neg >> perm[k]) & 1) << k);
        NpnTransform {
            perm,
            input_neg,
            output_neg: self.output_neg,
        }
    }
}

/// Adjacent-swap positions that walk through all `n!` permutations.
fn plain_changes(n: usize) -> &'static [usize] {
    static CACHE: OnceLock<Vec<Vec<usize>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=MAX_NPN_ARITY).map(sjt_swaps).collect())[n]
}

fn sjt_swaps(n: usize) -> Vec<usize> {
    let mut elems: Vec<usize> = (0..n).collect();
    let mut dir: Vec<isize> = vec![-1; n];
    let mut swaps = Vec::new();
    loop {
        let mut mobile: Option<usize> = None;
        for i in 0..n {
            let j = i as isize + dir[elems[i]];
            if j >= 0 && (j as usize) < n && elems[j as usize] < elems[i] {
                if mobile.map_or(true, |m| elems[i] > elems[m]) {
                    mobile = Some(i);
                }
            }
        }
        let Some(i) = mobile else { break };
        let e = elems[i];
        let j = (i as isize + dir[e]) as usize;
        elems.swap(i, j);
        swaps.push(i.min(j));
        for d in elems.iter().filter(|&&x| x > e) {
            dir[*d] = -dir[*d];
        }
    }
    swaps
}

#[inline]
fn negate_var(w: u64, p: usize) -> u64 {
    let s = 1u32 << p;
    ((w >> s) & MASKS[p]) | ((w & MASKS[p]) << s)
}

#[inline]
fn swap_adjacent(w: u64, p: usize) -> u64 {
    let s = 1u32 << p;
    let mask = !MASKS[p] & MASKS[p + 1];
    let t = ((w >> s) ^ w) & mask;
    w ^ t ^ (t << s)
}

/// Smallest table in the NPN class of `f`, with a transform mapping `f` to it.
pub fn npn_canonical(f: &TruthTable) -> Result<(TruthTable, NpnTransform), BoolFunError> {
    let n = f.arity();
    if n > MAX_NPN_ARITY {
        return Err(BoolFunError::ArityTooLarge {
            arity: n,
            max: MAX_NPN_ARITY,
        });
    }
    let lm = len_mask(n);
    let mut w = f.as_u64().expect("arity <= 6");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut neg = 0u32;
    let mut best = u64::MAX;
    let mut best_t = NpnTransform::identity(n);

    let mut consider = |w: u64, perm: &[usize], neg: u32| {
        let (cand, out) = if !w & lm < w { (!w & lm, true) } else { (w, false) };
        if cand < best {
            best = cand;
            best_t = NpnTransform {
                perm: perm.to_vec(),
                input_neg: neg,
                output_neg: out,
            };
        }
    };

    let swaps = plain_changes(n);
    for step in 0..=swaps.len() {
        consider(w, &perm, neg);
        for k in 1u32..(1 << n) {
            let p = k.trailing_zeros() as usize;
            w = negate_var(w, p);
            neg ^= 1 << p;
            consider(w, &perm, neg);
        }
        if let Some(&p) = swaps.get(step) {
            w = swap_adjacent(w, p);
            perm.swap(p, p + 1);
            let (a, b) = ((neg >> p) & 1, (neg >> (p + 1)) & 1);
            neg = (neg & !(0b11 << p)) | (a << (p + 1)) | (b << p);
        }
    }
    Ok((TruthTable::from_u64(n, best), best_t))
}

/// Popcount criterion: a function is NPN-equivalent to `AND_n` iff its table
/// has exactly one 1 or exactly one 0.
pub fn is_and_isomorphic(f: &TruthTable) -> bool {
    if f.arity() == 0 {
        return false;
    }
    let c = f.count_ones();
    c == 1 || c == f.len() - 1
}

/// Every table NPN-equivalent to `AND_n`, generated by applying all transforms.
pub fn and_orbit(n: usize) -> Result<HashSet<TruthTable>, BoolFunError> {
    if n > MAX_NPN_ARITY {
        return Err(BoolFunError::ArityTooLarge {
            arity: n,
            max: MAX_NPN_ARITY,
        });
    }
    let and = super::families::and(n);
    let mut orbit = HashSet::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let swaps = plain_changes(n);
    for step in 0..=swaps.len() {
        for neg in 0u32..(1 << n) {
            for output_neg in [false, true] {
                let t = NpnTransform {
                    perm: perm.clone(),
                    input_neg: neg,
                    output_neg,
                };
                orbit.insert(t.apply(&and)?);
            }
        }
        if let Some(&p) = swaps.get(step) {
            perm.swap(p, p + 1);
        }
    }
    Ok(orbit)
}

/// NPN equivalence test. Uses canonical forms up to arity 6; above that it
/// is supported when one side is symmetric, by searching input-negation masks.
pub fn are_npn_equivalent(f: &TruthTable, g: &TruthTable) -> Result<bool, BoolFunError> {
    if f.arity() != g.arity() {
        return Ok(false);
    }
    if f.count_ones() != g.count_ones() && f.count_ones() != g.len() - g.count_ones() {
        return Ok(false);
    }
    if f.arity() <= MAX_NPN_ARITY {
        return Ok(npn_canonical(f)?.0 == npn_canonical(g)?.0);
    }
    let (other, profile) = match (symmetric_profile(g), symmetric_profile(f)) {
        (Some(p), _) => (f, p),
        (None, Some(p)) => (g, p),
        (None, None) => {
            return Err(BoolFunError::ArityTooLarge {
                arity: f.arity(),
                max: MAX_NPN_ARITY,
            })
        }
    };
    // permutations fix a symmetric function, so only negations matter
    Ok((0..other.len()).any(|a| {
        [false, true].into_iter().any(|o| {
            (0..other.len()).all(|y| other.get(y) ^ o == profile.get(weight(y ^ a)))
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::families;

    #[test]
    fn plain_changes_visit_every_permutation() {
        for n in 0..=5 {
            let mut p: Vec<usize> = (0..n).collect();
            let mut seen = HashSet::new();
            seen.insert(p.clone());
            for &s in plain_changes(n) {
                p.swap(s, s + 1);
                seen.insert(p.clone());
            }
            assert_eq!(seen.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn witness_maps_to_canonical() {
        for code in (0u64..65536).step_by(97) {
            let f = TruthTable::from_u64(4, code);
            let (c, t) = npn_canonical(&f).unwrap();
            assert!(t.is_valid());
            assert_eq!(t.apply(&f).unwrap(), c);
            assert_eq!(npn_canonical(&c).unwrap().0, c);
        }
    }

    #[test]
    fn or_and_share_class() {
        for n in 1..=6 {
            assert_eq!(
                npn_canonical(&families::or(n)).unwrap().0,
                npn_canonical(&families::and(n)).unwrap().0
            );
        }
    }

    #[test]
    fn canonical_is_minimum_over_all_transforms() {
        // independent check by generic application of every transform
        let f = TruthTable::from_u64(3, 0b1001_0110 ^ 0b0000_0001);
        let mut best = u64::MAX;
        let mut perm = vec![0, 1, 2];
        let swaps = plain_changes(3);
        for step in 0..=swaps.len() {
            for neg in 0..8 {
                for o in [false, true] {
                    let t = NpnTransform { perm: perm.clone(), input_neg: neg, output_neg: o };
                    best = best.min(t.apply(&f).unwrap().as_u64().unwrap());
                }
            }
            if let Some(&p) = swaps.get(step) {
                perm.swap(p, p + 1);
            }
        }
        assert_eq!(npn_canonical(&f).unwrap().0.as_u64(), Some(best));
    }

    #[test]
    fn transform_algebra() {
        let f = TruthTable::from_u64(4, 0x1ee7);
        let a = NpnTransform { perm: vec![2, 0, 3, 1], input_neg: 0b0101, output_neg: true };
        let b = NpnTransform { perm: vec![1, 3, 0, 2], input_neg: 0b1100, output_neg: false };
        let c = NpnTransform { perm: vec![3, 2, 1, 0], input_neg: 0b0011, output_neg: true };
        let ab = a.then(&b);
        assert_eq!(ab.apply(&f).unwrap(), b.apply(&a.apply(&f).unwrap()).unwrap());
        assert_eq!(ab.then(&c), a.then(&b.then(&c)));
        assert_eq!(a.inverse().apply(&a.apply(&f).unwrap()).unwrap(), f);
        assert_eq!(a.then(&a.inverse()), NpnTransform::identity(4));
    }

    #[test]
    fn and_isomorphism_popcount_vs_orbit() {
        for n in 1..=4 {
            let orbit = and_orbit(n).unwrap();
            // n = 1 is degenerate: x1 and its negation
            assert_eq!(orbit.len(), if n == 1 { 2 } else { 2 << n });
            for code in 0u64..(1 << (1 << n)) {
                let f = TruthTable::from_u64(n, code);
                assert_eq!(is_and_isomorphic(&f), orbit.contains(&f));
            }
        }
    }

    #[test]
    fn arity_bound() {
        assert!(npn_canonical(&TruthTable::constant(7, false)).is_err());
    }

    #[test]
    fn large_symmetric_equivalence() {
        let th = families::threshold(8, 3);
        // weight <= 5 is Th^3 after negating every input
        let flipped = TruthTable::from_fn(8, |m| weight(m) <= 5);
        assert!(are_npn_equivalent(&flipped, &th).unwrap());
        assert!(!are_npn_equivalent(&families::exact(8, 3), &th).unwrap());
        assert!(are_npn_equivalent(&families::exact(8, 3), &families::exact(8, 5)).unwrap());
    }
}
