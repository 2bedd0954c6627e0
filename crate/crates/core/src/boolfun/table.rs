// SPDX-License-Identifier: Apache-2.0

//! Packed truth tables.
//!
//! A function `f: {0,1}^n -> {0,1}` is stored as `2^n` bits. Entry `m` is the
//! value of `f` on the input whose variable `x_i` equals bit `i - 1` of `m`,
//! so `x1` is the least-significant selector bit and toggles fastest.
//!
//! Variables are numbered from 1 in the public API. Restricting or collapsing
//! a variable removes it and renumbers the survivors `1..n-1` in their
//! original relative order.

use std::fmt;

use super::BoolFunError;

/// Largest arity a table may have.
pub const MAX_ARITY: usize = 20;

/// `MASKS[p]` selects the positions whose bit `p` is zero.
pub(crate) const MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Projection tables `x_{p+1}` restricted to one 64-bit word.
pub(crate) const VAR_WORDS: [u64; 6] = [
    !MASKS[0],
    !MASKS[1],
    !MASKS[2],
    !MASKS[3],
    !MASKS[4],
    !MASKS[5],
];

#[inline]
pub(crate) fn len_mask(arity: usize) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << arity)) - 1
    }
}

#[inline]
fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

/// Packs the selected half of a word (entries with bit `p` equal to `b`) into
/// its low 32 bits.
#[inline]
fn compress_word(w: u64, p: usize, b: bool) -> u64 {
    let s = 1u32 << p;
    let mut w = if b { w >> s } else { w } & MASKS[p];
    for q in p..5 {
        w = (w | (w >> (1u32 << q))) & MASKS[q + 1];
    }
    w
}

/// Truth table of an `n`-bit Boolean function.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: u8,
    words: Vec<u64>,
}

impl TruthTable {
    fn zeroed(arity: usize) -> Self {
        assert!(arity <= MAX_ARITY, "arity {arity} exceeds {MAX_ARITY}");
        Self {
            arity: arity as u8,
            words: vec![0; word_count(arity)],
        }
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        let mut t = Self::zeroed(arity);
        if value {
            let m = len_mask(arity);
            t.words.iter_mut().for_each(|w| *w = m);
        }
        t
    }

    /// The projection `x_var` on `arity` variables.
    pub fn var(arity: usize, var: usize) -> Result<Self, BoolFunError> {
        check_var(var, arity)?;
        Ok(Self::var_pos(arity, var - 1))
    }

    pub(crate) fn var_pos(arity: usize, p: usize) -> Self {
        let mut t = Self::zeroed(arity);
        if p < 6 {
            let m = VAR_WORDS[p] & len_mask(arity);
            t.words.iter_mut().for_each(|w| *w = m);
        } else {
            let q = p - 6;
            for (k, w) in t.words.iter_mut().enumerate() {
                if (k >> q) & 1 == 1 {
                    *w = u64::MAX;
                }
            }
        }
        t
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut t = Self::zeroed(arity);
        for m in 0..(1usize << arity) {
            if f(m) {
                t.words[m >> 6] |= 1 << (m & 63);
            }
        }
        t
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, BoolFunError> {
        let arity = arity_for_len(bits.len())?;
        Ok(Self::from_fn(arity, |m| bits[m]))
    }

    /// Builds a table of arity at most 6 from its packed word.
    pub fn from_u64(arity: usize, word: u64) -> Self {
        assert!(arity <= 6, "from_u64 needs arity <= 6");
        Self {
            arity: arity as u8,
            words: vec![word & len_mask(arity)],
        }
    }

    pub fn from_words(arity: usize, words: Vec<u64>) -> Self {
        assert!(arity <= MAX_ARITY);
        assert_eq!(words.len(), word_count(arity));
        let mut t = Self {
            arity: arity as u8,
            words,
        };
        t.words[0] &= len_mask(arity);
        t
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Number of entries, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed word for arity at most 6.
    pub fn as_u64(&self) -> Option<u64> {
        (self.arity <= 6).then(|| self.words[0])
    }

    #[inline]
    pub fn get(&self, m: usize) -> bool {
        debug_assert!(m < self.len());
        (self.words[m >> 6] >> (m & 63)) & 1 == 1
    }

    pub fn set(&mut self, m: usize, value: bool) {
        assert!(m < self.len());
        let bit = 1u64 << (m & 63);
        if value {
            self.words[m >> 6] |= bit;
        } else {
            self.words[m >> 6] &= !bit;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |m| self.get(m))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn constant_value(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            c if c == self.len() => Some(true),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn not(&self) -> Self {
        let m = len_mask(self.arity());
        Self {
            arity: self.arity,
            words: self.words.iter().map(|w| !w & m).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self, BoolFunError> {
        if self.arity != other.arity {
            return Err(BoolFunError::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(Self {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn and(&self, other: &Self) -> Result<Self, BoolFunError> {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Result<Self, BoolFunError> {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Self) -> Result<Self, BoolFunError> {
        self.zip(other, |a, b| a ^ b)
    }

    /// `f_{x_var = value}` on the remaining `n - 1` variables.
    pub fn restrict(&self, var: usize, value: bool) -> Result<Self, BoolFunError> {
        check_var(var, self.arity())?;
        Ok(self.restrict_pos(var - 1, value))
    }

    pub(crate) fn restrict_pos(&self, p: usize, b: bool) -> Self {
        let n = self.arity();
        debug_assert!(p < n);
        let out_arity = n - 1;
        if n <= 6 {
            return Self {
                arity: out_arity as u8,
                words: vec![compress_word(self.words[0], p, b) & len_mask(out_arity)],
            };
        }
        let words = if p >= 6 {
            let q = p - 6;
            self.words
                .iter()
                .enumerate()
                .filter(|(k, _)| ((k >> q) & 1 == 1) == b)
                .map(|(_, &w)| w)
                .collect()
        } else {
            self.words
                .chunks_exact(2)
                .map(|pair| compress_word(pair[0], p, b) | (compress_word(pair[1], p, b) << 32))
                .collect()
        };
        Self {
            arity: out_arity as u8,
            words,
        }
    }

    /// Shannon recombination: the `n + 1`-bit function equal to `low` when the
    /// new variable (inserted at position `var`) is 0 and `high` when it is 1.
    pub fn shannon_combine(var: usize, low: &Self, high: &Self) -> Result<Self, BoolFunError> {
        if low.arity != high.arity {
            return Err(BoolFunError::ArityMismatch {
                left: low.arity(),
                right: high.arity(),
            });
        }
        let n = low.arity() + 1;
        check_var(var, n)?;
        let p = var - 1;
        let below = (1usize << p) - 1;
        Ok(Self::from_fn(n, |m| {
            let rest = (m & below) | ((m >> (p + 1)) << p);
            if (m >> p) & 1 == 1 {
                high.get(rest)
            } else {
                low.get(rest)
            }
        }))
    }

    pub fn depends_on(&self, var: usize) -> Result<bool, BoolFunError> {
        check_var(var, self.arity())?;
        Ok(self.depends_on_pos(var - 1))
    }

    pub(crate) fn depends_on_pos(&self, p: usize) -> bool {
        if p < 6 {
            let s = 1u32 << p;
            let m = len_mask(self.arity());
            self.words
                .iter()
                .any(|&w| ((w >> s) ^ w) & MASKS[p] & m != 0)
        } else {
            let stride = 1usize << (p - 6);
            self.words
                .iter()
                .enumerate()
                .filter(|(k, _)| k & stride == 0)
                .any(|(k, &w)| w != self.words[k | stride])
        }
    }

    /// Variables (1-based) the function actually depends on.
    pub fn live_vars(&self) -> Vec<usize> {
        (0..self.arity())
            .filter(|&p| self.depends_on_pos(p))
            .map(|p| p + 1)
            .collect()
    }

    /// Drops every variable the function ignores. Returns the reduced table
    /// and, for each of its variables, the 1-based index it had in `self`.
    pub fn reduce(&self) -> (Self, Vec<usize>) {
        let live = self.live_vars();
        if live.len() == self.arity() {
            return (self.clone(), live);
        }
        let mut t = self.clone();
        for p in (0..self.arity()).rev() {
            if !live.contains(&(p + 1)) {
                t = t.restrict_pos(p, false);
            }
        }
        (t, live)
    }

    /// Substitutes `x_j = x_i XOR c` and drops `x_j`. The result has `n - 1`
    /// variables; `x_i` keeps its identity (renumbered if `j < i`).
    pub fn xor_collapse(&self, i: usize, j: usize, c: bool) -> Result<Self, BoolFunError> {
        check_var(i, self.arity())?;
        check_var(j, self.arity())?;
        if i == j {
            return Err(BoolFunError::SameVariable(i));
        }
        Ok(self.xor_collapse_pos(i - 1, j - 1, c))
    }

    pub(crate) fn xor_collapse_pos(&self, pi: usize, pj: usize, c: bool) -> Self {
        let f0 = self.restrict_pos(pj, false);
        let f1 = self.restrict_pos(pj, true);
        let pi2 = if pi < pj { pi } else { pi - 1 };
        // x_j = 1 exactly where x_i != c
        let sel = Self::var_pos(self.arity() - 1, pi2);
        let sel = if c { sel.not() } else { sel };
        let m = len_mask(f0.arity());
        let words = f0
            .words
            .iter()
            .zip(&f1.words)
            .zip(&sel.words)
            .map(|((&a, &b), &s)| ((a & !s) | (b & s)) & m)
            .collect();
        Self {
            arity: f0.arity,
            words,
        }
    }

    /// Renders the table as `bin:` text, entry 0 first.
    pub fn to_bin_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Renders as `hex:` payload: digit `k` packs entries `4k..4k+3`, entry
    /// `4k` in the digit's least-significant bit. Needs arity at least 2.
    pub fn to_hex_string(&self) -> Option<String> {
        if self.arity() < 2 {
            return None;
        }
        Some(
            (0..self.len() / 4)
                .map(|k| {
                    let d = (0..4).fold(0u32, |acc, b| acc | (u32::from(self.get(4 * k + b)) << b));
                    char::from_digit(d, 16).unwrap()
                })
                .collect(),
        )
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}:{})", self.arity, self.to_bin_string())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bin:{}", self.to_bin_string())
    }
}

/// Serialized as its `bin:` text form.
impl serde::Serialize for TruthTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for TruthTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = <std::borrow::Cow<'de, str>>::deserialize(d)?;
        super::parse_function(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_var(var: usize, arity: usize) -> Result<(), BoolFunError> {
    if var == 0 || var > arity {
        Err(BoolFunError::VariableOutOfRange { var, arity })
    } else {
        Ok(())
    }
}

pub(crate) fn arity_for_len(len: usize) -> Result<usize, BoolFunError> {
    if len == 0 || !len.is_power_of_two() {
        return Err(BoolFunError::BadLength(len));
    }
    let arity = len.trailing_zeros() as usize;
    if arity > MAX_ARITY {
        return Err(BoolFunError::ArityTooLarge {
            arity,
            max: MAX_ARITY,
        });
    }
    Ok(arity)
}

/// Hamming weight of an input code.
#[inline]
pub fn weight(m: usize) -> usize {
    m.count_ones() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_restrict(f: &TruthTable, p: usize, b: bool) -> TruthTable {
        let below = (1usize << p) - 1;
        TruthTable::from_fn(f.arity() - 1, |m| {
            let full = (m & below) | ((m >> p) << (p + 1)) | (usize::from(b) << p);
            f.get(full)
        })
    }

    fn pseudo_random(arity: usize, seed: u64) -> TruthTable {
        let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        TruthTable::from_fn(arity, |_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s & 1 == 1
        })
    }

    #[test]
    fn restrict_and2_gives_identity() {
        let and2 = TruthTable::from_bits(&[false, false, false, true]).unwrap();
        let r = and2.restrict(1, true).unwrap();
        assert_eq!(r, TruthTable::var(1, 1).unwrap());
        assert_eq!(and2.restrict(1, false).unwrap(), TruthTable::constant(1, false));
    }

    #[test]
    fn restrict_matches_naive_across_word_boundaries() {
        for n in 1..=9 {
            for seed in 0..4 {
                let f = pseudo_random(n, seed * 31 + n as u64);
                for p in 0..n {
                    for b in [false, true] {
                        assert_eq!(f.restrict_pos(p, b), naive_restrict(&f, p, b), "n={n} p={p} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_rejects_bad_index() {
        let f = TruthTable::constant(3, true);
        assert!(matches!(
            f.restrict(0, false),
            Err(BoolFunError::VariableOutOfRange { var: 0, arity: 3 })
        ));
        assert!(f.restrict(4, false).is_err());
    }

    #[test]
    fn dead_variables_are_found() {
        // f = x1 xor x3 on 4 variables
        let f = TruthTable::from_fn(4, |m| (m & 1) ^ ((m >> 2) & 1) == 1);
        assert_eq!(f.live_vars(), vec![1, 3]);
        let (g, map) = f.reduce();
        assert_eq!(map, vec![1, 3]);
        assert_eq!(g, TruthTable::from_bits(&[false, true, true, false]).unwrap());
        let big = TruthTable::var_pos(9, 7);
        assert_eq!(big.live_vars(), vec![8]);
    }

    #[test]
    fn xor_collapse_substitutes() {
        for n in 2..=8 {
            let f = pseudo_random(n, 77 + n as u64);
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for c in [false, true] {
                        let g = f.xor_collapse_pos(i, j, c);
                        let i2 = if i < j { i } else { i - 1 };
                        for y in 0..(1usize << (n - 1)) {
                            let xi = (y >> i2) & 1;
                            let xj = xi ^ usize::from(c);
                            let below = (1usize << j) - 1;
                            let x = (y & below) | ((y >> j) << (j + 1)) | (xj << j);
                            assert_eq!(g.get(y), f.get(x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hex_and_bin_render() {
        let and2 = TruthTable::from_bits(&[false, false, false, true]).unwrap();
        assert_eq!(and2.to_string(), "bin:0001");
        assert_eq!(and2.to_hex_string().unwrap(), "8");
    }
}
