// SPDX-License-Identifier: Apache-2.0

//! Named function families used throughout the toolkit.

use super::{weight, TruthTable};

fn by_weight(n: usize, f: impl Fn(usize) -> bool) -> TruthTable {
    TruthTable::from_fn(n, |m| f(weight(m)))
}

pub fn and(n: usize) -> TruthTable {
    by_weight(n, |w| w == n)
}

pub fn or(n: usize) -> TruthTable {
    by_weight(n, |w| w >= 1)
}

pub fn parity(n: usize) -> TruthTable {
    by_weight(n, |w| w % 2 == 1)
}

/// Not-all-equal: 1 iff some two bits differ.
pub fn nae(n: usize) -> TruthTable {
    by_weight(n, |w| w != 0 && w != n)
}

/// `EXACT_n^k`: 1 iff exactly `k` bits are set.
pub fn exact(n: usize, k: usize) -> TruthTable {
    by_weight(n, |w| w == k)
}

/// `Th_n^k`: 1 iff at least `k` bits are set.
pub fn threshold(n: usize, k: usize) -> TruthTable {
    by_weight(n, |w| w >= k)
}

/// `x1 AND (x2 OR x3)`.
pub fn and_or3() -> TruthTable {
    TruthTable::from_fn(3, |m| m & 1 == 1 && m & 0b110 != 0)
}

/// `(x1 == x2) AND NOT (x2 AND x3)`: the 3-bit class whose 2-query exact
/// algorithm needs a genuinely quantum block.
pub fn eq_nand3() -> TruthTable {
    TruthTable::from_fn(3, |m| {
        let (a, b, c) = (m & 1, m >> 1 & 1, m >> 2 & 1);
        a == b && !(b == 1 && c == 1)
    })
}
