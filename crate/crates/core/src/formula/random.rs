// SPDX-License-Identifier: Apache-2.0

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Formula;

/// Random read-once formula on `x1..xn`, deterministic per seed.
///
/// The tree shape splits `k` leaves into `j` and `k - j` with `j` uniform in
/// `1..k`; each gate is AND or OR and each leaf is negated with probability
/// one half; variables are placed by a random permutation.
pub fn random_read_once(n: usize, seed: u64) -> Formula {
    assert!(n >= 1, "need at least one variable");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars: Vec<usize> = (1..=n).collect();
    vars.shuffle(&mut rng);
    let mut next = vars.into_iter();
    build(n, &mut rng, &mut next)
}

fn build(leaves: usize, rng: &mut ChaCha8Rng, vars: &mut impl Iterator<Item = usize>) -> Formula {
    if leaves == 1 {
        return Formula::lit(vars.next().unwrap(), rng.gen_bool(0.5));
    }
    let left = rng.gen_range(1..leaves);
    let is_and = rng.gen_bool(0.5);
    let a = build(left, rng, vars);
    let b = build(leaves - left, rng, vars);
    if is_and {
        Formula::and([a, b])
    } else {
        Formula::or([a, b])
    }
}
