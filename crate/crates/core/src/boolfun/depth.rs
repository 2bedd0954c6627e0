// SPDX-License-Identifier: Apache-2.0

use rustc_hash::FxHashMap;

use super::{BoolFunError, TruthTable};

pub const MAX_DEPTH_ARITY: usize = 12;

/// Memoized decision-tree depth search.
///
/// `D(f) = 0` for constants, otherwise `min_i 1 + max(D(f_{x_i=0}), D(f_{x_i=1}))`.
/// Sub-functions are reduced to their live variables and memoized by table
/// value, so restrictions that coincide share one entry.
#[derive(Default)]
pub struct DepthSolver {
    memo: FxHashMap<TruthTable, u32>,
    evasive: FxHashMap<TruthTable, bool>,
}

impl DepthSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn depth(&mut self, f: &TruthTable) -> Result<u32, BoolFunError> {
        if f.arity() > MAX_DEPTH_ARITY {
            return Err(BoolFunError::ArityTooLarge {
                arity: f.arity(),
                max: MAX_DEPTH_ARITY,
            });
        }
        Ok(self.solve(f.reduce().0))
    }

    fn solve(&mut self, g: TruthTable) -> u32 {
        if g.is_constant() {
            return 0;
        }
        if let Some(&d) = self.memo.get(&g) {
            return d;
        }
        let n = g.arity() as u32;
        // most functions are evasive, and that needs one witness branch per
        // variable instead of the full minimax
        if self.is_evasive(&g) {
            self.memo.insert(g, n);
            return n;
        }
        let mut best = n;
        for p in 0..g.arity() {
            if best == 1 {
                break;
            }
            let c0 = self.solve(g.restrict_pos(p, false).reduce().0);
            if c0 + 1 >= best {
                continue;
            }
            let c1 = self.solve(g.restrict_pos(p, true).reduce().0);
            best = best.min(1 + c0.max(c1));
        }
        self.memo.insert(g, best);
        best
    }

    /// `D(g) = n` for a reduced `g`: every variable has a restriction that is
    /// itself reduced-evasive on the remaining `n - 1` variables.
    fn is_evasive(&mut self, g: &TruthTable) -> bool {
        let n = g.arity();
        if n <= 1 {
            return true;
        }
        if let Some(&e) = self.evasive.get(g) {
            return e;
        }
        let e = (0..n).all(|p| {
            [false, true].into_iter().any(|b| {
                let (r, live) = g.restrict_pos(p, b).reduce();
                live.len() == n - 1 && self.is_evasive(&r)
            })
        });
        self.evasive.insert(g.clone(), e);
        e
    }
}

/// `D(f)` for `n <= 12`.
pub fn decision_tree_depth(f: &TruthTable) -> Result<u32, BoolFunError> {
    DepthSolver::new().depth(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::families;

    /// Unmemoized brute force over all trees.
    fn brute(f: &TruthTable) -> u32 {
        if f.is_constant() {
            return 0;
        }
        (0..f.arity())
            .map(|p| 1 + brute(&f.restrict_pos(p, false)).max(brute(&f.restrict_pos(p, true))))
            .min()
            .unwrap()
    }

    #[test]
    fn constants_and_named() {
        assert_eq!(decision_tree_depth(&TruthTable::constant(5, true)).unwrap(), 0);
        assert_eq!(decision_tree_depth(&families::and(6)).unwrap(), 6);
        assert_eq!(decision_tree_depth(&TruthTable::var(4, 2).unwrap()).unwrap(), 1);
        // mux x1 ? x3 : x2
        let mux = TruthTable::from_fn(3, |m| if m & 1 == 1 { m & 4 != 0 } else { m & 2 != 0 });
        assert_eq!(decision_tree_depth(&mux).unwrap(), 2);
    }

    #[test]
    fn matches_brute_force_on_all_3bit_and_sampled_4bit() {
        for code in 0u64..256 {
            let f = TruthTable::from_u64(3, code);
            assert_eq!(decision_tree_depth(&f).unwrap(), brute(&f));
        }
        for code in (0u64..65536).step_by(37) {
            let f = TruthTable::from_u64(4, code);
            assert_eq!(decision_tree_depth(&f).unwrap(), brute(&f));
        }
    }

    #[test]
    fn arity_bound() {
        assert!(decision_tree_depth(&TruthTable::constant(13, false)).is_err());
    }
}
