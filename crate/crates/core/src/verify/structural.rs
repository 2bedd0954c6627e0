// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::{par_map, ReportBuilder, SuiteConfig, SuiteId, SuiteReport, Tally};
use crate::boolfun::{and_orbit, families, NpnTransform, TruthTable};
use crate::synth::Synthesizer;

pub const N5_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    And,
    Or,
}

/// `AND_m` / `OR_m` of literals, keyed by table, with the negation mask
/// (bit `k` set: variable at position `k` negated).
fn literal_forms(m: usize) -> FxHashMap<TruthTable, (Kind, u32)> {
    let mut forms = FxHashMap::default();
    for (kind, base) in [(Kind::And, families::and(m)), (Kind::Or, families::or(m))] {
        for mask in 0..1u32 << m {
            let t = NpnTransform {
                perm: (0..m).collect(),
                input_neg: mask,
                output_neg: false,
            };
            forms.insert(t.apply(&base).expect("same arity"), (kind, mask));
        }
    }
    forms
}

/// Context for one arity `n`.
struct Arity {
    n: usize,
    forms: FxHashMap<TruthTable, (Kind, u32)>,
    orbit: HashSet<TruthTable>,
    sub_orbit: HashSet<TruthTable>,
}

impl Arity {
    fn new(n: usize) -> Self {
        Self {
            n,
            forms: literal_forms(n - 1),
            orbit: and_orbit(n).expect("n <= 6"),
            sub_orbit: and_orbit(n - 1).expect("n <= 6"),
        }
    }

    /// `r[i-1][b]`: literal form of `f_{x_i=b}`, if any.
    fn restrictions(&self, f: &TruthTable) -> Vec<[Option<(Kind, u32)>; 2]> {
        (1..=self.n)
            .map(|i| [false, true].map(|b| self.forms.get(&f.restrict(i, b).unwrap()).copied()))
            .collect()
    }
}

/// Whether original variable `v` is negated in the mask of `f_{x_i=.}`.
fn negated(mask: u32, i: usize, v: usize) -> bool {
    let pos = if v < i { v - 1 } else { v - 2 };
    mask >> pos & 1 == 1
}

#[derive(Default)]
struct Checks {
    lm8: Tally,
    and_or: Tally,
    lm7: Tally,
    c6l1: Tally,
    both: Tally,
}

impl Checks {
    fn merge(&mut self, o: Checks) {
        self.lm8.merge(o.lm8);
        self.and_or.merge(o.and_or);
        self.lm7.merge(o.lm7);
        self.c6l1.merge(o.c6l1);
        self.both.merge(o.both);
    }
}

/// Table-level checks of the structural lemmas on one function.
fn check(ctx: &Arity, s: &mut Synthesizer, f: &TruthTable) -> Checks {
    let n = ctx.n;
    let mut out = Checks::default();
    let input = || f.to_string();

    // four distinct inputs with two ones and two zeros rule out AND-isomorphism
    let ones = f.count_ones();
    if ones >= 2 && f.len() - ones >= 2 {
        out.lm8.check(!ctx.orbit.contains(f), || {
            (input(), "not AND-isomorphic".into(), "in the AND orbit".into())
        });
    }

    let r = ctx.restrictions(f);

    // an AND-form restriction excludes every OR-form restriction on another
    // variable, and vice versa
    for i in 0..n {
        for b in 0..2 {
            let Some((kind, _)) = r[i][b] else { continue };
            let clash = (0..n)
                .filter(|&j| j != i)
                .flat_map(|j| (0..2).map(move |c| (j, c)))
                .find(|&(j, c)| matches!(r[j][c], Some((k, _)) if k != kind));
            out.and_or.check(clash.is_none(), || {
                let (j, c) = clash.unwrap();
                (
                    format!("{} with f|x{}={b} {kind:?}-form", input(), i + 1),
                    "no opposite form on other variables".into(),
                    format!("f|x{}={c} is the opposite form", j + 1),
                )
            });
        }
    }

    // every zero-restriction an OR of literals: the forced sign pattern
    let or_masks: Option<Vec<u32>> = r
        .iter()
        .map(|rb| match rb[0] {
            Some((Kind::Or, m)) => Some(m),
            _ => None,
        })
        .collect();
    if let Some(m) = or_masks {
        for a in 1..=n {
            for b in (1..=n).filter(|&b| b != a) {
                for c in (1..=n).filter(|&c| c != a && c != b) {
                    if negated(m[a - 1], a, b) || !negated(m[a - 1], a, c) {
                        continue;
                    }
                    let got = [
                        negated(m[b - 1], b, a),
                        negated(m[b - 1], b, c),
                        negated(m[c - 1], c, a),
                        negated(m[c - 1], c, b),
                    ];
                    out.lm7.check(got == [false, true, true, true], || {
                        (
                            format!("{} roles ({a},{b},{c})", input()),
                            "signs [+x_a,-x_c] in f|x_b=0 and [-x_a,-x_b] in f|x_c=0".into(),
                            format!("{got:?}"),
                        )
                    });
                }
            }
        }
    }

    // restrictions that are cheap, or both AND-isomorphic, force cost < n
    let costs: Vec<[u32; 2]> = (1..=n)
        .map(|i| [false, true].map(|b| s.cost(&f.restrict(i, b).unwrap())))
        .collect();
    let cheap = costs.iter().any(|c| c.iter().all(|&q| (q as usize) < n - 1));
    let both = (1..=n).any(|i| {
        [false, true]
            .iter()
            .all(|&b| ctx.sub_orbit.contains(&f.restrict(i, b).unwrap()))
    });
    if cheap || both {
        let q = s.cost(f);
        if cheap {
            out.c6l1.check((q as usize) < n, || (input(), format!("< {n}"), q.to_string()));
        }
        if both {
            out.both.check((q as usize) < n, || (input(), format!("< {n}"), q.to_string()));
        }
    }
    out
}

/// AND-isomorphic `f`: exactly one `b` makes every `f_{x_i=b_i}` the same
/// kind of literal form.
fn unique_witness(ctx: &Arity, f: &TruthTable) -> Vec<u32> {
    let r = ctx.restrictions(f);
    (0..1u32 << ctx.n)
        .filter(|&b| {
            [Kind::And, Kind::Or].into_iter().any(|kind| {
                (0..ctx.n).all(|i| matches!(r[i][(b >> i & 1) as usize], Some((k, _)) if k == kind))
            })
        })
        .collect()
}

/// Tables whose zero-restrictions are all ORs of literals, from set
/// partitions of the variables: one zero per block, plus a free top value.
fn lm7_candidates(n: usize) -> Vec<TruthTable> {
    let full = (1usize << n) - 1;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let blocks = labels.iter().max().unwrap() + 1;
        let zeros: Vec<usize> = (0..blocks)
            .map(|k| full & !(0..n).filter(|&v| labels[v] == k).fold(0, |m, v| m | 1 << v))
            .collect();
        for top in [false, true] {
            out.push(TruthTable::from_fn(n, |x| {
                if x == full {
                    top
                } else {
                    !zeros.contains(&x)
                }
            }));
        }
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let cap = labels[..i].iter().max().unwrap() + 1;
            if labels[i] < cap {
                labels[i] += 1;
                labels[i + 1..].iter_mut().for_each(|l| *l = 0);
                break;
            }
            i -= 1;
        }
    }
}

/// Combinatorial content of the structural lemmas on truth tables: all
/// 4-bit functions, a seeded sample of 5-bit functions, the 5-bit premise
/// candidates of the sign-pattern lemma, and the AND orbits.
pub fn suite_structural_lemmas(config: &SuiteConfig) -> SuiteReport {
    let samples = config.samples(N5_SAMPLES);
    let mut report = ReportBuilder::new(
        SuiteId::Structural,
        format!("n=4 exhaustive; n=5: {samples} sampled tables, sign-pattern candidates, AND orbit"),
    );
    let a4 = Arity::new(4);
    let a5 = Arity::new(5);

    let mut all = Checks::default();
    let codes: Vec<u64> = (0..1u64 << 16).collect();
    for c in par_map(codes, Synthesizer::new, |s, code| check(&a4, s, &TruthTable::from_u64(4, code))) {
        all.merge(c);
    }
    let seed = config.stream(0x5_7A1C);
    let chunks = 64;
    let items: Vec<usize> = (0..chunks).collect();
    let sampled = par_map(items, Synthesizer::new, |s, chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let mut acc = Checks::default();
        let count = samples / chunks + usize::from(chunk < samples % chunks);
        for _ in 0..count {
            let f = TruthTable::from_u64(5, rng.gen::<u32>() as u64);
            acc.merge(check(&a5, s, &f));
        }
        acc
    });
    for c in sampled {
        all.merge(c);
    }
    let candidates = lm7_candidates(5);
    let mut s = Synthesizer::new();
    for f in &candidates {
        all.merge(check(&a5, &mut s, f));
    }

    let pop = format!("n=4 all tables; n=5 {samples} sampled + {} candidates", candidates.len());
    report.section("lm-8", pop.clone(), all.lm8);
    report.section("lm-and-or", pop.clone(), all.and_or);
    report.section("lm-7", pop.clone(), all.lm7);
    report.section("c6-l1", pop.clone(), all.c6l1);
    report.section("lm-both", pop, all.both);

    let mut t = Tally::default();
    for ctx in [&a4, &a5] {
        let mut orbit: Vec<&TruthTable> = ctx.orbit.iter().collect();
        orbit.sort_by_key(|f| f.words().to_vec());
        for f in orbit {
            let w = unique_witness(ctx, f);
            t.expect_eq(f, 1, w.len());
        }
    }
    // the OR example: the witness is all zeros
    t.expect_eq("OR_4 witness", "[0]".to_string(), format!("{:?}", unique_witness(&a4, &families::or(4))));
    report.section("lm-c7-1", "AND orbits at n=4 and n=5: unique witness b", t);

    report.metric("n5_samples", samples as u64);
    report.metric("lm7_candidates_n5", candidates.len() as u64);
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_forms_are_orbit() {
        let forms = literal_forms(3);
        assert_eq!(forms.len(), 16);
        let orbit = and_orbit(3).unwrap();
        assert!(forms.keys().all(|f| orbit.contains(f)));
        assert_eq!(orbit.len(), 16);
    }

    #[test]
    fn candidates_meet_the_premise() {
        let ctx = Arity::new(4);
        let c = lm7_candidates(4);
        // Bell(4) partitions, two top values each
        assert_eq!(c.len(), 30);
        for f in &c {
            assert!(ctx.restrictions(f).iter().all(|r| matches!(r[0], Some((Kind::Or, _)))), "{f}");
        }
    }

    #[test]
    fn small_sample_passes() {
        let r = suite_structural_lemmas(&SuiteConfig {
            samples: Some(200),
            ..Default::default()
        });
        assert!(r.ok(), "{}", r.render_human());
        assert!(r.section("lm-7").unwrap().checked > 0);
        assert_eq!(r.section("lm-c7-1").unwrap().checked, 32 + 64 + 1);
    }
}
