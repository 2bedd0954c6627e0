// SPDX-License-Identifier: Apache-2.0

use super::{merged, par_map, ReportBuilder, SuiteError, SuiteId, SuiteReport, Tally};
use crate::boolfun::{and_orbit, families, SymmetricProfile, MAX_NPN_ARITY};
use crate::synth::{verify_certificate, Synthesizer};

/// Expected 3-bit costs, one row per profile `b0 b1 b2 b3`, with the family
/// each row is isomorphic to (`None` for constants).
const THREE_BIT_COSTS: [(&str, u32, Option<Family>); 16] = [
    ("0000", 0, None),
    ("0001", 3, Some(Family::And)),
    ("0010", 2, Some(Family::Exact(2))),
    ("0011", 2, Some(Family::Th(2))),
    ("0100", 2, Some(Family::Exact(1))),
    ("0101", 2, Some(Family::Parity)),
    ("0110", 2, Some(Family::Nae)),
    ("0111", 3, Some(Family::And)),
    ("1000", 3, Some(Family::And)),
    ("1001", 2, Some(Family::Nae)),
    ("1010", 2, Some(Family::Parity)),
    ("1011", 2, Some(Family::Exact(1))),
    ("1100", 2, Some(Family::Th(2))),
    ("1101", 2, Some(Family::Exact(2))),
    ("1110", 3, Some(Family::And)),
    ("1111", 0, None),
];

#[derive(Debug, Clone, Copy)]
enum Family {
    And,
    Parity,
    Nae,
    Exact(usize),
    Th(usize),
    /// `EXACT_n^{n-1}` / `Th_n^{n-1}`, whose index depends on `n`.
    ExactTop,
    ThTop,
}

impl Family {
    fn profile(self, n: usize) -> SymmetricProfile {
        let t = match self {
            Family::And => families::and(n),
            Family::Parity => families::parity(n),
            Family::Nae => families::nae(n),
            Family::Exact(k) => families::exact(n, k),
            Family::Th(k) => families::threshold(n, k),
            Family::ExactTop => families::exact(n, n - 1),
            Family::ThTop => families::threshold(n, n - 1),
        };
        crate::boolfun::symmetric_profile(&t).expect("family is symmetric")
    }
}

/// Symmetric isomorphism: equal up to negating all inputs and/or the output.
fn sym_iso(p: &SymmetricProfile, q: &SymmetricProfile) -> bool {
    let r = q.reverse();
    [q.clone(), q.negate(), r.negate(), r].contains(p)
}

#[derive(Debug, Clone, Copy)]
enum Bound {
    Exactly(u32),
    Below(u32),
}

/// The sixteen `(k+1)`-bit rows, as functions of `k` building the vector
/// `b_0 .. b_{k+1}`, with family and cost bound.
fn pattern_rows(k: usize) -> Vec<(Vec<bool>, Family, Bound)> {
    let run = |b: bool, len: usize| vec![b; len];
    // the four k+1 patterns (0..0,1), (0,1..1), (1,0..0), (1..1,0)
    let pat = [
        [run(false, k), run(true, 1)].concat(),
        [run(false, 1), run(true, k)].concat(),
        [run(true, 1), run(false, k)].concat(),
        [run(true, k), run(false, 1)].concat(),
    ];
    let q = k as u32;
    let and = Bound::Exactly(q + 1);
    let mid = Bound::Exactly(q);
    let below = Bound::Below(q + 1);
    let suffixed = |b0: bool, i: usize| [run(b0, 1), pat[i].clone()].concat();
    let prefixed = |i: usize, last: bool| [pat[i].clone(), run(last, 1)].concat();
    vec![
        (suffixed(false, 0), Family::And, and),
        (suffixed(false, 1), Family::Th(2), mid),
        (suffixed(false, 2), Family::Exact(1), mid),
        (suffixed(false, 3), Family::Nae, below),
        (suffixed(true, 0), Family::Nae, below),
        (suffixed(true, 1), Family::Exact(1), mid),
        (suffixed(true, 2), Family::Th(2), mid),
        (suffixed(true, 3), Family::And, and),
        (prefixed(0, false), Family::ExactTop, mid),
        (prefixed(1, false), Family::Nae, below),
        (prefixed(2, false), Family::And, and),
        (prefixed(3, false), Family::ThTop, mid),
        (prefixed(0, true), Family::ThTop, mid),
        (prefixed(1, true), Family::And, and),
        (prefixed(2, true), Family::Nae, below),
        (prefixed(3, true), Family::ExactTop, mid),
    ]
}

fn profile_from_str(s: &str) -> SymmetricProfile {
    SymmetricProfile::new(s.bytes().map(|b| b == b'1').collect()).expect("valid profile")
}

/// Synthesizes and verifies every symmetric profile up to `max_n`, checking
/// that `n` queries are claimed exactly for the four AND-isomorphic vectors;
/// also replays the 3-bit table and the `(k+1)`-bit pattern table.
pub fn suite_symmetric_theorem1(max_n: usize) -> Result<SuiteReport, SuiteError> {
    let (min, _, max) = SuiteId::Theorem1.max_n_bounds().unwrap();
    if !(min..=max).contains(&max_n) {
        return Err(SuiteError::MaxN {
            suite: SuiteId::Theorem1,
            got: max_n,
            min,
            max,
        });
    }
    let mut report = ReportBuilder::new(
        SuiteId::Theorem1,
        format!("all symmetric profiles for n = 1..={max_n}"),
    );

    let items: Vec<(usize, u32)> = (1..=max_n)
        .flat_map(|n| (0..1u32 << (n + 1)).map(move |p| (n, p)))
        .collect();
    let tallies = par_map(items, Synthesizer::new, |s, (n, code)| {
        let p = SymmetricProfile::from_fn(n, |w| code >> w & 1 == 1);
        let f = p.to_table();
        let mut t = Tally::default();
        let c = s.certificate(&f);
        let input = || format!("n={n} profile ({p})");
        if let Err(e) = verify_certificate(&c) {
            t.check(false, || (input(), "verified certificate".into(), e.to_string()));
        } else {
            t.check(true, || unreachable!());
        }
        let and_iso = p.is_and_vector();
        let claimed = c.claimed_queries;
        let ok = if and_iso {
            claimed as usize == n && c.optimal
        } else {
            claimed as usize + 1 <= n
        };
        t.check(ok, || {
            let want = if and_iso { format!("{n} (optimal)") } else { format!("<= {}", n - 1) };
            (input(), want, claimed.to_string())
        });
        if p == Family::Parity.profile(n) {
            t.expect_eq(input(), n.div_ceil(2) as u32, claimed);
        }
        t
    });
    report.section("dichotomy", "every profile: cost n iff AND-isomorphic vector", merged(tallies));

    // the vector criterion against the transform orbit
    let mut t = Tally::default();
    for n in 1..=max_n.min(MAX_NPN_ARITY) {
        let orbit = and_orbit(n).expect("small arity");
        for code in 0..1u32 << (n + 1) {
            let p = SymmetricProfile::from_fn(n, |w| code >> w & 1 == 1);
            t.expect_eq(format!("n={n} profile ({p})"), orbit.contains(&p.to_table()), p.is_and_vector());
        }
    }
    report.section("and-vectors", "AND-vector test vs. orbit oracle, n <= 6", t);

    let mut s = Synthesizer::new();
    let mut t = Tally::default();
    for (bits, cost, family) in THREE_BIT_COSTS {
        let p = profile_from_str(bits);
        let c = s.certificate(&p.to_table());
        t.expect_eq(format!("3-bit row {bits}"), cost, c.claimed_queries);
        let class_ok = match family {
            None => p.to_table().is_constant(),
            Some(fam) => sym_iso(&p, &fam.profile(3)),
        };
        t.check(class_ok, || (format!("3-bit row {bits}"), format!("{family:?}"), "other class".into()));
    }
    report.section("table-3bit", "the 16 symmetric 3-bit profiles", t);

    let mut t = Tally::default();
    for k in 3..max_n.max(3) {
        for (bits, family, bound) in pattern_rows(k) {
            let p = SymmetricProfile::new(bits).expect("length k + 2");
            let input = || format!("k={k} vector ({p})");
            t.check(sym_iso(&p, &family.profile(k + 1)), || {
                (input(), format!("{family:?}"), "other class".into())
            });
            let c = s.certificate(&p.to_table());
            let (ok, want) = match bound {
                Bound::Exactly(q) => (c.claimed_queries == q, q.to_string()),
                Bound::Below(q) => (c.claimed_queries < q, format!("< {q}")),
            };
            t.check(ok, || (input(), want, c.claimed_queries.to_string()));
        }
    }
    report.section(
        "table-pattern",
        format!("the 16 (k+1)-bit pattern rows, k = 3..{}", max_n.max(3) - 1),
        t,
    );
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let r = suite_symmetric_theorem1(6).unwrap();
        assert!(r.ok(), "{}", r.render_human());
        assert_eq!(r.section("table-3bit").unwrap().checked, 32);
        assert_eq!(r.section("table-pattern").unwrap().checked, 16 * 2 * 3);
    }

    #[test]
    fn pattern_rows_are_distinct_sixteen() {
        let rows = pattern_rows(4);
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().all(|(b, _, _)| b.len() == 6));
    }

    #[test]
    fn table_rows_match_vectors() {
        let f = profile_from_str("0001").to_table();
        assert_eq!(f, families::and(3));
    }
}
