// SPDX-License-Identifier: Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{merged, par_map, ReportBuilder, SuiteConfig, SuiteError, SuiteId, SuiteReport, Tally};
use crate::boolfun::{multilinear, DepthSolver, SymmetricProfile, TruthTable};
use crate::formula::random_read_once;

pub const READ_ONCE_PER_ARITY: usize = 1000;
pub const LEMMA1_SAMPLES: usize = 100_000;
const LEMMA1_MAX_ARITY: usize = 10;
const READ_ONCE_MIN_ARITY: usize = 4;

/// `D(f) = n` for every non-constant symmetric `f` with `n <= max_n`;
/// `D(f) = n` and `deg(f) = n` with top coefficient `±1` for random read-once
/// formulas; and `D(f) >= deg(f)` on those populations plus random tables.
pub fn suite_classical_depth(max_n: usize, config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let (min, _, max) = SuiteId::ClassicalDepth.max_n_bounds().unwrap();
    if !(min..=max).contains(&max_n) {
        return Err(SuiteError::MaxN {
            suite: SuiteId::ClassicalDepth,
            got: max_n,
            min,
            max,
        });
    }
    let per_arity = config.samples(READ_ONCE_PER_ARITY);
    let lemma1 = config.samples(LEMMA1_SAMPLES);
    let mut report = ReportBuilder::new(
        SuiteId::ClassicalDepth,
        format!(
            "symmetric n <= {max_n}; {per_arity} read-once formulas per n in {READ_ONCE_MIN_ARITY}..={max_n}; \
             {lemma1} random tables n <= {}",
            max_n.min(LEMMA1_MAX_ARITY)
        ),
    );

    // symmetric: one solver per worker, reused across profiles of one arity
    let items: Vec<(usize, u32)> = (1..=max_n)
        .flat_map(|n| (1..(1u32 << (n + 1)) - 1).map(move |p| (n, p)))
        .collect();
    let out = par_map(items, DepthSolver::new, |s, (n, code)| {
        let p = SymmetricProfile::from_fn(n, |w| code >> w & 1 == 1);
        let f = p.to_table();
        let mut depth = Tally::default();
        let mut lemma = Tally::default();
        let d = s.depth(&f).expect("n <= 12");
        depth.expect_eq(format!("profile ({p})"), n as u32, d);
        lemma_one(&mut lemma, &f, d, || format!("profile ({p})"));
        (depth, lemma)
    });
    let (depth, lemma): (Vec<_>, Vec<_>) = out.into_iter().unzip();
    report.section(
        "symmetric-depth",
        format!("non-constant symmetric profiles, n = 1..={max_n}"),
        merged(depth),
    );
    report.section("lemma1", "D(f) >= deg(f)", merged(lemma));

    // read-once: fresh solver per formula keeps memory flat
    let items: Vec<(usize, usize)> = (READ_ONCE_MIN_ARITY..=max_n)
        .flat_map(|n| (0..per_arity).map(move |i| (n, i)))
        .collect();
    let out = par_map(
        items,
        || (),
        |_, (n, i)| {
            let seed = config.stream(0x5EAD_0000 + n as u64) ^ i as u64;
            let formula = random_read_once(n, seed);
            let input = || format!("n={n} seed={seed} formula {formula}");
            let mut t = Tally::default();
            let mut lemma = Tally::default();
            let f = formula.to_truth_table_with_arity(n).expect("n <= 12");
            t.check(formula.is_read_once(n), || (input(), "read-once".into(), "not read-once".into()));
            let d = DepthSolver::new().depth(&f).expect("n <= 12");
            t.expect_eq(input(), n as u32, d);
            let poly = multilinear(&f).expect("n <= 12");
            t.expect_eq(input(), n, poly.degree());
            let top = poly.coeff((1 << n) - 1);
            t.check(top.abs() == 1, || (input(), "top coefficient +-1".into(), top.to_string()));
            lemma_one(&mut lemma, &f, d, input);
            (t, lemma)
        },
    );
    let (ro, lemma): (Vec<_>, Vec<_>) = out.into_iter().unzip();
    report.section(
        "read-once-depth",
        format!("{per_arity} random read-once formulas per n = {READ_ONCE_MIN_ARITY}..={max_n}"),
        merged(ro),
    );
    report.section("lemma1", "D(f) >= deg(f)", merged(lemma));

    // D(f) >= deg(f) on uniformly random tables of random arity
    let top = max_n.min(LEMMA1_MAX_ARITY);
    let seed = config.stream(0x1E33_A001);
    let chunks = 64;
    let items: Vec<usize> = (0..chunks).collect();
    let out = par_map(
        items,
        || (),
        |_, chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let mut t = Tally::default();
            let count = lemma1 / chunks + usize::from(chunk < lemma1 % chunks);
            for i in 0..count {
                let n = rng.gen_range(1..=top);
                let words = (0..(1usize << n).div_ceil(64)).map(|_| rng.gen()).collect();
                let f = TruthTable::from_words(n, words);
                let d = DepthSolver::new().depth(&f).expect("n <= 10");
                lemma_one(&mut t, &f, d, || format!("stream {chunk} draw {i} table {f}"));
            }
            t
        },
    );
    report.section(
        "lemma1-random",
        format!("{lemma1} uniformly random tables, n uniform in 1..={top}"),
        merged(out),
    );
    Ok(report.finish())
}

fn lemma_one(t: &mut Tally, f: &TruthTable, d: u32, input: impl FnOnce() -> String) {
    let deg = multilinear(f).expect("bounded arity").degree() as u32;
    t.check(d >= deg, || (input(), format!("D >= deg = {deg}"), format!("D = {d}")));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_seeded() {
        let c = SuiteConfig {
            samples: Some(50),
            ..Default::default()
        };
        let a = suite_classical_depth(6, &c).unwrap();
        assert!(a.ok(), "{}", a.render_human());
        assert_eq!(a.section("lemma1-random").unwrap().checked, 50);
        // 2^(n+1) - 2 non-constant profiles per arity
        let sym: u64 = (1..=6u64).map(|n| (1 << (n + 1)) - 2).sum();
        assert_eq!(a.section("symmetric-depth").unwrap().checked, sym);
        let mut b = suite_classical_depth(6, &c).unwrap();
        b.wall_time_ms = a.wall_time_ms;
        assert_eq!(a, b);
    }
}
