// SPDX-License-Identifier: Apache-2.0

use super::{ReportBuilder, SuiteError, SuiteId, SuiteReport, Tally};
use crate::boolfun::{and_orbit, TruthTable};

/// Exact table counts by popcount: `C(2^n, k)`.
fn popcount_histogram(n: usize) -> Vec<u128> {
    let len = 1usize << n;
    let mut row = vec![1u128];
    for _ in 0..len {
        let mut next = vec![1u128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

/// Counts AND-isomorphic `n`-bit tables for `n = 3..=max_n`: by enumeration
/// against the transform orbit up to `n = 4`, by the popcount histogram at
/// `n = 5`; the fraction of such tables must shrink with `n`.
pub fn suite_corollary_count(max_n: usize) -> Result<SuiteReport, SuiteError> {
    let (min, _, max) = SuiteId::Corollary.max_n_bounds().unwrap();
    if !(min..=max).contains(&max_n) {
        return Err(SuiteError::MaxN {
            suite: SuiteId::Corollary,
            got: max_n,
            min,
            max,
        });
    }
    let mut report = ReportBuilder::new(
        SuiteId::Corollary,
        format!("AND-isomorphic table counts, n = {min}..={max_n}"),
    );
    let mut counts = Tally::default();
    let mut method = Tally::default();
    let mut last_log_fraction = i64::MAX;
    let mut shrink = Tally::default();
    for n in min..=max_n {
        let expected = 2u128 << n;
        let hist = popcount_histogram(n);
        let by_popcount = hist[1] + hist[(1 << n) - 1];
        let orbit = and_orbit(n).expect("n <= 6");
        if n <= 4 {
            // enumerate every table and compare with the histogram method
            let mut enumerated = vec![0u128; (1 << n) + 1];
            let mut in_orbit = 0u128;
            for code in 0..1u64 << (1 << n) {
                let f = TruthTable::from_u64(n, code);
                enumerated[f.count_ones()] += 1;
                in_orbit += u128::from(orbit.contains(&f));
            }
            method.expect_eq(format!("n={n} histogram"), format!("{enumerated:?}"), format!("{hist:?}"));
            counts.expect_eq(format!("n={n} enumerated orbit members"), expected, in_orbit);
        } else {
            // orbit members are exactly the popcount-criterion tables
            let ok = orbit.iter().all(|f| {
                let c = f.count_ones();
                c == 1 || c == f.len() - 1
            });
            method.check(ok, || (format!("n={n} orbit"), "popcount 1 or 2^n-1".into(), "other".into()));
            method.expect_eq(format!("n={n} orbit size"), by_popcount, orbit.len() as u128);
        }
        counts.expect_eq(format!("n={n} popcount criterion"), expected, by_popcount);
        report.metric(format!("and_isomorphic_n{n}"), by_popcount as u64);

        let log_fraction = n as i64 + 1 - (1i64 << n);
        shrink.check(log_fraction < last_log_fraction && log_fraction < 0, || {
            (format!("n={n}"), "strictly smaller fraction".into(), format!("2^{log_fraction}"))
        });
        last_log_fraction = log_fraction;
    }
    report.section("counts", "AND-isomorphic tables equal 2^(n+1)", counts);
    report.section("method", "popcount histogram vs. enumeration and orbit", method);
    report.section("vanishing", "fraction 2^(n+1) / 2^(2^n) decreases", shrink);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_16_32_64() {
        let r = suite_corollary_count(5).unwrap();
        assert!(r.ok(), "{}", r.render_human());
        assert_eq!(r.metric("and_isomorphic_n3"), Some(16));
        assert_eq!(r.metric("and_isomorphic_n4"), Some(32));
        assert_eq!(r.metric("and_isomorphic_n5"), Some(64));
    }

    #[test]
    fn histogram_sums_to_all_tables() {
        let h = popcount_histogram(5);
        assert_eq!(h.iter().sum::<u128>(), 1u128 << 32);
        assert_eq!((h[1], h[31]), (32, 32));
    }
}
