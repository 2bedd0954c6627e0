// SPDX-License-Identifier: Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{par_map, ReportBuilder, SuiteConfig, SuiteId, SuiteReport, Tally};
use crate::boolfun::{is_and_isomorphic, npn_canonical, TruthTable};
use crate::synth::{verify_certificate, Synthesizer};

pub const STRETCH_SAMPLES: usize = 200_000;

/// Exploratory 5-bit sweep over the NPN classes reached by a seeded sample
/// of tables (all ~616k classes are out of reach without enumerating 2^32
/// tables). Each class representative is synthesized and verified; a
/// non-AND class costing 5, or any unverifiable certificate, is a finding.
pub fn suite_stretch_n5(config: &SuiteConfig) -> SuiteReport {
    let samples = config.samples(STRETCH_SAMPLES);
    let mut report = ReportBuilder::new(
        SuiteId::Stretch,
        format!("5-bit NPN classes reached by {samples} sampled tables"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.stream(0x57_2E7C));
    let tables: Vec<u64> = (0..samples).map(|_| rng.gen::<u32>() as u64).collect();
    let mut classes: Vec<u64> = par_map(tables, || (), |_, code| {
        let (c, _) = npn_canonical(&TruthTable::from_u64(5, code)).expect("small arity");
        c.as_u64().expect("one word")
    });
    classes.sort_unstable();
    classes.dedup();

    let classes_len = classes.len() as u64;
    let rows = par_map(classes, Synthesizer::new, |s, code| {
        let f = TruthTable::from_u64(5, code);
        let c = s.certificate(&f);
        let mut t = Tally::default();
        let and_iso = is_and_isomorphic(&f);
        let q = c.claimed_queries;
        t.check(if and_iso { q == 5 } else { q <= 4 }, || {
            (f.to_string(), if and_iso { "5" } else { "<= 4" }.into(), q.to_string())
        });
        if let Err(e) = verify_certificate(&c) {
            t.check(false, || (f.to_string(), "verified certificate".into(), e.to_string()));
        }
        (t, q)
    });
    let mut t = Tally::default();
    let mut hist = [0u64; 6];
    for (x, q) in rows {
        t.merge(x);
        hist[q as usize] += 1;
    }
    report.section("classes", "sampled class representatives: cost <= 4 unless AND-isomorphic", t);
    report.metric("tables_sampled", samples as u64);
    report.metric("classes_reached", classes_len);
    for (q, k) in hist.iter().enumerate() {
        report.metric(format!("classes_cost_{q}"), *k);
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn findings_never_fail_the_run() {
        let r = suite_stretch_n5(&SuiteConfig {
            samples: Some(300),
            ..Default::default()
        });
        assert!(r.findings_only && r.ok());
        assert_eq!(r.failed, 0, "{}", r.render_human());
        assert!(r.metric("classes_reached").unwrap() > 250);
    }
}
