// SPDX-License-Identifier: Apache-2.0

//! Replay suites: exhaustive and sampled sweeps that re-check the claims the
//! rest of the crate is built on, each producing a [`SuiteReport`].
//!
//! Sweeps run on the current rayon pool. Work items are mapped in parallel
//! and merged in input order, so a report never depends on the thread count.

mod corollary;
mod depth;
mod stretch;
mod structural;
mod symmetric;
mod theorem6;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use corollary::suite_corollary_count;
pub use depth::suite_classical_depth;
pub use stretch::suite_stretch_n5;
pub use structural::suite_structural_lemmas;
pub use symmetric::suite_symmetric_theorem1;
pub use theorem6::{burnside_npn_classes, npn_census, suite_theorem6};

pub const REPORT_SCHEMA: &str = "exactq.suite-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of: {})", SuiteId::NAMES.join(", "))]
    UnknownSuite(String),
    #[error("suite {suite}: max-n {got} outside {min}..={max}")]
    MaxN { suite: SuiteId, got: usize, min: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Theorem1,
    ClassicalDepth,
    Theorem6,
    Structural,
    Corollary,
    /// The n = 5 class sweep; reports findings, never failures.
    Stretch,
}

impl SuiteId {
    pub const NAMES: [&'static str; 6] = [
        "theorem1",
        "classical-depth",
        "theorem6",
        "structural",
        "corollary",
        "stretch",
    ];
    /// Suites run when none are selected.
    pub const DEFAULT: [SuiteId; 5] = [
        SuiteId::Theorem1,
        SuiteId::ClassicalDepth,
        SuiteId::Theorem6,
        SuiteId::Structural,
        SuiteId::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Theorem1 => "theorem1",
            SuiteId::ClassicalDepth => "classical-depth",
            SuiteId::Theorem6 => "theorem6",
            SuiteId::Structural => "structural",
            SuiteId::Corollary => "corollary",
            SuiteId::Stretch => "stretch",
        }
    }

    /// `(min, default, max)` for `--max-n`, where the suite takes one.
    pub fn max_n_bounds(self) -> Option<(usize, usize, usize)> {
        match self {
            SuiteId::Theorem1 => Some((1, 10, 10)),
            SuiteId::ClassicalDepth => Some((1, 12, 12)),
            SuiteId::Corollary => Some((3, 5, 5)),
            SuiteId::Theorem6 | SuiteId::Structural | SuiteId::Stretch => None,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "theorem1" => SuiteId::Theorem1,
            "classical-depth" => SuiteId::ClassicalDepth,
            "theorem6" => SuiteId::Theorem6,
            "structural" => SuiteId::Structural,
            "corollary" => SuiteId::Corollary,
            "stretch" => SuiteId::Stretch,
            other => return Err(SuiteError::UnknownSuite(other.to_string())),
        })
    }
}

/// Parameters shared by all suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Upper arity; `None` takes the suite default. Ignored by fixed suites.
    pub max_n: Option<usize>,
    pub seed: u64,
    /// Overrides the size of every sampled population. The defaults meet
    /// the documented minimums; smaller values are for quick runs only.
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_n: None,
            seed: 0,
            samples: None,
        }
    }
}

impl SuiteConfig {
    fn max_n(&self, suite: SuiteId) -> Result<usize, SuiteError> {
        let (min, default, max) = suite.max_n_bounds().expect("suite takes max-n");
        let got = self.max_n.unwrap_or(default);
        if !(min..=max).contains(&got) {
            return Err(SuiteError::MaxN { suite, got, min, max });
        }
        Ok(got)
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// Independent stream seed for a population.
    fn stream(&self, tag: u64) -> u64 {
        self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

/// Runs one suite.
pub fn run_suite(id: SuiteId, config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    match id {
        SuiteId::Theorem1 => suite_symmetric_theorem1(config.max_n(id)?),
        SuiteId::ClassicalDepth => suite_classical_depth(config.max_n(id)?, config),
        SuiteId::Theorem6 => Ok(suite_theorem6()),
        SuiteId::Structural => Ok(suite_structural_lemmas(config)),
        SuiteId::Corollary => suite_corollary_count(config.max_n(id)?),
        SuiteId::Stretch => Ok(suite_stretch_n5(config)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub section: String,
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionReport {
    pub name: String,
    pub population: String,
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
}

/// Outcome of one suite. `failures` is empty iff `passed == checked`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite_id: String,
    pub population: String,
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    /// Failures are findings to report, not a verification failure.
    pub findings_only: bool,
    pub sections: Vec<SectionReport>,
    /// Counts observed along the way (populations, class censuses, shares).
    pub metrics: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    /// The only field that differs between identical runs.
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.findings_only || self.failed == 0
    }

    pub fn section(&self, name: &str) -> Option<&SectionReport> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn metric(&self, key: &str) -> Option<u64> {
        self.metrics.get(key).copied()
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let status = match (self.failed, self.findings_only) {
            (0, _) => "PASS",
            (_, true) => "FINDINGS",
            _ => "FAIL",
        };
        let _ = writeln!(
            out,
            "suite {:<16} {:>4}  checked {:>9}  passed {:>9}  failed {:>6}  {:>8} ms",
            self.suite_id, status, self.checked, self.passed, self.failed, self.wall_time_ms
        );
        let _ = writeln!(out, "  population: {}", self.population);
        for s in &self.sections {
            let _ = writeln!(
                out,
                "  {:<28} checked {:>9}  failed {:>6}  {}",
                s.name, s.checked, s.failed, s.population
            );
        }
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "  {k:<28} = {v}");
        }
        for fl in &self.failures {
            let _ = writeln!(
                out,
                "  {} {}: expected {}, got {}",
                if self.findings_only { "finding" } else { "failure" },
                fl.section,
                fl.expected,
                fl.got
            );
            let _ = writeln!(out, "      input {}", fl.input);
        }
        out
    }
}

/// Checks recorded for one work item; merged in input order.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    checked: u64,
    failures: Vec<(String, String, String)>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, detail: impl FnOnce() -> (String, String, String)) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    /// Equality check with `Display` rendering of both sides.
    pub(crate) fn expect_eq<T: PartialEq + fmt::Display>(&mut self, input: impl fmt::Display, expected: T, got: T) {
        let ok = expected == got;
        self.check(ok, || (input.to_string(), expected.to_string(), got.to_string()));
    }

    pub(crate) fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

pub(crate) struct ReportBuilder {
    suite_id: &'static str,
    population: String,
    findings_only: bool,
    sections: Vec<SectionReport>,
    metrics: BTreeMap<String, u64>,
    failures: Vec<Failure>,
    start: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(suite: SuiteId, population: impl Into<String>) -> Self {
        Self {
            suite_id: suite.name(),
            population: population.into(),
            findings_only: suite == SuiteId::Stretch,
            sections: Vec::new(),
            metrics: BTreeMap::new(),
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Adds a section's merged tally. Sections with the same name accumulate.
    pub(crate) fn section(&mut self, name: &str, population: impl Into<String>, tally: Tally) {
        let failed = tally.failures.len() as u64;
        self.failures.extend(tally.failures.into_iter().map(|(input, expected, got)| Failure {
            section: name.to_string(),
            input,
            expected,
            got,
        }));
        if let Some(s) = self.sections.iter_mut().find(|s| s.name == name) {
            s.checked += tally.checked;
            s.failed += failed;
            s.passed = s.checked - s.failed;
            return;
        }
        self.sections.push(SectionReport {
            name: name.to_string(),
            population: population.into(),
            checked: tally.checked,
            passed: tally.checked - failed,
            failed,
        });
    }

    pub(crate) fn metric(&mut self, key: impl Into<String>, value: u64) {
        self.metrics.insert(key.into(), value);
    }

    pub(crate) fn finish(self) -> SuiteReport {
        let checked = self.sections.iter().map(|s| s.checked).sum();
        let failed = self.sections.iter().map(|s| s.failed).sum();
        SuiteReport {
            schema: REPORT_SCHEMA.to_string(),
            suite_id: self.suite_id.to_string(),
            population: self.population,
            checked,
            passed: checked - failed,
            failed,
            findings_only: self.findings_only,
            sections: self.sections,
            metrics: self.metrics,
            failures: self.failures,
            wall_time_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Order-preserving parallel map with per-worker state.
pub(crate) fn par_map<T, S, R>(
    items: Vec<T>,
    init: impl Fn() -> S + Sync + Send,
    f: impl Fn(&mut S, T) -> R + Sync + Send,
) -> Vec<R>
where
    T: Send,
    R: Send,
{
    items.into_par_iter().map_init(init, f).collect()
}

/// Sums a sequence of tallies in order.
pub(crate) fn merged(tallies: impl IntoIterator<Item = Tally>) -> Tally {
    let mut t = Tally::default();
    for x in tallies {
        t.merge(x);
    }
    t
}
