//! Randomized, exact verification of every identity the crate implements.
//!
//! A run fans out over independent cells `(suite, n, k, δ)`, each with its
//! own generator derived from the seed and the cell key, so the report does
//! not depend on scheduling. Checks that need a nonsingular weight are
//! recorded as skipped at singular `δ`.

mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactpoly::{format_rational, rat, Rational};
use crate::format::serialize_symbol;
use crate::symbols::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebra,
    Oracle,
    Representation,
    Sl2,
    Powers,
    Invariance,
    Projector,
    Section,
    Singular,
    Decomposition,
    Filtration,
    Ovsienko,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Algebra,
        Suite::Oracle,
        Suite::Representation,
        Suite::Sl2,
        Suite::Powers,
        Suite::Invariance,
        Suite::Projector,
        Suite::Section,
        Suite::Singular,
        Suite::Decomposition,
        Suite::Filtration,
        Suite::Ovsienko,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Oracle => "oracle",
            Suite::Representation => "representation",
            Suite::Sl2 => "sl2",
            Suite::Powers => "powers",
            Suite::Invariance => "invariance",
            Suite::Projector => "projector",
            Suite::Section => "section",
            Suite::Singular => "singular",
            Suite::Decomposition => "decomposition",
            Suite::Filtration => "filtration",
            Suite::Ovsienko => "ovsienko",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (expected one of: {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n_values: Vec<usize>,
    pub k_max: u32,
    pub deltas: Vec<Rational>,
    /// Bound on base degree; the rank checks use the invariant slices of
    /// offset at most this value.
    pub base_degree: u32,
    pub trials: usize,
    pub seed: u64,
    /// Suites to run; empty means all.
    pub suites: Vec<Suite>,
    /// Negative control: added to `b_{k,1}` inside the projector suite.
    pub corrupt_b: Option<Rational>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_values: vec![1, 2],
            k_max: 4,
            deltas: vec![rat(1, 1), rat(1, 2), rat(-1, 3), rat(7, 5)],
            base_degree: 3,
            trials: 25,
            seed: 1,
            suites: Vec::new(),
            corrupt_b: None,
        }
    }
}

impl SuiteConfig {
    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.to_vec();
        self
    }

    pub fn selected(&self) -> Vec<Suite> {
        if self.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            let mut s = self.suites.clone();
            s.sort();
            s.dedup();
            s
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: Suite,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    fn sort_key(&self) -> (Suite, String, Vec<(String, String)>) {
        (
            self.suite,
            self.id.clone(),
            self.params.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n_values: Vec<usize>,
    pub k_max: u32,
    pub deltas: Vec<String>,
    pub base_degree: u32,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Records with the given check id.
    pub fn by_id<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.checks.iter().filter(move |c| c.id == id)
    }

    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            s.push_str(&format!(
                "{status:4} {:14} {:28} {}",
                c.suite.name(),
                c.id,
                params.join(" ")
            ));
            if let Some(d) = &c.detail {
                s.push_str(&format!("  ({d})"));
            }
            s.push('\n');
        }
        s.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.passed, self.failed, self.skipped
        ));
        s
    }
}

/// A failed check: what went wrong and, when there is one, the input.
#[derive(Debug, Clone)]
pub(crate) struct Failure {
    detail: String,
    counterexample: Option<String>,
}

impl Failure {
    pub(crate) fn new(detail: impl Into<String>) -> Self {
        Failure {
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub(crate) fn on(detail: impl Into<String>, u: &Symbol) -> Self {
        Failure {
            detail: detail.into(),
            counterexample: Some(serialize_symbol(u)),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(e.to_string())
    }
}

pub(crate) type Outcome = std::result::Result<Option<String>, Failure>;

/// Identifies one cell of the fan-out.
#[derive(Debug, Clone)]
pub(crate) struct Cell {
    pub suite: Suite,
    pub n: usize,
    pub k: Option<u32>,
    pub delta: Option<Rational>,
}

impl Cell {
    pub(crate) fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("n".to_string(), self.n.to_string());
        if let Some(k) = self.k {
            p.insert("k".to_string(), k.to_string());
        }
        if let Some(d) = &self.delta {
            p.insert("delta".to_string(), format_rational(d));
        }
        p
    }

    pub(crate) fn key(&self) -> String {
        format!("{}/{:?}", self.suite, self.params())
    }

    pub(crate) fn run(
        &self,
        id: &str,
        trials: usize,
        extra: &[(&str, String)],
        f: impl FnOnce() -> Outcome,
    ) -> CheckRecord {
        let start = Instant::now();
        let out = f();
        let elapsed_ms = Some(start.elapsed().as_millis() as u64);
        let mut params = self.params();
        for (k, v) in extra {
            params.insert(k.to_string(), v.clone());
        }
        let (status, detail, counterexample) = match out {
            Ok(detail) => (Status::Pass, detail, None),
            Err(f) => (Status::Fail, Some(f.detail), f.counterexample),
        };
        CheckRecord {
            id: id.to_string(),
            suite: self.suite,
            params,
            status,
            trials,
            detail,
            counterexample,
            elapsed_ms,
        }
    }

    pub(crate) fn skip(&self, id: &str, extra: &[(&str, String)], reason: impl Into<String>) -> CheckRecord {
        let mut params = self.params();
        for (k, v) in extra {
            params.insert(k.to_string(), v.clone());
        }
        CheckRecord {
            id: id.to_string(),
            suite: self.suite,
            params,
            status: Status::Skipped,
            trials: 0,
            detail: Some(reason.into()),
            counterexample: None,
            elapsed_ms: None,
        }
    }
}

fn cells(cfg: &SuiteConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for suite in cfg.selected() {
        for &n in &cfg.n_values {
            let per_n = |k: Option<u32>| Cell {
                suite,
                n,
                k,
                delta: None,
            };
            match suite {
                Suite::Algebra | Suite::Oracle | Suite::Representation | Suite::Singular | Suite::Ovsienko => {
                    out.push(per_n(None))
                }
                Suite::Invariance => {
                    out.push(per_n(None));
                    for k in 0..=cfg.k_max {
                        out.push(per_n(Some(k)));
                        for d in &cfg.deltas {
                            out.push(Cell {
                                suite,
                                n,
                                k: Some(k),
                                delta: Some(d.clone()),
                            });
                        }
                    }
                }
                _ => {
                    let k_min = match suite {
                        Suite::Projector | Suite::Section | Suite::Decomposition => 1,
                        _ => 0,
                    };
                    if suite == Suite::Projector {
                        out.push(per_n(None));
                    }
                    for k in k_min..=cfg.k_max {
                        for d in &cfg.deltas {
                            out.push(Cell {
                                suite,
                                n,
                                k: Some(k),
                                delta: Some(d.clone()),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Runs the selected suites and assembles a canonically ordered report.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let ctx = suites::Context::new(cfg);
    let mut checks: Vec<CheckRecord> = cells(cfg)
        .par_iter()
        .flat_map_iter(|cell| suites::run_cell(&ctx, cell))
        .collect();
    checks.sort_by_key(CheckRecord::sort_key);
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Report {
        n_values: cfg.n_values.clone(),
        k_max: cfg.k_max,
        deltas: cfg.deltas.iter().map(format_rational).collect(),
        base_degree: cfg.base_degree,
        trials: cfg.trials,
        seed: cfg.seed,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        checks,
    }
}
