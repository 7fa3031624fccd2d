//! Named verification suites: randomized exact sweeps over independent cases.
//!
//! Every case draws from its own ChaCha8 stream derived from the seed, the
//! suite and the case index, so cases can run in any order and a failure can
//! be replayed from `(suite, seed, case)` alone.

mod closure;
mod dimension;
mod k0;
mod lab;
mod lattice;
mod realdim;
mod split;
mod witness;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::par::{map_indexed, Execution};

pub const SUITES: [&str; 8] = [
    "dimension",
    "lattice",
    "closure",
    "split",
    "k0",
    "lab",
    "witness",
    "realdim",
];

/// Failures kept in a report per check; the counts stay exact.
const MAX_DUMPS_PER_CHECK: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: usize,
    pub execution: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            cases: 100,
            execution: Execution::Parallel,
        }
    }
}

/// A replayable counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub suite: String,
    pub check: String,
    pub seed: u64,
    /// `None` for the case-independent part of a suite.
    pub case: Option<usize>,
    pub message: String,
    pub instance: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
    pub facts: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Outcomes collected while running one case.
pub(crate) struct Case {
    outcomes: Vec<(String, std::result::Result<(), String>)>,
    instance: Map<String, Value>,
    facts: BTreeMap<String, Value>,
    tallies: BTreeMap<String, u64>,
}

impl Case {
    fn new() -> Self {
        Self {
            outcomes: Vec::new(),
            instance: Map::new(),
            facts: BTreeMap::new(),
            tallies: BTreeMap::new(),
        }
    }

    /// Records a check; an error counts as a failure with its message.
    pub(crate) fn check(&mut self, name: &str, outcome: Result<bool>) {
        let r = match outcome {
            Ok(true) => Ok(()),
            Ok(false) => Err("property does not hold".to_string()),
            Err(e) => Err(e.to_string()),
        };
        self.outcomes.push((name.to_string(), r));
    }

    pub(crate) fn check_with(&mut self, name: &str, f: impl FnOnce() -> Result<bool>) {
        self.check(name, f());
    }

    pub(crate) fn record(&mut self, key: &str, value: Value) {
        self.instance.insert(key.to_string(), value);
    }

    pub(crate) fn fact(&mut self, key: &str, value: Value) {
        self.facts.insert(key.to_string(), value);
    }

    /// Adds one to a counter that is summed over all cases into the facts.
    pub(crate) fn tally(&mut self, key: &str) {
        *self.tallies.entry(key.to_string()).or_default() += 1;
    }
}

type CaseFn = fn(&mut ChaCha8Rng, &mut Case);
type GlobalFn = fn(&mut Case);

fn suite_parts(name: &str) -> Result<(usize, GlobalFn, CaseFn)> {
    let index = SUITES
        .iter()
        .position(|s| *s == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let (g, c): (GlobalFn, CaseFn) = match name {
        "dimension" => (dimension::global, dimension::case),
        "lattice" => (lattice::global, lattice::case),
        "closure" => (closure::global, closure::case),
        "split" => (split::global, split::case),
        "k0" => (k0::global, k0::case),
        "lab" => (lab::global, lab::case),
        "witness" => (witness::global, witness::case),
        "realdim" => (realdim::global, realdim::case),
        _ => unreachable!("listed in SUITES"),
    };
    Ok((index, g, c))
}

fn case_rng(seed: u64, suite_index: usize, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite_index as u64) << 40) | case as u64);
    rng
}

fn run_one(suite_index: usize, global: GlobalFn, case_fn: CaseFn, seed: u64, case: Option<usize>) -> Case {
    let mut c = Case::new();
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        let mut inner = Case::new();
        match case {
            None => global(&mut inner),
            Some(i) => case_fn(&mut case_rng(seed, suite_index, i), &mut inner),
        }
        inner
    }));
    match outcome {
        Ok(inner) => c = inner,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            c.outcomes.push(("no_panic".into(), Err(msg)));
        }
    }
    c
}

/// Runs one named suite, or every suite for `all`.
pub fn run(name: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, cfg)).collect()
    } else {
        Ok(vec![run_suite(name, cfg)?])
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let (index, global, case_fn) = suite_parts(name)?;
    let seed = cfg.seed;
    let mut results = vec![(None, run_one(index, global, case_fn, seed, None))];
    results.extend(map_indexed(cfg.cases, cfg.execution, |i| {
        (Some(i), run_one(index, global, case_fn, seed, Some(i)))
    }));
    let mut checks: Vec<CheckSummary> = Vec::new();
    let mut failures = Vec::new();
    let mut facts = BTreeMap::new();
    let mut dumps: BTreeMap<String, usize> = BTreeMap::new();
    let mut tallies: BTreeMap<String, u64> = BTreeMap::new();
    for (case, c) in results {
        facts.extend(c.facts);
        for (k, v) in c.tallies {
            *tallies.entry(k).or_default() += v;
        }
        let instance = Value::Object(c.instance);
        for (check, outcome) in c.outcomes {
            let pos = match checks.iter().position(|s| s.name == check) {
                Some(p) => p,
                None => {
                    checks.push(CheckSummary {
                        name: check.clone(),
                        checked: 0,
                        failed: 0,
                    });
                    checks.len() - 1
                }
            };
            checks[pos].checked += 1;
            if let Err(message) = outcome {
                checks[pos].failed += 1;
                let n = dumps.entry(check.clone()).or_default();
                if *n < MAX_DUMPS_PER_CHECK {
                    *n += 1;
                    failures.push(Failure {
                        suite: name.to_string(),
                        check,
                        seed,
                        case,
                        message,
                        instance: instance.clone(),
                    });
                }
            }
        }
    }
    for (k, v) in tallies {
        facts.insert(k, Value::from(v));
    }
    let mut warnings = Vec::new();
    if cfg.cases == 0 {
        warnings.push("no random cases were run; the sweep is vacuous".to_string());
    }
    let passed = checks.iter().all(|c| c.failed == 0);
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        cases: cfg.cases,
        passed,
        checks,
        facts,
        warnings,
        failures,
    })
}

/// Re-runs the case a failure came from and returns the failures it produces
/// for the same check.
pub fn replay(f: &Failure) -> Result<Vec<Failure>> {
    let (index, global, case_fn) = suite_parts(&f.suite)?;
    let c = run_one(index, global, case_fn, f.seed, f.case);
    let instance = Value::Object(c.instance);
    Ok(c.outcomes
        .into_iter()
        .filter(|(name, o)| *name == f.check && o.is_err())
        .map(|(check, o)| Failure {
            suite: f.suite.clone(),
            check,
            seed: f.seed,
            case: f.case,
            message: o.err().unwrap_or_default(),
            instance: instance.clone(),
        })
        .collect())
}

/// Whether every report passed.
pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
