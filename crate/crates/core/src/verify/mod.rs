//! Named scenarios that reduce statements about the complexes to exact
//! integer checks, with machine-readable reports.

mod scenarios;
mod tables;

pub use tables::{tables, Expected, Tables, WeightOneRow};

use crate::io::Store;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

pub const REPORT_SCHEMA: u32 = 1;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the published tables or theorems.
    Published,
    /// Holds by definition or by an axiom.
    Trivial,
    /// Produced by an independent computation.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
    pub status: Status,
    /// Skip reason, or extra context for a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// A command that reproduces the computed value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

impl Check {
    pub fn compare<T: fmt::Debug + PartialEq>(description: impl Into<String>, computed: T, expected: T, provenance: Provenance) -> Check {
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Check {
            description: description.into(),
            computed: format!("{computed:?}"),
            expected: format!("{expected:?}"),
            provenance,
            status,
            note: None,
            repro: None,
        }
    }

    pub fn holds(
        description: impl Into<String>,
        ok: bool,
        computed: impl Into<String>,
        expected: impl Into<String>,
        provenance: Provenance,
    ) -> Check {
        Check {
            description: description.into(),
            computed: computed.into(),
            expected: expected.into(),
            provenance,
            status: if ok { Status::Pass } else { Status::Fail },
            note: None,
            repro: None,
        }
    }

    pub fn skipped(description: impl Into<String>, reason: impl Into<String>, provenance: Provenance) -> Check {
        Check {
            description: description.into(),
            computed: String::new(),
            expected: String::new(),
            provenance,
            status: Status::Skipped,
            note: Some(reason.into()),
            repro: None,
        }
    }

    /// A failed computation, reported instead of aborting the scenario.
    pub fn error(description: impl Into<String>, err: impl fmt::Display, provenance: Provenance) -> Check {
        Check {
            description: description.into(),
            computed: format!("error: {err}"),
            expected: String::new(),
            provenance,
            status: Status::Fail,
            note: None,
            repro: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn with_repro(mut self, repro: impl Into<String>) -> Check {
        self.repro = Some(repro.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Shrinks every range to a few seconds of work.
    pub quick: bool,
    /// Seed for randomly drawn instances.
    pub seed: u64,
    /// Number of random cores for the two-colored complex scenario.
    pub cores: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { quick: false, seed: 2024, cores: 50 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub params: Params,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Scenario runs plus run-dependent bookkeeping, kept apart so that the
/// runs themselves compare equal between repeated invocations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub runs: Vec<ScenarioReport>,
    pub timings_ms: BTreeMap<String, u128>,
    pub cache_hits: usize,
    pub cache_misses: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(ScenarioReport::passed)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown scenario {0:?}; known: {1}")]
    Unknown(String, String),
}

type Runner = fn(&Store, &Params) -> Vec<Check>;

/// Registered scenarios: name, summary, implementation.
pub const SCENARIOS: &[(&str, &str, Runner)] = &[
    ("d2_zero", "d∘d = 0 for every variant, side and two-colored family", scenarios::d2_zero),
    ("tadpole_quotient", "dropping tadpoles keeps the homology in weights 2 and 3", scenarios::tadpole_quotient),
    ("ideal_cohomology", "the tadpole ideal has 2g-dimensional homology, all in weight 1", scenarios::ideal_cohomology),
    ("weight1_tables", "weight-1 homology against the tables for both parities", scenarios::weight1_tables),
    ("gr2_tables", "weight-2 homology as representations at g = 3 and g = 6", scenarios::gr2_tables),
    ("vanishing", "connected homology sits at E = W - 1 for g ≥ W + 2", scenarios::vanishing),
    ("ce_concentration", "CE homology sits at E = 0 for g ≥ 3W", scenarios::ce_concentration),
    ("stable_complexes", "invariant CE homology at M = 0 is spanned by κ monomials", scenarios::stable_complexes),
    ("ses_dims", "H(GC1) = w_g^fr ⊕ H(GCEX) dimension-wise", scenarios::ses_dims),
    ("cgamma", "two-colored core complexes have homology only in degree 1 - N", scenarios::cgamma),
    ("invariant_theory", "Sp-invariants of V^⊗2N are counted by perfect matchings iff g ≥ N", scenarios::invariant_theory),
    ("koszul_gr2", "annihilator dimensions, relation spaces and the Hilbert series identity", scenarios::koszul_gr2),
    ("euler_consistency", "chain and homology Euler characteristics agree", scenarios::euler_consistency),
    ("oracle_equivalence", "canonical forms and ranks against brute-force oracles", scenarios::oracle_equivalence),
];

pub fn scenario_names() -> Vec<&'static str> {
    SCENARIOS.iter().map(|s| s.0).collect()
}

pub fn run(name: &str, params: &Params, store: &Store) -> Result<ScenarioReport, VerifyError> {
    let Some(&(name, _, f)) = SCENARIOS.iter().find(|s| s.0 == name) else {
        return Err(VerifyError::Unknown(name.to_string(), scenario_names().join(", ")));
    };
    Ok(ScenarioReport { name: name.to_string(), params: params.clone(), checks: f(store, params) })
}

/// Runs the named scenarios (all when `names` is empty) in order.
pub fn run_many(names: &[String], params: &Params, store: &Store) -> Result<Report, VerifyError> {
    let names: Vec<String> = if names.is_empty() { scenario_names().into_iter().map(String::from).collect() } else { names.to_vec() };
    let mut runs = vec![];
    let mut timings_ms = BTreeMap::new();
    for n in &names {
        let t = Instant::now();
        runs.push(run(n, params, store)?);
        timings_ms.insert(n.clone(), t.elapsed().as_millis());
    }
    let (cache_hits, cache_misses) = store.cache.map_or((0, 0), |c| (c.hits(), c.misses()));
    Ok(Report { schema: REPORT_SCHEMA, runs, timings_ms, cache_hits, cache_misses })
}

/// One line per check, then a summary line.
pub fn render(report: &ScenarioReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        out.push_str(&format!("  {status} {}", c.description));
        match c.status {
            Status::Pass => {}
            Status::Fail => out.push_str(&format!(" (computed {}, expected {})", c.computed, c.expected)),
            Status::Skipped => out.push_str(&format!(" ({})", c.note.as_deref().unwrap_or(""))),
        }
        if c.status == Status::Fail {
            if let Some(r) = &c.repro {
                out.push_str(&format!("\n       reproduce: {r}"));
            }
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "{} {}: {} passed, {} failed, {} skipped\n",
        if report.passed() { "PASS" } else { "FAIL" },
        report.name,
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skipped)
    ));
    out
}
