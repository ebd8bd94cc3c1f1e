//! Randomized law suites.
//!
//! Every case draws a [`Sample`] from a generator seeded by `(seed, suite,
//! case)`, builds library objects from it and checks a list of named
//! properties. Cases run on the rayon pool and are merged by index, so a
//! report depends on the configuration only. The first failing property of a
//! case is shrunk to a smaller sample that still fails it.

mod filters;
mod functions;
mod linear;
mod numbers;
mod powerset;
mod topology;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sample::{minimize, Sample};
use crate::condset::{CondSet, CondSubset, PointSet};
use crate::error::{Error, Result};

/// Deliberate defects used to check that the suites catch them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutant {
    /// The complement keeps absent slices absent instead of filling them
    /// with the whole carrier.
    ComplementNoSupportFix,
}

impl Mutant {
    pub const ALL: [Mutant; 1] = [Mutant::ComplementNoSupportFix];

    pub fn name(self) -> &'static str {
        match self {
            Mutant::ComplementNoSupportFix => "complement-no-support-fix",
        }
    }

    pub fn parse(s: &str) -> Result<Mutant> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown mutant `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Per-suite default when `None`.
    pub cases: Option<usize>,
    pub atoms_max: usize,
    pub carrier_max: usize,
    /// Decimal digits for irrational outputs such as square roots.
    pub digits: u32,
    pub mutant: Option<Mutant>,
    /// Candidate evaluations allowed while shrinking one failure.
    pub shrink_budget: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            cases: None,
            atoms_max: 3,
            carrier_max: 4,
            digits: 12,
            mutant: None,
            shrink_budget: 2000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: usize,
    pub property: String,
    pub detail: String,
    /// The shrunk sample.
    pub instance: Sample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    /// Property evaluations over all cases.
    pub checks: u64,
    pub failures: Vec<Failure>,
    /// Per-suite reports of `all`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<Report>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.suites.iter().all(Report::passed)
    }

    pub fn failure_count(&self) -> usize {
        self.failures.len() + self.suites.iter().map(Report::failure_count).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Property bookkeeping for one case: counts checks, keeps the first failure.
#[derive(Default)]
pub struct Ck {
    checks: u64,
    failure: Option<(String, String)>,
}

impl Ck {
    pub fn that(&mut self, prop: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some((prop.to_string(), detail()));
        }
    }

    pub fn holds(&mut self, prop: &str, ok: bool) {
        self.that(prop, ok, || "does not hold".into());
    }

    pub fn eq<T: PartialEq + fmt::Debug>(&mut self, prop: &str, got: &T, want: &T) {
        self.that(prop, got == want, || {
            format!("got {got:?}, expected {want:?}")
        });
    }
}

struct SuiteDef {
    name: &'static str,
    default_cases: usize,
    generate: fn(&mut ChaCha8Rng, &Config, usize) -> Sample,
    check: fn(&Sample, &Config, &mut Ck) -> Result<()>,
}

const DEFS: [SuiteDef; 6] = [
    SuiteDef {
        name: "powerset",
        default_cases: 500,
        generate: powerset::generate,
        check: powerset::check,
    },
    SuiteDef {
        name: "functions",
        default_cases: 500,
        generate: functions::generate,
        check: functions::check,
    },
    SuiteDef {
        name: "filters",
        default_cases: 100,
        generate: filters::generate,
        check: filters::check,
    },
    SuiteDef {
        name: "topology",
        default_cases: 100,
        generate: topology::generate,
        check: topology::check,
    },
    SuiteDef {
        name: "numbers",
        default_cases: 1000,
        generate: numbers::generate,
        check: numbers::check,
    },
    SuiteDef {
        name: "linear",
        default_cases: 40,
        generate: linear::generate,
        check: linear::check,
    },
];

pub const SUITE_NAMES: [&str; 6] = [
    "powerset",
    "functions",
    "filters",
    "topology",
    "numbers",
    "linear",
];

pub fn default_cases(name: &str) -> Option<usize> {
    DEFS.iter()
        .find(|d| d.name == name)
        .map(|d| d.default_cases)
}

/// The generator state for one case: seed, case index and suite name are
/// laid out side by side in the 32-byte ChaCha seed.
pub fn case_rng(seed: u64, suite: &str, case: usize) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&(case as u64).to_le_bytes());
    for (b, s) in bytes[16..].iter_mut().zip(suite.bytes()) {
        *b = s;
    }
    ChaCha8Rng::from_seed(bytes)
}

fn evaluate(def: &SuiteDef, s: &Sample, cfg: &Config) -> Ck {
    let mut ck = Ck::default();
    if let Err(e) = (def.check)(s, cfg, &mut ck) {
        if ck.failure.is_none() {
            ck.failure = Some(("evaluation".into(), e.to_string()));
        }
    }
    ck
}

fn run_case(def: &SuiteDef, cfg: &Config, case: usize) -> (u64, Option<Failure>) {
    let mut rng = case_rng(cfg.seed, def.name, case);
    let sample = (def.generate)(&mut rng, cfg, case);
    let ck = evaluate(def, &sample, cfg);
    let failure = ck.failure.map(|(property, _)| {
        let same = |c: &Sample| {
            evaluate(def, c, cfg)
                .failure
                .is_some_and(|(p, _)| p == property)
        };
        let small = minimize(&sample, same, cfg.shrink_budget);
        let detail = evaluate(def, &small, cfg)
            .failure
            .map(|f| f.1)
            .unwrap_or_default();
        Failure {
            case,
            property,
            detail,
            instance: small,
        }
    });
    (ck.checks, failure)
}

fn run_one(def: &SuiteDef, cfg: &Config) -> Report {
    let cases = cfg.cases.unwrap_or(def.default_cases);
    let results: Vec<(u64, Option<Failure>)> = (0..cases)
        .into_par_iter()
        .map(|k| run_case(def, cfg, k))
        .collect();
    Report {
        suite: def.name.to_string(),
        seed: cfg.seed,
        cases,
        checks: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().filter_map(|r| r.1).collect(),
        suites: Vec::new(),
    }
}

/// Runs one suite, or every suite for `all`.
pub fn run_suite(name: &str, cfg: &Config) -> Result<Report> {
    if name == "all" {
        let suites: Vec<Report> = DEFS.iter().map(|d| run_one(d, cfg)).collect();
        return Ok(Report {
            suite: "all".into(),
            seed: cfg.seed,
            cases: suites.iter().map(|r| r.cases).sum(),
            checks: suites.iter().map(|r| r.checks).sum(),
            failures: Vec::new(),
            suites,
        });
    }
    let def = DEFS
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(run_one(def, cfg))
}

// Generation helpers shared by the suites.

fn atoms(rng: &mut ChaCha8Rng, cfg: &Config) -> usize {
    rng.gen_range(1..=cfg.atoms_max.max(1))
}

/// Uniform rationals with a small shared set of denominators.
fn rats(rng: &mut ChaCha8Rng, atoms: usize) -> Vec<(i64, i64)> {
    (0..atoms).map(|_| super::sample::random_rat(rng)).collect()
}

fn subset(space: &CondSet, s: &[Option<u128>]) -> CondSubset {
    Sample::subset_of(space, s)
}

fn on_one(space: &CondSet, s: &[Option<u128>]) -> CondSubset {
    Sample::subset_on_one(space, s)
}

/// The per-atom singleton atoms of `P(X)` below `y`.
fn atoms_below(y: &CondSubset) -> Vec<CondSubset> {
    let space = y.set();
    let mut out = Vec::new();
    for i in 0..space.algebra().len() {
        if let Some(s) = y.slice(i) {
            for p in s.iter() {
                out.push(CondSubset::from_fn(space, |j| {
                    (j == i).then(|| PointSet::singleton(p))
                }));
            }
        }
    }
    out
}

/// A stable generator for data derived from a sample, so that derived random
/// points shrink together with the sample.
fn derived_rng(s: &Sample) -> ChaCha8Rng {
    let json = serde_json::to_vec(s).expect("samples serialize");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in json {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("nope", &Config::default()),
            Err(Error::UnknownSuite(s)) if s == "nope"
        ));
    }

    #[test]
    fn case_generators_differ_by_suite_and_case() {
        let a: u64 = case_rng(1, "powerset", 0).gen();
        let b: u64 = case_rng(1, "powerset", 1).gen();
        let c: u64 = case_rng(1, "numbers", 0).gen();
        assert!(a != b && a != c);
        assert_eq!(a, case_rng(1, "powerset", 0).gen::<u64>());
    }

    #[test]
    fn mutant_names_round_trip() {
        for m in Mutant::ALL {
            assert_eq!(Mutant::parse(m.name()).unwrap(), m);
        }
        assert!(Mutant::parse("x").is_err());
    }
}
