//! Named verification suites behind a registry, one per checked family of identities.

mod suites;

use serde::Serialize;

use crate::error::{invalid, Result};

pub use suites::{
    CenterSuite, CompositionSuite, CountsSuite, FrobeniusSuite, InvarianceSuite, IsomorphismSuite, LevelTwoSuite,
    PlatformSuite, RingSuite, SeriesSuite, LEVEL_TWO_CASES,
};

/// Knobs shared by all suites. `max_points` caps the size ranges below their built-in bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub max_points: Option<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_points: None,
            seed: 7,
            samples: 50,
        }
    }
}

impl SuiteConfig {
    pub fn bound(&self, own: usize) -> usize {
        self.max_points.map_or(own, |m| m.min(own))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub criterion: u8,
    pub passed: bool,
    pub cases: usize,
    /// First few failing cases.
    pub failures: Vec<String>,
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn criterion(&self) -> u8;
    fn description(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome>;
}

const MAX_REPORTED: usize = 10;

/// Counts cases and keeps the first failures of a suite run.
#[derive(Default)]
pub(crate) struct Tally {
    cases: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }

    pub(crate) fn finish(self, s: &dyn Suite) -> SuiteOutcome {
        SuiteOutcome {
            suite: s.name().to_string(),
            criterion: s.criterion(),
            passed: self.failed == 0 && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { suites: Vec::new() }
    }

    /// Every built-in suite, ordered by criterion.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(CountsSuite));
        r.register(Box::new(RingSuite));
        r.register(Box::new(IsomorphismSuite));
        r.register(Box::new(FrobeniusSuite));
        r.register(Box::new(CompositionSuite));
        r.register(Box::new(CenterSuite));
        r.register(Box::new(PlatformSuite));
        r.register(Box::new(SeriesSuite));
        r.register(Box::new(InvarianceSuite));
        r.register(Box::new(LevelTwoSuite));
        r
    }

    pub fn register(&mut self, s: Box<dyn Suite>) {
        self.suites.retain(|t| t.name() != s.name());
        self.suites.push(s);
        self.suites.sort_by_key(|t| t.criterion());
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn suites(&self) -> impl Iterator<Item = &dyn Suite> {
        self.suites.iter().map(|s| s.as_ref())
    }

    /// Resolves `"all"` or a suite name to the suites to run.
    pub fn select(&self, name: &str) -> Result<Vec<&dyn Suite>> {
        if name == "all" {
            return Ok(self.suites().collect());
        }
        match self.get(name) {
            Some(s) => Ok(vec![s]),
            None => invalid(format!(
                "unknown suite {name:?}; known: all, {}",
                self.names().join(", ")
            )),
        }
    }

    pub fn run(&self, name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
        self.select(name)?.into_iter().map(|s| s.run(cfg)).collect()
    }
}
