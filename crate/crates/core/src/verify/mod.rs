//! Property suites over exhaustive and seeded random inputs.
//!
//! Each suite produces a [`SuiteReport`]. Reports never contain timing
//! information in their serialized form, so identical seeds give identical
//! JSON.

mod coalgebra_suites;
mod core_suites;
mod dual_suites;
mod primitive_suites;
mod rb_suites;
mod shuffle_suites;

use std::fmt::Display;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{q, qi, Q};

/// Failing cases kept verbatim in a report; the rest are only counted.
const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Caps every exhaustive degree bound when set.
    pub max_degree: Option<usize>,
    pub seed: u64,
    /// Overrides every random sample count when set.
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_degree: None,
            seed: 42,
            samples: None,
        }
    }
}

impl SuiteConfig {
    pub fn degree(&self, default: usize) -> usize {
        self.max_degree.map_or(default, |m| m.min(default))
    }

    pub fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CaseFailure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Non-gating suites are reported but never fail a run.
    pub gating: bool,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<CaseFailure>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub duration: Duration,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn blocks_run(&self) -> bool {
        self.gating && !self.ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let status = match (self.ok(), self.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "REFUTED",
        };
        let mut out = format!(
            "[{status}] {} cases={} passed={} failed={} seed={} ({:.2?})\n",
            self.suite, self.cases, self.passed, self.failed, self.seed, self.duration
        );
        for note in &self.notes {
            out.push_str(&format!("    note: {note}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "    failure: {}\n      expected: {}\n      actual:   {}\n",
                f.input, f.expected, f.actual
            ));
        }
        out
    }
}

/// Running tally for one suite.
pub(crate) struct Tally {
    report: SuiteReport,
}

impl Tally {
    fn new(name: &str, gating: bool, seed: u64) -> Self {
        Tally {
            report: SuiteReport {
                suite: name.to_string(),
                gating,
                seed,
                cases: 0,
                passed: 0,
                failed: 0,
                failures: Vec::new(),
                notes: Vec::new(),
                duration: Duration::ZERO,
            },
        }
    }

    /// Records one case; the closures only run on failure.
    pub fn check(
        &mut self,
        ok: bool,
        input: impl FnOnce() -> String,
        detail: impl FnOnce() -> (String, String),
    ) {
        self.report.cases += 1;
        if ok {
            self.report.passed += 1;
            return;
        }
        self.report.failed += 1;
        if self.report.failures.len() < MAX_RECORDED_FAILURES {
            let (expected, actual) = detail();
            self.report.failures.push(CaseFailure {
                input: input(),
                expected,
                actual,
            });
        }
    }

    pub fn expect_eq<T: PartialEq + Display>(
        &mut self,
        input: impl FnOnce() -> String,
        expected: &T,
        actual: &T,
    ) {
        self.check(expected == actual, input, || {
            (expected.to_string(), actual.to_string())
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }
}

type SuiteFn = fn(&SuiteConfig, &mut ChaCha8Rng, &mut Tally) -> Result<()>;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub gating: bool,
    run: SuiteFn,
}

macro_rules! suite {
    ($name:literal, $about:literal, $run:path) => {
        Suite {
            name: $name,
            about: $about,
            gating: true,
            run: $run,
        }
    };
    ($name:literal, $about:literal, $run:path, report_only) => {
        Suite {
            name: $name,
            about: $about,
            gating: false,
            run: $run,
        }
    };
}

pub static SUITES: &[Suite] = &[
    suite!(
        "core.decoration",
        "decoration monoid laws",
        core_suites::decoration
    ),
    suite!(
        "core.roundtrip",
        "parse and render are inverse",
        core_suites::roundtrip
    ),
    suite!(
        "core.canonical",
        "keys ignore child order",
        core_suites::canonical
    ),
    suite!(
        "core.concat",
        "concatenation monoid laws",
        core_suites::concat
    ),
    suite!(
        "core.structure",
        "grafting and induced subtrees",
        core_suites::structure
    ),
    suite!(
        "shuffle.commutativity",
        "shuffle, star and diamond commute",
        shuffle_suites::commutativity
    ),
    suite!(
        "shuffle.nonassociativity",
        "search for a non-associative triple",
        shuffle_suites::nonassociativity
    ),
    suite!(
        "shuffle.unit",
        "the empty forest is the shuffle unit",
        shuffle_suites::unit
    ),
    suite!(
        "shuffle.words",
        "linear trees shuffle like words",
        shuffle_suites::words
    ),
    suite!(
        "shuffle.positivity",
        "coefficients are positive monomials in lambda",
        shuffle_suites::positivity
    ),
    suite!(
        "shuffle.fertility-one",
        "tree shuffles contain a fertility-one vertex",
        shuffle_suites::fertility_one
    ),
    suite!(
        "shuffle.star-linear",
        "star equals shuffle on linear trees",
        shuffle_suites::star_linear
    ),
    suite!(
        "shuffle.star-trees",
        "star equals shuffle on random tree pairs",
        shuffle_suites::star_trees,
        report_only
    ),
    suite!(
        "coalgebra.coassociativity",
        "Delta is coassociative",
        coalgebra_suites::coassociativity
    ),
    suite!(
        "coalgebra.counit",
        "left counit always, right counit on linear trees only",
        coalgebra_suites::counit
    ),
    suite!(
        "coalgebra.bialgebra",
        "Delta is a shuffle morphism",
        coalgebra_suites::bialgebra
    ),
    suite!(
        "coalgebra.antipode",
        "right antipode convolution vanishes",
        coalgebra_suites::antipode
    ),
    suite!(
        "coalgebra.deconcatenation",
        "Delta on linear trees is deconcatenation",
        coalgebra_suites::deconcatenation
    ),
    suite!(
        "dual.consistency",
        "recursive and combinatorial Delta* agree",
        dual_suites::consistency
    ),
    suite!(
        "dual.cocommutativity",
        "Delta* is cocommutative",
        dual_suites::cocommutativity
    ),
    suite!(
        "dual.support",
        "Delta* and the duality oracle have equal support",
        dual_suites::support
    ),
    suite!(
        "dual.normalization",
        "oracle equals Delta* with inverted weights",
        dual_suites::normalization,
        report_only
    ),
    suite!(
        "dual.linear",
        "Delta* on linear trees is the deshuffle",
        dual_suites::linear
    ),
    suite!(
        "dual.grafting",
        "linear grafting is dual to Delta",
        dual_suites::grafting
    ),
    suite!(
        "dual.prelie",
        "pre-Lie identities of the grafting products",
        dual_suites::prelie
    ),
    suite!(
        "dual.leaf-grafting",
        "grafting on a leaf is never primitive",
        dual_suites::leaf_grafting
    ),
    suite!(
        "dual.families",
        "inductive admissible families: definition, fertility, complements",
        dual_suites::families
    ),
    suite!(
        "dual.families-definition",
        "inductive and literal admissible families coincide",
        dual_suites::families_definition,
        report_only
    ),
    suite!(
        "primitives.counts",
        "enumeration agrees with the counting recursion",
        primitive_suites::counts
    ),
    suite!(
        "primitives.table",
        "primitive counts up to 23 vertices",
        primitive_suites::table
    ),
    suite!(
        "primitives.coalgebraic",
        "structural and coalgebraic primitivity agree",
        primitive_suites::coalgebraic
    ),
    suite!(
        "primitives.decoration",
        "primitivity ignores decorations",
        primitive_suites::decoration
    ),
    suite!(
        "rb.words",
        "Rota-Baxter identity on words",
        rb_suites::words
    ),
    suite!(
        "rb.forests",
        "Rota-Baxter identity on forests",
        rb_suites::forests
    ),
    suite!(
        "rb.negative-control",
        "a non-unit root breaks the identity",
        rb_suites::negative_control
    ),
    suite!(
        "rb.commutativity",
        "diamond commutes on words and forests",
        rb_suites::commutativity
    ),
    suite!(
        "rb.phi-intertwining",
        "phi-bar intertwines the operators",
        rb_suites::phi_intertwining
    ),
    suite!(
        "rb.phi-multiplicative",
        "phi-bar preserves the diamond product",
        rb_suites::phi_multiplicative
    ),
    suite!(
        "rb.phi-concatenation",
        "phi-bar turns concatenation into the product",
        rb_suites::phi_concatenation
    ),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Resolves `all`, a module prefix such as `dual`, or an exact suite name.
pub fn select(name: &str) -> Result<Vec<&'static Suite>> {
    let picked: Vec<&Suite> = SUITES
        .iter()
        .filter(|s| name == "all" || s.name == name || s.name.split('.').next() == Some(name))
        .collect();
    if picked.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "unknown suite `{name}`; expected `all`, a module prefix, or one of: {}",
            suite_names().join(", ")
        )));
    }
    Ok(picked)
}

pub fn run_suite(suite: &Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    crate::shuffle::clear_caches();
    crate::dual::clear_caches();
    let stream = SUITES
        .iter()
        .position(|s| s.name == suite.name)
        .unwrap_or(0) as u64;
    let mut rng = cfg.rng(stream);
    let mut tally = Tally::new(suite.name, suite.gating, cfg.seed);
    let start = Instant::now();
    (suite.run)(cfg, &mut rng, &mut tally)?;
    tally.report.duration = start.elapsed();
    Ok(tally.report)
}

pub fn run(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    select(name)?
        .into_iter()
        .map(|s| run_suite(s, cfg))
        .collect()
}

/// The oracle-versus-coproduct comparison behind `dual.normalization`.
pub fn oracle_comparison(cfg: &SuiteConfig) -> Result<String> {
    crate::dual::clear_caches();
    dual_suites::comparison_report(cfg)
}

/// The weights exercised by the λ-dependent suites.
pub fn lambda_samples() -> Vec<Q> {
    vec![qi(0), qi(1), qi(-1), q(2, 3)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_selectable() {
        let names = suite_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert_eq!(select("all").unwrap().len(), names.len());
        assert!(select("dual").unwrap().len() > 3);
        assert!(select("nonsense").is_err());
    }

    #[test]
    fn small_runs_are_deterministic() {
        let cfg = SuiteConfig {
            max_degree: Some(3),
            seed: 9,
            samples: Some(5),
        };
        let a: Vec<_> = run("core", &cfg)
            .unwrap()
            .iter()
            .map(SuiteReport::to_json)
            .collect();
        let b: Vec<_> = run("core", &cfg)
            .unwrap()
            .iter()
            .map(SuiteReport::to_json)
            .collect();
        assert_eq!(a, b);
    }
}
