//! Soundness fuzzing: random instances of each schema are evaluated at every
//! state of a random game. Any state where an instance is false is a failure.

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gen::{gen_below, gen_game, gen_subset, instantiate_schema, Vocabulary};
use super::GenConfig;
use crate::checker::Checker;
use crate::hilbert::{match_axiom, Schema};
use crate::syntax::{parse, print, Formula, NameSet};

/// Something whose instances should be valid in every game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FuzzTarget {
    Axiom(Schema),
    /// `B{T}{X}φ -> K{X}B{T}{X}φ`
    PositiveIntrospection,
    /// `[C]{T;T}{X}φ <-> [C]{T}{X}φ`, the left side written out and parsed.
    TwoSuperscriptCollapse,
    /// `K{X}φ <-> B{}{X}φ`
    KnowledgeCollapse,
    /// `B{T}{X}φ -> φ` with non-empty `T`: not valid, used as a negative
    /// control.
    CorruptedTruth,
}

impl FuzzTarget {
    pub const ALL: [FuzzTarget; 15] = [
        FuzzTarget::Axiom(Schema::Truth),
        FuzzTarget::Axiom(Schema::NegativeIntrospection),
        FuzzTarget::Axiom(Schema::Distributivity),
        FuzzTarget::Axiom(Schema::Trust),
        FuzzTarget::Axiom(Schema::MonotonicityB),
        FuzzTarget::Axiom(Schema::MonotonicityS),
        FuzzTarget::Axiom(Schema::Cooperation),
        FuzzTarget::Axiom(Schema::StrategicIntrospection),
        FuzzTarget::Axiom(Schema::BeliefInUnavoidability),
        FuzzTarget::Axiom(Schema::PublicBelief),
        FuzzTarget::Axiom(Schema::GeneralizedPublicBelief),
        FuzzTarget::PositiveIntrospection,
        FuzzTarget::TwoSuperscriptCollapse,
        FuzzTarget::KnowledgeCollapse,
        FuzzTarget::CorruptedTruth,
    ];

    /// Every target expected to be valid.
    pub fn sound() -> Vec<FuzzTarget> {
        Self::ALL.into_iter().filter(|t| !t.is_control()).collect()
    }

    pub fn is_control(self) -> bool {
        self == FuzzTarget::CorruptedTruth
    }

    pub fn name(self) -> &'static str {
        match self {
            FuzzTarget::Axiom(s) => s.name(),
            FuzzTarget::PositiveIntrospection => "PositiveIntrospection",
            FuzzTarget::TwoSuperscriptCollapse => "TwoSuperscriptCollapse",
            FuzzTarget::KnowledgeCollapse => "KnowledgeCollapse",
            FuzzTarget::CorruptedTruth => "CorruptedTruth",
        }
    }

    fn index(self) -> u64 {
        Self::ALL.iter().position(|t| *t == self).expect("listed") as u64
    }

    /// A random instance over `vocab`, with subformulas of depth below
    /// `depth`.
    pub fn instance<R: Rng + ?Sized>(self, rng: &mut R, vocab: &Vocabulary, depth: usize) -> Formula {
        let body = |rng: &mut R| gen_below(rng, vocab, depth);
        match self {
            FuzzTarget::Axiom(s) => instantiate_schema(rng, s, vocab, depth),
            FuzzTarget::PositiveIntrospection => {
                let phi = body(rng);
                let (t, x) = (gen_subset(rng, &vocab.variables), gen_subset(rng, &vocab.variables));
                let b = Formula::belief(t, x.clone(), phi);
                Formula::implies(b.clone(), Formula::know(x, b))
            }
            FuzzTarget::TwoSuperscriptCollapse => {
                let phi = body(rng);
                let c = gen_subset(rng, &vocab.actors);
                let (t, x) = (gen_subset(rng, &vocab.variables), gen_subset(rng, &vocab.variables));
                let list = |s: &NameSet| s.iter().collect::<Vec<_>>().join(",");
                let text = format!("[{}]{{{};{}}}{{{}}}({})", list(&c), list(&t), list(&t), list(&x), print(&phi));
                let two = parse(&text).expect("generated text parses");
                Formula::iff(two, Formula::doxastic(c, t, x, phi))
            }
            FuzzTarget::KnowledgeCollapse => {
                let phi = body(rng);
                let x = gen_subset(rng, &vocab.variables);
                Formula::iff(Formula::know(x.clone(), phi.clone()), Formula::belief(NameSet::new(), x, phi))
            }
            FuzzTarget::CorruptedTruth => {
                let phi = body(rng);
                let mut t = gen_subset(rng, &vocab.variables);
                t.insert(vocab.variables.choose(rng).expect("games have variables").clone());
                let x = gen_subset(rng, &vocab.variables);
                Formula::implies(Formula::belief(t, x, phi.clone()), phi)
            }
        }
    }
}

impl fmt::Display for FuzzTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FuzzTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown fuzz target '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// The instance is false at some state.
    Counterexample,
    /// The schema matcher rejects a generated instance.
    Matcher,
    /// Evaluation failed.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzFailure {
    pub trial: usize,
    /// First state, in declaration order, where the instance is false.
    pub state: Option<String>,
    pub instance: String,
    pub game: serde_json::Value,
    pub kind: FailureKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetReport {
    pub schema: String,
    pub trials: usize,
    /// Sorted by trial.
    pub failures: Vec<FuzzFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub schemas: Vec<TargetReport>,
}

impl FuzzReport {
    pub fn total_failures(&self) -> usize {
        self.schemas.iter().map(|s| s.failures.len()).sum()
    }
}

/// The generator for one trial. Every `(seed, target, trial)` has its own
/// ChaCha stream, so trials are reproducible individually and in any order.
pub fn trial_rng(seed: u64, target: FuzzTarget, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(target.index() << 32 | trial as u64);
    rng
}

fn run_trial(target: FuzzTarget, config: &GenConfig, trial: usize) -> Option<FuzzFailure> {
    let mut rng = trial_rng(config.seed, target, trial);
    let game = gen_game(&mut rng, config);
    let vocab = Vocabulary::of_game(&game);
    let f = target.instance(&mut rng, &vocab, config.max_formula_depth.saturating_sub(1));
    let failure = |kind, state: Option<String>, message: Option<String>| FuzzFailure {
        trial,
        state,
        instance: print(&f),
        game: serde_json::to_value(game.to_file()).expect("game serializes"),
        kind,
        message,
    };
    if let FuzzTarget::Axiom(schema) = target {
        if !match_axiom(&f, schema) {
            return Some(failure(FailureKind::Matcher, None, None));
        }
    }
    match Checker::new(&game).extension(&f) {
        Err(e) => Some(failure(FailureKind::Error, None, Some(e.to_string()))),
        Ok(ext) => ext
            .iter()
            .position(|holds| !holds)
            .map(|w| failure(FailureKind::Counterexample, Some(game.state(w).name().to_string()), None)),
    }
}

/// Runs `config.trials` trials of one target, in parallel.
pub fn fuzz_target(target: FuzzTarget, config: &GenConfig) -> TargetReport {
    let failures: Vec<FuzzFailure> = (0..config.trials)
        .into_par_iter()
        .filter_map(|trial| run_trial(target, config, trial))
        .collect();
    TargetReport {
        schema: target.name().to_string(),
        trials: config.trials,
        failures,
    }
}

/// One report entry per target, in the given order. With zero trials the
/// report lists no targets.
pub fn fuzz_targets(targets: &[FuzzTarget], config: &GenConfig) -> FuzzReport {
    let schemas = if config.trials == 0 {
        Vec::new()
    } else {
        targets.iter().map(|t| fuzz_target(*t, config)).collect()
    };
    FuzzReport {
        seed: config.seed,
        trials: config.trials,
        schemas,
    }
}

/// Every sound target: the eleven schemas and three derived principles.
pub fn fuzz_soundness(config: &GenConfig) -> FuzzReport {
    fuzz_targets(&FuzzTarget::sound(), config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GenConfig {
        GenConfig {
            trials: 40,
            seed: 7,
            ..GenConfig::default()
        }
    }

    #[test]
    fn sound_targets_have_no_failures() {
        let report = fuzz_soundness(&small());
        assert_eq!(report.schemas.len(), 14);
        for s in &report.schemas {
            assert!(s.failures.is_empty(), "{}: {:?}", s.schema, s.failures.first());
        }
    }

    #[test]
    fn corrupted_truth_is_caught() {
        let config = GenConfig { trials: 200, ..small() };
        let report = fuzz_target(FuzzTarget::CorruptedTruth, &config);
        assert!(!report.failures.is_empty());
        let first = &report.failures[0];
        assert_eq!(first.kind, FailureKind::Counterexample);
        assert!(first.state.is_some());
        assert!(report.failures.windows(2).all(|w| w[0].trial < w[1].trial));
    }

    #[test]
    fn reports_are_deterministic() {
        let config = GenConfig { trials: 30, ..small() };
        let a = fuzz_target(FuzzTarget::CorruptedTruth, &config);
        let b = fuzz_target(FuzzTarget::CorruptedTruth, &config);
        assert_eq!(a, b);
    }

    #[test]
    fn zero_trials() {
        let report = fuzz_soundness(&GenConfig { trials: 0, ..small() });
        assert!(report.schemas.is_empty());
        assert_eq!(report.total_failures(), 0);
    }

    #[test]
    fn target_names() {
        for t in FuzzTarget::ALL {
            assert_eq!(t.name().parse::<FuzzTarget>(), Ok(t));
        }
        assert!("Nope".parse::<FuzzTarget>().is_err());
    }
}
