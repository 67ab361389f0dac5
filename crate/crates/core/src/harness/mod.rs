//! Random generators and the axiom soundness fuzzer.

mod fuzz;
pub mod gen;

use serde::{Deserialize, Serialize};

pub use fuzz::{
    fuzz_soundness, fuzz_target, fuzz_targets, trial_rng, FailureKind, FuzzFailure, FuzzReport, FuzzTarget,
    TargetReport,
};
pub use gen::{gen_below, gen_derivation, gen_formula, gen_game, gen_subset, instantiate_schema, Vocabulary};

/// Bounds for random generation. Missing fields in a JSON document take the
/// defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    pub seed: u64,
    pub max_states: usize,
    pub max_variables: usize,
    pub max_actors: usize,
    pub max_actions: usize,
    pub max_mech_entries: usize,
    pub max_formula_depth: usize,
    /// Trials per fuzz target.
    pub trials: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_states: 6,
            max_variables: 3,
            max_actors: 2,
            max_actions: 3,
            max_mech_entries: 8,
            max_formula_depth: 4,
            trials: 200,
        }
    }
}
