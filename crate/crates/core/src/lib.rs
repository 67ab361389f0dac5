//! Model checking and proof checking for a logic of trust-based beliefs and
//! doxastic strategies.
//!
//! - [`syntax`]: formulas, concrete syntax, sugar, propositional tautologies.
//! - [`game`]: finite games with per-variable indistinguishability and
//!   per-state trustworthiness.
//! - [`checker`]: the satisfaction relation, strategy synthesis and an
//!   independent naive evaluator.
//! - [`hilbert`]: axiom schemas, derivation checking and derivation
//!   transformers.
//! - [`harness`]: random games, formulas and derivations; the soundness fuzzer.

pub mod bundled;
pub mod checker;
pub mod game;
pub mod harness;
pub mod hilbert;
pub mod syntax;

pub use checker::{
    evaluate_all, find_strategy, naive_satisfies, satisfies, CheckError, CheckOptions, CheckResult,
    Checker, StrategyQuery,
};
pub use game::{load_game, ActionProfile, Game, GameError};
pub use hilbert::{check_derivation, Derivation, ProofLine, Rule, Schema};
pub use syntax::{expand_sugar, parse, print, ActorSet, Formula, NameSet, ParseError, VarSet};
