//! The satisfaction relation over finite games, strategy synthesis, and an
//! independent naive evaluator used for cross-validation.
//!
//! Strategy modalities are decided without enumerating complete action
//! profiles. For a fixed coalition profile `s`, the universal condition fails
//! iff some mechanism entry leaving a relevant state leads to a bad state and
//! its pattern is compatible with `s`: any compatible entry is matched by some
//! complete profile that agrees with `s` on the coalition, since the action
//! set is nonempty. So the check collects the coalition-restricted patterns of
//! all bad entries and looks for an `s` that contradicts each of them.

mod naive;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::game::{ActionProfile, Game, GameError};
use crate::syntax::{expand_sugar, ActorSet, Formula, VarSet};

pub use naive::naive_satisfies;

/// Default cap on the number of coalition profiles `|Δ|^|C|` enumerated for a
/// single strategy modality.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(
        "coalition of {coalition} actors over {actions} actions has more than {limit} profiles"
    )]
    BudgetExceeded {
        coalition: usize,
        actions: usize,
        limit: u64,
    },
    #[error("profile domain {found} does not match coalition {expected}")]
    ProfileMismatch { expected: ActorSet, found: ActorSet },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub enumeration_limit: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

impl CheckOptions {
    fn check_budget(&self, coalition: usize, actions: usize) -> Result<(), CheckError> {
        let count = (actions as u128).checked_pow(coalition as u32);
        match count {
            Some(n) if n <= self.enumeration_limit as u128 => Ok(()),
            _ => Err(CheckError::BudgetExceeded {
                coalition,
                actions,
                limit: self.enumeration_limit,
            }),
        }
    }
}

/// The arguments of a strategy modality `[C]{A;P}{X} goal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyQuery {
    pub coalition: ActorSet,
    pub ante: VarSet,
    pub post: VarSet,
    pub data: VarSet,
    pub goal: Formula,
}

impl StrategyQuery {
    pub fn formula(&self) -> Formula {
        Formula::strategy(
            self.coalition.clone(),
            self.ante.clone(),
            self.post.clone(),
            self.data.clone(),
            self.goal.clone(),
        )
    }
}

/// A transition `(from, profile, to)` of the mechanism that refutes a
/// proposed coalition profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub from: String,
    pub profile: ActionProfile,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub verdict: bool,
    pub witness: Option<ActionProfile>,
    pub counterexample: Option<Counterexample>,
}

type NodeId = usize;

#[derive(Debug, PartialEq, Eq, Hash)]
struct StrategyNode {
    coalition: Vec<usize>,
    ante: Vec<usize>,
    post: Vec<usize>,
    data: Vec<usize>,
    body: NodeId,
}

/// Hash-consed core formula over game indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Atom(String),
    Neg(NodeId),
    Impl(NodeId, NodeId),
    Belief {
        trust: Arc<[usize]>,
        data: Arc<[usize]>,
        body: NodeId,
    },
    Strategy(Arc<StrategyNode>),
}

/// Memoizing evaluator for one game.
///
/// Subformulas are interned, so structurally equal subformulas share one memo
/// row across every formula evaluated with the same checker.
pub struct Checker<'g> {
    game: &'g Game,
    options: CheckOptions,
    nodes: Vec<Node>,
    interned: HashMap<Node, NodeId>,
    memo: Vec<Vec<Option<bool>>>,
}

impl<'g> Checker<'g> {
    pub fn new(game: &'g Game) -> Self {
        Self::with_options(game, CheckOptions::default())
    }

    pub fn with_options(game: &'g Game, options: CheckOptions) -> Self {
        Checker {
            game,
            options,
            nodes: Vec::new(),
            interned: HashMap::new(),
            memo: Vec::new(),
        }
    }

    pub fn game(&self) -> &'g Game {
        self.game
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.interned.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.interned.insert(node, id);
        self.memo.push(vec![None; self.game.states().len()]);
        id
    }

    fn compile(&mut self, f: &Formula) -> Result<NodeId, CheckError> {
        self.compile_core(&expand_sugar(f))
    }

    fn compile_core(&mut self, f: &Formula) -> Result<NodeId, CheckError> {
        let node = match f {
            Formula::Atom(p) => Node::Atom(p.clone()),
            Formula::Neg(body) => Node::Neg(self.compile_core(body)?),
            Formula::Impl(l, r) => {
                let l = self.compile_core(l)?;
                Node::Impl(l, self.compile_core(r)?)
            }
            Formula::Belief { trust, data, body } => Node::Belief {
                trust: self.game.var_ids(trust)?.into(),
                data: self.game.var_ids(data)?.into(),
                body: self.compile_core(body)?,
            },
            Formula::Strategy {
                coalition,
                ante,
                post,
                data,
                body,
            } => {
                let coalition = self.game.actor_ids(coalition)?;
                self.options
                    .check_budget(coalition.len(), self.game.actions().len())?;
                Node::Strategy(Arc::new(StrategyNode {
                    coalition,
                    ante: self.game.var_ids(ante)?,
                    post: self.game.var_ids(post)?,
                    data: self.game.var_ids(data)?,
                    body: self.compile_core(body)?,
                }))
            }
            _ => unreachable!("sugar expanded before compilation"),
        };
        Ok(self.intern(node))
    }

    fn holds(&mut self, id: NodeId, w: usize) -> bool {
        if let Some(v) = self.memo[id][w] {
            return v;
        }
        let value = match self.nodes[id].clone() {
            Node::Atom(p) => self.game.has_atom(w, &p),
            Node::Neg(body) => !self.holds(body, w),
            Node::Impl(l, r) => !self.holds(l, w) || self.holds(r, w),
            Node::Belief { trust, data, body } => (0..self.game.states().len()).all(|u| {
                !self.game.indist_ids(w, u, &data)
                    || !self.game.trusts_ids(u, &trust)
                    || self.holds(body, u)
            }),
            Node::Strategy(s) => self.witness(w, &s).is_some(),
        };
        self.memo[id][w] = Some(value);
        value
    }

    /// Coalition-restricted patterns of every mechanism entry that leads from
    /// a relevant state to a state refuting the goal.
    fn blocking_patterns(&mut self, w: usize, s: &StrategyNode) -> Vec<Vec<Option<usize>>> {
        let game = self.game;
        let mut blocks = Vec::new();
        for u in 0..game.states().len() {
            if !game.indist_ids(w, u, &s.data) || !game.trusts_ids(u, &s.ante) {
                continue;
            }
            for &e in game.outgoing(u) {
                let entry = &game.mechanism()[e];
                if game.trusts_ids(entry.to, &s.post) && !self.holds(s.body, entry.to) {
                    blocks.push(s.coalition.iter().map(|&a| entry.pattern[a]).collect());
                }
            }
        }
        blocks.sort();
        blocks.dedup();
        blocks
    }

    /// The lexicographically first coalition profile (actors in sorted name
    /// order, actions in declared order) satisfying the universal condition.
    fn witness(&mut self, w: usize, s: &StrategyNode) -> Option<Vec<usize>> {
        let blocks = self.blocking_patterns(w, s);
        if blocks.iter().any(|b| b.iter().all(Option::is_none)) {
            return None;
        }
        let n_actions = self.game.actions().len();
        let mut profile = vec![0; s.coalition.len()];
        loop {
            let escapes = |block: &Vec<Option<usize>>| {
                block
                    .iter()
                    .zip(&profile)
                    .any(|(p, a)| matches!(p, Some(b) if b != a))
            };
            if blocks.iter().all(escapes) {
                return Some(profile);
            }
            let mut i = profile.len();
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                profile[i] += 1;
                if profile[i] < n_actions {
                    break;
                }
                profile[i] = 0;
            }
        }
    }

    fn named_profile(&self, coalition: &[usize], actions: &[usize]) -> ActionProfile {
        coalition
            .iter()
            .zip(actions)
            .map(|(&a, &d)| (self.game.actors()[a].clone(), self.game.actions()[d].clone()))
            .collect()
    }

    /// `w ⊩ f`.
    pub fn satisfies(&mut self, w: &str, f: &Formula) -> Result<bool, CheckError> {
        let w = self.game.state_id(w)?;
        let id = self.compile(f)?;
        Ok(self.holds(id, w))
    }

    /// Truth value of `f` at every state.
    pub fn evaluate_all(&mut self, f: &Formula) -> Result<BTreeMap<String, bool>, CheckError> {
        let id = self.compile(f)?;
        Ok((0..self.game.states().len())
            .map(|w| (self.game.state(w).name().to_string(), self.holds(id, w)))
            .collect())
    }

    /// Truth values of `f` in state order.
    pub fn extension(&mut self, f: &Formula) -> Result<Vec<bool>, CheckError> {
        let id = self.compile(f)?;
        Ok((0..self.game.states().len()).map(|w| self.holds(id, w)).collect())
    }

    fn compile_query(&mut self, q: &StrategyQuery) -> Result<Arc<StrategyNode>, CheckError> {
        let id = self.compile(&q.formula())?;
        match &self.nodes[id] {
            Node::Strategy(s) => Ok(s.clone()),
            _ => unreachable!("strategy formulas compile to strategy nodes"),
        }
    }

    /// Decides `[C]{A;P}{X} goal` at `w`, returning a witness profile when it
    /// holds.
    pub fn check_strategy(&mut self, w: &str, q: &StrategyQuery) -> Result<CheckResult, CheckError> {
        let w = self.game.state_id(w)?;
        let node = self.compile_query(q)?;
        let witness = self
            .witness(w, &node)
            .map(|s| self.named_profile(&node.coalition, &s));
        Ok(CheckResult {
            verdict: witness.is_some(),
            witness,
            counterexample: None,
        })
    }

    /// Checks whether the given coalition profile satisfies the universal
    /// condition of `[C]{A;P}{X} goal` at `w`. On failure the result carries a
    /// refuting transition with a fully materialized profile.
    pub fn check_profile(
        &mut self,
        w: &str,
        q: &StrategyQuery,
        profile: &ActionProfile,
    ) -> Result<CheckResult, CheckError> {
        let w = self.game.state_id(w)?;
        let node = self.compile_query(q)?;
        if profile.domain() != q.coalition {
            return Err(CheckError::ProfileMismatch {
                expected: q.coalition.clone(),
                found: profile.domain(),
            });
        }
        let game = self.game;
        let mut fixed = vec![None; game.actors().len()];
        for (actor, action) in profile.iter() {
            fixed[game.actor_id(actor)?] = Some(game.action_id(action)?);
        }
        for u in 0..game.states().len() {
            if !game.indist_ids(w, u, &node.data) || !game.trusts_ids(u, &node.ante) {
                continue;
            }
            for &e in game.outgoing(u) {
                let entry = &game.mechanism()[e];
                let compatible = entry.pattern.iter().zip(&fixed).all(|(p, s)| match (p, s) {
                    (Some(p), Some(s)) => p == s,
                    _ => true,
                });
                if compatible && game.trusts_ids(entry.to, &node.post) && !self.holds(node.body, entry.to) {
                    let delta: Vec<usize> = entry
                        .pattern
                        .iter()
                        .zip(&fixed)
                        .map(|(p, s)| s.or(*p).unwrap_or(0))
                        .collect();
                    return Ok(CheckResult {
                        verdict: false,
                        witness: None,
                        counterexample: Some(Counterexample {
                            from: game.state(u).name().to_string(),
                            profile: game.complete_profile(&delta),
                            to: game.state(entry.to).name().to_string(),
                        }),
                    });
                }
            }
        }
        Ok(CheckResult {
            verdict: true,
            witness: Some(profile.clone()),
            counterexample: None,
        })
    }
}

/// `w ⊩ f` with default options and a fresh memo table.
pub fn satisfies(game: &Game, w: &str, f: &Formula) -> Result<bool, CheckError> {
    Checker::new(game).satisfies(w, f)
}

/// `f` at every state, sharing one memo table. Empty for a game without states.
pub fn evaluate_all(game: &Game, f: &Formula) -> Result<BTreeMap<String, bool>, CheckError> {
    Checker::new(game).evaluate_all(f)
}

/// Some coalition profile witnessing `[C]{A;P}{X} goal` at `w`, or `None` iff
/// the modality is false there.
pub fn find_strategy(
    game: &Game,
    w: &str,
    coalition: &ActorSet,
    ante: &VarSet,
    post: &VarSet,
    data: &VarSet,
    goal: &Formula,
) -> Result<Option<ActionProfile>, CheckError> {
    let q = StrategyQuery {
        coalition: coalition.clone(),
        ante: ante.clone(),
        post: post.clone(),
        data: data.clone(),
        goal: goal.clone(),
    };
    Ok(Checker::new(game).check_strategy(w, &q)?.witness)
}
