//! Finite games: states carrying variable values, trustworthy sets and atom
//! valuations, plus a mechanism of transitions labelled by complete action
//! profiles.
//!
//! Indistinguishability is induced by value tags: two states are
//! indistinguishable by `x` iff they carry the same tag for `x`. The tags are
//! opaque; only equality matters.

mod file;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{is_identifier, ActorSet, NameSet, VarSet};

pub use file::{EntryFile, GameFile, StateFile, WILDCARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameKind {
    Variable,
    Actor,
    Action,
    State,
    Atom,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Variable => "variable",
            NameKind::Actor => "actor",
            NameKind::Action => "action",
            NameKind::State => "state",
            NameKind::Atom => "atom",
        })
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("malformed game document: {0}")]
    Syntax(String),
    #[error("game schema error: {0}")]
    Schema(String),
    #[error("game declares no actions")]
    EmptyActionSet,
    #[error("duplicate state name '{0}'")]
    DuplicateState(String),
    #[error("{kind} '{name}' declared twice")]
    DuplicateDeclaration { kind: NameKind, name: String },
    #[error("'{name}' is not a valid {kind} name")]
    InvalidName { kind: NameKind, name: String },
    #[error("undeclared {kind} '{name}' in {context}")]
    Undeclared {
        kind: NameKind,
        name: String,
        context: String,
    },
    #[error("state '{state}' has no value for variable '{variable}'")]
    MissingValue { state: String, variable: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl GameError {
    fn undeclared(kind: NameKind, name: &str, context: impl Into<String>) -> Self {
        GameError::Undeclared {
            kind,
            name: name.to_string(),
            context: context.into(),
        }
    }
}

/// An assignment of actions to the actors of a coalition, by name.
///
/// The profile of the empty coalition is the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionProfile(BTreeMap<String, String>);

impl ActionProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, actor: impl Into<String>, action: impl Into<String>) -> Option<String> {
        self.0.insert(actor.into(), action.into())
    }

    pub fn get(&self, actor: &str) -> Option<&str> {
        self.0.get(actor).map(String::as_str)
    }

    pub fn domain(&self) -> ActorSet {
        self.0.keys().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.0.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self =_C other`: both assign the same action to every member of `coalition`.
    pub fn agrees_on(&self, other: &ActionProfile, coalition: &ActorSet) -> bool {
        coalition.iter().all(|a| self.get(a) == other.get(a))
    }
}

impl<A: Into<String>, B: Into<String>> FromIterator<(A, B)> for ActionProfile {
    fn from_iter<I: IntoIterator<Item = (A, B)>>(iter: I) -> Self {
        ActionProfile(iter.into_iter().map(|(a, b)| (a.into(), b.into())).collect())
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (actor, action)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{actor}: {action}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone)]
pub struct State {
    name: String,
    tags: Vec<u32>,
    trustworthy: Vec<bool>,
    trust_set: VarSet,
    atoms: NameSet,
}

impl State {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trustworthy(&self) -> &VarSet {
        &self.trust_set
    }

    pub fn atoms(&self) -> &NameSet {
        &self.atoms
    }
}

/// A compiled mechanism entry; `pattern[a]` is `None` for a wildcard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismEntry {
    pub from: usize,
    pub to: usize,
    pub pattern: Vec<Option<usize>>,
}

impl MechanismEntry {
    /// Whether the complete profile `delta` (action indices by actor index)
    /// matches this entry.
    pub fn matches(&self, delta: &[usize]) -> bool {
        self.pattern
            .iter()
            .zip(delta)
            .all(|(p, d)| p.is_none_or(|p| p == *d))
    }
}

#[derive(Debug, Clone)]
pub struct Game {
    source: GameFile,
    variables: Vec<String>,
    actors: Vec<String>,
    actions: Vec<String>,
    var_index: HashMap<String, usize>,
    actor_index: HashMap<String, usize>,
    action_index: HashMap<String, usize>,
    states: Vec<State>,
    state_index: HashMap<String, usize>,
    mechanism: Vec<MechanismEntry>,
    outgoing: Vec<Vec<usize>>,
}

fn declare(kind: NameKind, names: &[String]) -> Result<HashMap<String, usize>, GameError> {
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if !is_identifier(name) {
            return Err(GameError::InvalidName {
                kind,
                name: name.clone(),
            });
        }
        if index.insert(name.clone(), i).is_some() {
            return Err(GameError::DuplicateDeclaration {
                kind,
                name: name.clone(),
            });
        }
    }
    Ok(index)
}

impl Game {
    /// Validates a parsed document and builds the game.
    pub fn from_file(file: GameFile) -> Result<Game, GameError> {
        if file.actions.is_empty() {
            return Err(GameError::EmptyActionSet);
        }
        let var_index = declare(NameKind::Variable, &file.variables)?;
        let actor_index = declare(NameKind::Actor, &file.actors)?;
        let action_index = declare(NameKind::Action, &file.actions)?;

        let mut state_index = HashMap::new();
        let mut tag_ids: Vec<HashMap<&str, u32>> = vec![HashMap::new(); file.variables.len()];
        let mut states = Vec::with_capacity(file.states.len());
        for (i, s) in file.states.iter().enumerate() {
            if s.name.is_empty() {
                return Err(GameError::InvalidName {
                    kind: NameKind::State,
                    name: s.name.clone(),
                });
            }
            if state_index.insert(s.name.clone(), i).is_some() {
                return Err(GameError::DuplicateState(s.name.clone()));
            }
            let context = || format!("state '{}'", s.name);
            for var in s.values.keys() {
                if !var_index.contains_key(var) {
                    return Err(GameError::undeclared(NameKind::Variable, var, context()));
                }
            }
            let mut tags = Vec::with_capacity(file.variables.len());
            for (x, var) in file.variables.iter().enumerate() {
                let value = s.values.get(var).ok_or_else(|| GameError::MissingValue {
                    state: s.name.clone(),
                    variable: var.clone(),
                })?;
                let next = tag_ids[x].len() as u32;
                tags.push(*tag_ids[x].entry(value.as_str()).or_insert(next));
            }
            let mut trustworthy = vec![false; file.variables.len()];
            for var in &s.trustworthy {
                let x = *var_index
                    .get(var)
                    .ok_or_else(|| GameError::undeclared(NameKind::Variable, var, context()))?;
                trustworthy[x] = true;
            }
            for atom in &s.atoms {
                if !is_identifier(atom) {
                    return Err(GameError::InvalidName {
                        kind: NameKind::Atom,
                        name: atom.clone(),
                    });
                }
            }
            states.push(State {
                name: s.name.clone(),
                tags,
                trustworthy,
                trust_set: s.trustworthy.iter().collect(),
                atoms: s.atoms.iter().collect(),
            });
        }

        let mut mechanism = Vec::with_capacity(file.mechanism.len());
        let mut outgoing = vec![Vec::new(); states.len()];
        for (i, e) in file.mechanism.iter().enumerate() {
            let context = || format!("mechanism entry {}", i + 1);
            let from = *state_index
                .get(&e.from)
                .ok_or_else(|| GameError::undeclared(NameKind::State, &e.from, context()))?;
            let to = *state_index
                .get(&e.to)
                .ok_or_else(|| GameError::undeclared(NameKind::State, &e.to, context()))?;
            let mut pattern = vec![None; file.actors.len()];
            for (actor, action) in &e.profile {
                let a = *actor_index
                    .get(actor)
                    .ok_or_else(|| GameError::undeclared(NameKind::Actor, actor, context()))?;
                if action != WILDCARD {
                    let d = *action_index
                        .get(action)
                        .ok_or_else(|| GameError::undeclared(NameKind::Action, action, context()))?;
                    pattern[a] = Some(d);
                }
            }
            outgoing[from].push(mechanism.len());
            mechanism.push(MechanismEntry { from, to, pattern });
        }

        Ok(Game {
            variables: file.variables.clone(),
            actors: file.actors.clone(),
            actions: file.actions.clone(),
            source: file,
            var_index,
            actor_index,
            action_index,
            states,
            state_index,
            mechanism,
            outgoing,
        })
    }

    /// Parses and validates a JSON game document.
    pub fn from_json(text: &str) -> Result<Game, GameError> {
        let file: GameFile = serde_json::from_str(text).map_err(|e| match e.classify() {
            serde_json::error::Category::Data => GameError::Schema(e.to_string()),
            _ => GameError::Syntax(e.to_string()),
        })?;
        Game::from_file(file)
    }

    /// The document this game was built from.
    pub fn to_file(&self) -> &GameFile {
        &self.source
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.source).expect("game documents always serialize")
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn actors(&self) -> &[String] {
        &self.actors
    }

    /// Actions in declared order.
    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn mechanism(&self) -> &[MechanismEntry] {
        &self.mechanism
    }

    /// Indices of mechanism entries leaving state `w`.
    pub fn outgoing(&self, w: usize) -> &[usize] {
        &self.outgoing[w]
    }

    pub fn state(&self, w: usize) -> &State {
        &self.states[w]
    }

    pub fn state_id(&self, name: &str) -> Result<usize, GameError> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| GameError::undeclared(NameKind::State, name, "query"))
    }

    pub fn var_id(&self, name: &str) -> Result<usize, GameError> {
        self.var_index
            .get(name)
            .copied()
            .ok_or_else(|| GameError::undeclared(NameKind::Variable, name, "query"))
    }

    pub fn actor_id(&self, name: &str) -> Result<usize, GameError> {
        self.actor_index
            .get(name)
            .copied()
            .ok_or_else(|| GameError::undeclared(NameKind::Actor, name, "query"))
    }

    pub fn action_id(&self, name: &str) -> Result<usize, GameError> {
        self.action_index
            .get(name)
            .copied()
            .ok_or_else(|| GameError::undeclared(NameKind::Action, name, "query"))
    }

    /// Variable indices of a dataset.
    pub fn var_ids(&self, vars: &VarSet) -> Result<Vec<usize>, GameError> {
        vars.iter().map(|x| self.var_id(x)).collect()
    }

    /// Actor indices of a coalition, in sorted name order.
    pub fn actor_ids(&self, actors: &ActorSet) -> Result<Vec<usize>, GameError> {
        actors.iter().map(|a| self.actor_id(a)).collect()
    }

    /// `w ~_X u` over variable indices.
    pub fn indist_ids(&self, w: usize, u: usize, vars: &[usize]) -> bool {
        let (a, b) = (&self.states[w].tags, &self.states[u].tags);
        vars.iter().all(|&x| a[x] == b[x])
    }

    /// Whether every variable in `vars` is trustworthy in `w`.
    pub fn trusts_ids(&self, w: usize, vars: &[usize]) -> bool {
        vars.iter().all(|&x| self.states[w].trustworthy[x])
    }

    pub fn has_atom(&self, w: usize, atom: &str) -> bool {
        self.states[w].atoms.contains(atom)
    }

    /// `w ~_X u`: the states agree on every variable of `vars`. Vacuously true
    /// for the empty dataset.
    pub fn indist(&self, w: &str, u: &str, vars: &VarSet) -> Result<bool, GameError> {
        let (w, u) = (self.state_id(w)?, self.state_id(u)?);
        let ids = self.var_ids(vars)?;
        Ok(self.indist_ids(w, u, &ids))
    }

    /// `(u, delta, v) ∈ M` for a complete profile given by action indices.
    pub fn has_transition(&self, u: usize, delta: &[usize], v: usize) -> bool {
        self.outgoing[u]
            .iter()
            .map(|&e| &self.mechanism[e])
            .any(|e| e.to == v && e.matches(delta))
    }

    fn profile_pattern(&self, profile: &ActionProfile) -> Result<Vec<Option<usize>>, GameError> {
        let mut pattern = vec![None; self.actors.len()];
        for (actor, action) in profile.iter() {
            pattern[self.actor_id(actor)?] = Some(self.action_id(action)?);
        }
        Ok(pattern)
    }

    /// Converts action indices by actor index into a named complete profile.
    pub fn complete_profile(&self, delta: &[usize]) -> ActionProfile {
        self.actors
            .iter()
            .zip(delta)
            .map(|(a, &d)| (a.clone(), self.actions[d].clone()))
            .collect()
    }

    /// All `(delta, v)` with `(u, delta, v) ∈ M` and `delta` agreeing with
    /// `constraint` on its domain. Complete profiles are produced lazily, one
    /// per call to `next`, and each pair is yielded once.
    pub fn successors(&self, u: &str, constraint: &ActionProfile) -> Result<Successors<'_>, GameError> {
        let u = self.state_id(u)?;
        let constraint = self.profile_pattern(constraint)?;
        Ok(Successors {
            game: self,
            entries: &self.outgoing[u],
            constraint,
            pos: 0,
            cursor: None,
        })
    }
}

struct Cursor {
    entry: usize,
    delta: Vec<usize>,
    free: Vec<usize>,
    exhausted: bool,
}

/// Iterator returned by [`Game::successors`].
pub struct Successors<'g> {
    game: &'g Game,
    entries: &'g [usize],
    constraint: Vec<Option<usize>>,
    pos: usize,
    cursor: Option<Cursor>,
}

impl Successors<'_> {
    fn open(&self, e: usize) -> Option<Cursor> {
        let entry = &self.game.mechanism[e];
        let mut delta = vec![0; self.constraint.len()];
        let mut free = Vec::new();
        for (a, (p, c)) in entry.pattern.iter().zip(&self.constraint).enumerate() {
            match (p, c) {
                (Some(p), Some(c)) if p != c => return None,
                (Some(d), _) | (None, Some(d)) => delta[a] = *d,
                (None, None) => free.push(a),
            }
        }
        Some(Cursor {
            entry: e,
            delta,
            free,
            exhausted: false,
        })
    }
}

impl<'g> Iterator for Successors<'g> {
    type Item = (ActionProfile, &'g str);

    fn next(&mut self) -> Option<Self::Item> {
        let n_actions = self.game.actions.len();
        loop {
            if self.cursor.as_ref().is_none_or(|c| c.exhausted) {
                self.cursor = None;
                while self.cursor.is_none() {
                    let &e = self.entries.get(self.pos)?;
                    self.pos += 1;
                    self.cursor = self.open(e);
                }
            }
            let cursor = self.cursor.as_mut()?;
            let delta = cursor.delta.clone();
            let entry = cursor.entry;
            // odometer over the free actors
            cursor.exhausted = true;
            for &a in cursor.free.iter().rev() {
                cursor.delta[a] += 1;
                if cursor.delta[a] < n_actions {
                    cursor.exhausted = false;
                    break;
                }
                cursor.delta[a] = 0;
            }
            let to = self.game.mechanism[entry].to;
            let seen = self.entries[..self.pos - 1].iter().any(|&earlier| {
                let e = &self.game.mechanism[earlier];
                e.to == to && e.matches(&delta)
            });
            if !seen {
                return Some((self.game.complete_profile(&delta), &self.game.states[to].name));
            }
        }
    }
}

/// Reads and validates a game file.
pub fn load_game(path: impl AsRef<Path>) -> Result<Game, GameError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| GameError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Game::from_json(&text)
}
