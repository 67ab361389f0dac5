use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Wildcard marker in a mechanism profile.
pub const WILDCARD: &str = "*";

/// On-disk JSON shape of a game. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub variables: Vec<String>,
    pub actors: Vec<String>,
    pub actions: Vec<String>,
    pub states: Vec<StateFile>,
    pub mechanism: Vec<EntryFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub name: String,
    /// Value tag of every declared variable.
    pub values: BTreeMap<String, String>,
    pub trustworthy: Vec<String>,
    pub atoms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub from: String,
    /// Actor to action; omitted actors and `"*"` match any action.
    pub profile: BTreeMap<String, String>,
    pub to: String,
}
