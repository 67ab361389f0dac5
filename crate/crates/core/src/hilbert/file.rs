//! JSON proof files.
//!
//! ```json
//! {"hypotheses": ["p"],
//!  "lines": [{"formula": "p", "rule": "Hyp", "index": 0},
//!            {"formula": "p -> p | q", "rule": "Taut"},
//!            {"formula": "p | q", "rule": "MP", "premises": [1, 2]}]}
//! ```
//!
//! Rules are `Taut`, `Axiom:<Schema>`, `Hyp` (with `index`), `MP` (with
//! `premises: [minor, major]`) and `Nec` (with `premise`).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Derivation, ProofLine, Rule, Schema};
use crate::syntax::{parse, print, Formula, ParseError};

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("malformed proof file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("hypothesis {index}: {source}")]
    Hypothesis { index: usize, source: ParseError },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: {message}")]
    Rule { line: usize, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProofFile {
    hypotheses: Vec<String>,
    lines: Vec<LineFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineFile {
    formula: String,
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    premises: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    premise: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
}

pub(super) fn to_json(d: &Derivation) -> String {
    let file = ProofFile {
        hypotheses: d.hypotheses.iter().map(print).collect(),
        lines: d
            .lines
            .iter()
            .map(|l| {
                let mut line = LineFile {
                    formula: print(&l.formula),
                    rule: String::new(),
                    premises: None,
                    premise: None,
                    index: None,
                };
                line.rule = match l.rule {
                    Rule::Tautology => "Taut".into(),
                    Rule::Axiom(s) => format!("Axiom:{s}"),
                    Rule::Hypothesis(i) => {
                        line.index = Some(i);
                        "Hyp".into()
                    }
                    Rule::ModusPonens(i, j) => {
                        line.premises = Some(vec![i, j]);
                        "MP".into()
                    }
                    Rule::Necessitation(i) => {
                        line.premise = Some(i);
                        "Nec".into()
                    }
                };
                line
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("proof serializes");
    text.push('\n');
    text
}

fn rule(n: usize, line: &LineFile) -> Result<Rule, ProofFileError> {
    let err = |message: String| ProofFileError::Rule { line: n, message };
    let fields = [
        ("premises", line.premises.is_some()),
        ("premise", line.premise.is_some()),
        ("index", line.index.is_some()),
    ];
    let expected = match line.rule.as_str() {
        "MP" => Some("premises"),
        "Nec" => Some("premise"),
        "Hyp" => Some("index"),
        _ => None,
    };
    for (name, present) in fields {
        if present && expected != Some(name) {
            return Err(err(format!("field '{name}' is not allowed for rule '{}'", line.rule)));
        }
    }
    let missing = |name: &str| err(format!("rule '{}' requires field '{name}'", line.rule));
    Ok(match line.rule.as_str() {
        "Taut" => Rule::Tautology,
        "Hyp" => Rule::Hypothesis(line.index.ok_or_else(|| missing("index"))?),
        "Nec" => Rule::Necessitation(line.premise.ok_or_else(|| missing("premise"))?),
        "MP" => match line.premises.as_deref() {
            Some(&[i, j]) => Rule::ModusPonens(i, j),
            Some(_) => return Err(err("'premises' must have exactly two entries".into())),
            None => return Err(missing("premises")),
        },
        other => match other.strip_prefix("Axiom:") {
            Some(name) => Rule::Axiom(name.parse::<Schema>().map_err(|e| err(e.to_string()))?),
            None => return Err(err(format!("unknown rule '{other}'"))),
        },
    })
}

pub(super) fn from_json(text: &str) -> Result<Derivation, ProofFileError> {
    let file: ProofFile = serde_json::from_str(text)?;
    let hypotheses = file
        .hypotheses
        .iter()
        .enumerate()
        .map(|(index, h)| parse(h).map_err(|source| ProofFileError::Hypothesis { index, source }))
        .collect::<Result<Vec<Formula>, _>>()?;
    let lines = file
        .lines
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let formula = parse(&l.formula).map_err(|source| ProofFileError::Formula { line: k + 1, source })?;
            Ok(ProofLine {
                formula,
                rule: rule(k + 1, l)?,
            })
        })
        .collect::<Result<Vec<_>, ProofFileError>>()?;
    Ok(Derivation { hypotheses, lines })
}

pub fn load_derivation(path: impl AsRef<Path>) -> Result<Derivation, ProofFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ProofFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(&text)
}
