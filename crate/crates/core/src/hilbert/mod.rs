//! Hilbert-style derivations: axiom schemas, the line-by-line checker, and
//! transformers between derivations.
//!
//! Line numbers are 1-based everywhere (premise references, failure reports,
//! the values returned by [`Derivation::push`]). Hypothesis indices are
//! 0-based positions in [`Derivation::hypotheses`].

pub mod builtin;
mod file;
pub mod schema;
mod transform;

use std::borrow::Cow;
use std::fmt;

use thiserror::Error;

use crate::syntax::{expand_sugar, is_desugared, is_prop_tautology, Formula, NameSet};

pub use file::{load_derivation, ProofFileError};
pub use schema::{match_axiom, Schema, UnknownSchema};
pub use transform::{b_lift_transform, box_lift_transform, deduction_transform, TransformError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Instance of a propositional tautology.
    Tautology,
    Axiom(Schema),
    /// The hypothesis at this 0-based index.
    Hypothesis(usize),
    /// From line `minor` (`φ`) and line `major` (`φ -> ψ`), infer `ψ`.
    ModusPonens(usize, usize),
    /// From line `i` (`φ`), infer `B{}{}φ`. Only for lines that do not depend
    /// on hypotheses.
    Necessitation(usize),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Tautology => write!(f, "Taut"),
            Rule::Axiom(s) => write!(f, "Axiom:{s}"),
            Rule::Hypothesis(i) => write!(f, "Hyp {i}"),
            Rule::ModusPonens(i, j) => write!(f, "MP {i}, {j}"),
            Rule::Necessitation(i) => write!(f, "Nec {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofLine {
    pub formula: Formula,
    pub rule: Rule,
}

/// A derivation of its last line from `hypotheses`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl Derivation {
    pub fn new(hypotheses: Vec<Formula>) -> Self {
        Derivation {
            hypotheses,
            lines: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The formula on 1-based line `n`.
    pub fn formula(&self, n: usize) -> &Formula {
        &self.lines[n - 1].formula
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    /// Appends a line and returns its 1-based number.
    pub fn push(&mut self, formula: Formula, rule: Rule) -> usize {
        self.lines.push(ProofLine { formula, rule });
        self.lines.len()
    }

    pub fn taut(&mut self, formula: Formula) -> usize {
        self.push(formula, Rule::Tautology)
    }

    pub fn axiom(&mut self, schema: Schema, formula: Formula) -> usize {
        self.push(formula, Rule::Axiom(schema))
    }

    /// # Panics
    /// If there is no hypothesis `index`.
    pub fn hyp(&mut self, index: usize) -> usize {
        let formula = self.hypotheses[index].clone();
        self.push(formula, Rule::Hypothesis(index))
    }

    /// Modus ponens, taking the consequent of line `major` as the formula.
    ///
    /// # Panics
    /// If line `major` is not an implication.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let formula = match self.formula(major) {
            Formula::Impl(_, rhs) => rhs.as_ref().clone(),
            other => match expand_sugar(other) {
                Formula::Impl(_, rhs) => *rhs,
                _ => panic!("line {major} is not an implication: {other}"),
            },
        };
        self.push(formula, Rule::ModusPonens(minor, major))
    }

    pub fn nec(&mut self, premise: usize) -> usize {
        let formula = Formula::belief(NameSet::new(), NameSet::new(), self.formula(premise).clone());
        self.push(formula, Rule::Necessitation(premise))
    }

    /// For each line, whether it depends on a hypothesis: `Hyp` lines do, `MP`
    /// lines inherit from either premise, everything else does not.
    /// Out-of-range references count as independent.
    pub fn hypothesis_dependence(&self) -> Vec<bool> {
        let mut dep: Vec<bool> = Vec::with_capacity(self.lines.len());
        for line in &self.lines {
            let get = |i: usize| i >= 1 && i <= dep.len() && dep[i - 1];
            let d = match line.rule {
                Rule::Hypothesis(_) => true,
                Rule::ModusPonens(i, j) => get(i) || get(j),
                _ => false,
            };
            dep.push(d);
        }
        dep
    }

    pub fn to_json(&self) -> String {
        file::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, ProofFileError> {
        file::from_json(text)
    }
}

/// Options for [`check_derivation_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProofConfig {
    /// Accept [`Schema::GeneralizedPublicBelief`] as an axiom.
    pub generalized_public_belief: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Failure {
    #[error("derivation has no lines")]
    Empty,
    #[error("not a propositional tautology")]
    NotATautology,
    #[error("too many propositional letters ({0}) to decide tautology")]
    TautologyTooLarge(usize),
    #[error("not an instance of {0}")]
    NotAnInstance(Schema),
    #[error("axiom {0} is not enabled")]
    SchemaDisabled(Schema),
    #[error("no hypothesis with index {0}")]
    NoSuchHypothesis(usize),
    #[error("formula differs from hypothesis {0}")]
    HypothesisMismatch(usize),
    #[error("premise {0} does not refer to an earlier line")]
    BadReference(usize),
    #[error("line {major} is not an implication from line {minor} to this formula")]
    ModusPonensMismatch { minor: usize, major: usize },
    #[error("necessitation applied to line {0}, which depends on hypotheses")]
    NecessitationOnHypothesis(usize),
    #[error("formula is not B{{}}{{}} applied to line {0}")]
    NecessitationMismatch(usize),
}

/// The first line that fails to check. `line` is 0 for [`Failure::Empty`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct LineFailure {
    pub line: usize,
    pub reason: Failure,
}

fn desugared(f: &Formula) -> Cow<'_, Formula> {
    if is_desugared(f) {
        Cow::Borrowed(f)
    } else {
        Cow::Owned(expand_sugar(f))
    }
}

/// Checks every line under the default [`ProofConfig`].
pub fn check_derivation(d: &Derivation) -> Result<(), LineFailure> {
    check_derivation_with(d, &ProofConfig::default())
}

pub fn check_derivation_with(d: &Derivation, config: &ProofConfig) -> Result<(), LineFailure> {
    verify(d, config).map(|_| ())
}

/// Checks `d` and returns the hypothesis dependence of every line.
fn verify(d: &Derivation, config: &ProofConfig) -> Result<Vec<bool>, LineFailure> {
    if d.lines.is_empty() {
        return Err(LineFailure {
            line: 0,
            reason: Failure::Empty,
        });
    }
    let hyps: Vec<Cow<'_, Formula>> = d.hypotheses.iter().map(desugared).collect();
    let mut formulas: Vec<Cow<'_, Formula>> = Vec::with_capacity(d.lines.len());
    let mut dep: Vec<bool> = Vec::with_capacity(d.lines.len());
    for (k, line) in d.lines.iter().enumerate() {
        let n = k + 1;
        let fail = |reason| LineFailure { line: n, reason };
        let f = desugared(&line.formula);
        let earlier = |i: usize| {
            if i >= 1 && i < n {
                Ok(i - 1)
            } else {
                Err(fail(Failure::BadReference(i)))
            }
        };
        let depends = match line.rule {
            Rule::Tautology => match is_prop_tautology(&f) {
                Ok(true) => false,
                Ok(false) => return Err(fail(Failure::NotATautology)),
                Err(crate::syntax::TautologyError::AbstractionTooLarge(m)) => {
                    return Err(fail(Failure::TautologyTooLarge(m)))
                }
            },
            Rule::Axiom(schema) => {
                if schema == Schema::GeneralizedPublicBelief && !config.generalized_public_belief {
                    return Err(fail(Failure::SchemaDisabled(schema)));
                }
                if !match_axiom(&f, schema) {
                    return Err(fail(Failure::NotAnInstance(schema)));
                }
                false
            }
            Rule::Hypothesis(i) => {
                let h = hyps.get(i).ok_or_else(|| fail(Failure::NoSuchHypothesis(i)))?;
                if h.as_ref() != f.as_ref() {
                    return Err(fail(Failure::HypothesisMismatch(i)));
                }
                true
            }
            Rule::ModusPonens(minor, major) => {
                let (a, b) = (earlier(minor)?, earlier(major)?);
                let ok = matches!(formulas[b].as_ref(),
                    Formula::Impl(l, r) if **l == *formulas[a] && **r == *f);
                if !ok {
                    return Err(fail(Failure::ModusPonensMismatch { minor, major }));
                }
                dep[a] || dep[b]
            }
            Rule::Necessitation(i) => {
                let a = earlier(i)?;
                if dep[a] {
                    return Err(fail(Failure::NecessitationOnHypothesis(i)));
                }
                let ok = matches!(f.as_ref(),
                    Formula::Belief { trust, data, body }
                        if trust.is_empty() && data.is_empty() && **body == *formulas[a]);
                if !ok {
                    return Err(fail(Failure::NecessitationMismatch(i)));
                }
                false
            }
        };
        formulas.push(f);
        dep.push(depends);
    }
    Ok(dep)
}

#[cfg(test)]
mod tests;
