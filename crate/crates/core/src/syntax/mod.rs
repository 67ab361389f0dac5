//! Formula language: AST, concrete syntax, sugar and the propositional
//! tautology oracle used by the proof checker.

mod parser;
mod printer;
mod sugar;
mod taut;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use parser::{parse, ParseError};
pub use printer::print;
pub use sugar::{expand_sugar, is_desugared, TRUE_ATOM};
pub use taut::{is_prop_tautology, TautologyError, MAX_LETTERS};

/// Words that cannot be used as identifiers.
pub const KEYWORDS: [&str; 4] = ["B", "K", "true", "false"];

/// Whether `s` belongs to the identifier class `[a-zA-Z_][a-zA-Z0-9_]*` and is
/// not a keyword.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&s)
}

/// A finite set of identifiers, kept sorted.
///
/// Used both for datasets (sets of data variables) and coalitions (sets of
/// actors); the two share a lexical class and are told apart by position.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NameSet(BTreeSet<String>);

/// A set of data variables.
pub type VarSet = NameSet;
/// A set of actors.
pub type ActorSet = NameSet;

impl NameSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>) -> bool {
        self.0.insert(name.into())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains(name)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Names in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &NameSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &NameSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &NameSet) -> NameSet {
        NameSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &NameSet) -> NameSet {
        NameSet(self.0.intersection(&other.0).cloned().collect())
    }
}

impl<S: Into<String>> FromIterator<S> for NameSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        NameSet(iter.into_iter().map(Into::into).collect())
    }
}

impl<'a> IntoIterator for &'a NameSet {
    type Item = &'a String;
    type IntoIter = std::collections::btree_set::Iter<'a, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Prints as a brace-delimited set literal, e.g. `{x,v}`.
impl fmt::Display for NameSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, name) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(name)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for NameSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for building a [`NameSet`] from string literals.
#[macro_export]
macro_rules! names {
    () => { $crate::syntax::NameSet::new() };
    ($($name:expr),+ $(,)?) => {
        [$($name),+].into_iter().collect::<$crate::syntax::NameSet>()
    };
}

/// A formula of the language, including the surface sugar.
///
/// Only `Atom`, `Neg`, `Impl`, `Belief` and `Strategy` survive
/// [`expand_sugar`]. The single-superscript strategy form `[C]{T}{X}` is a
/// `Strategy` with `ante == post`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    /// `B{trust}{data} body`: assuming `trust` is trustworthy, `data` informs
    /// the belief `body`.
    Belief {
        trust: VarSet,
        data: VarSet,
        body: Box<Formula>,
    },
    /// `[coalition]{ante;post}{data} body`.
    Strategy {
        coalition: ActorSet,
        ante: VarSet,
        post: VarSet,
        data: VarSet,
        body: Box<Formula>,
    },
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `K{data} body`, data-informed knowledge.
    Know {
        data: VarSet,
        body: Box<Formula>,
    },
    True,
    False,
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(body: Formula) -> Formula {
        Formula::Neg(Box::new(body))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Impl(Box::new(lhs), Box::new(rhs))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    pub fn belief(trust: VarSet, data: VarSet, body: Formula) -> Formula {
        Formula::Belief {
            trust,
            data,
            body: Box::new(body),
        }
    }

    pub fn know(data: VarSet, body: Formula) -> Formula {
        Formula::Know {
            data,
            body: Box::new(body),
        }
    }

    pub fn strategy(
        coalition: ActorSet,
        ante: VarSet,
        post: VarSet,
        data: VarSet,
        body: Formula,
    ) -> Formula {
        Formula::Strategy {
            coalition,
            ante,
            post,
            data,
            body: Box::new(body),
        }
    }

    /// `[coalition]{trust}{data} body`, trust applied ex ante and ex post.
    pub fn doxastic(coalition: ActorSet, trust: VarSet, data: VarSet, body: Formula) -> Formula {
        Formula::strategy(coalition, trust.clone(), trust, data, body)
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(Formula::size).sum::<usize>()
    }

    /// Height of the syntax tree; an atom has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().map(Formula::depth).max().unwrap_or(0)
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> impl Iterator<Item = &Formula> + '_ {
        let (a, b): (Option<&Formula>, Option<&Formula>) = match self {
            Formula::Atom(_) | Formula::True | Formula::False => (None, None),
            Formula::Neg(body)
            | Formula::Belief { body, .. }
            | Formula::Strategy { body, .. }
            | Formula::Know { body, .. } => (Some(body), None),
            Formula::Impl(l, r) | Formula::And(l, r) | Formula::Or(l, r) | Formula::Iff(l, r) => {
                (Some(l), Some(r))
            }
        };
        a.into_iter().chain(b)
    }

    /// Collects atom names, variable names and actor names mentioned anywhere
    /// in the formula.
    pub fn names(&self) -> FormulaNames {
        let mut out = FormulaNames::default();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut FormulaNames) {
        match self {
            Formula::Atom(p) => {
                out.atoms.insert(p.clone());
            }
            Formula::Belief { trust, data, .. } => {
                out.variables = out.variables.union(trust).union(data);
            }
            Formula::Know { data, .. } => {
                out.variables = out.variables.union(data);
            }
            Formula::Strategy {
                coalition,
                ante,
                post,
                data,
                ..
            } => {
                out.actors = out.actors.union(coalition);
                out.variables = out.variables.union(ante).union(post).union(data);
            }
            _ => {}
        }
        for child in self.children() {
            child.collect_names(out);
        }
    }
}

/// Names referenced by a formula, see [`Formula::names`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormulaNames {
    pub atoms: NameSet,
    pub variables: VarSet,
    pub actors: ActorSet,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", print(self))
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
