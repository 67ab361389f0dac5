use std::collections::HashMap;

use thiserror::Error;

use super::{expand_sugar, is_desugared, Formula};

/// Largest number of propositional letters the truth table will enumerate.
pub const MAX_LETTERS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautologyError {
    #[error("propositional abstraction has {0} letters, more than the limit of {MAX_LETTERS}")]
    AbstractionTooLarge(usize),
}

enum Prop {
    Letter(usize),
    Not(Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
}

impl Prop {
    fn eval(&self, assignment: u32) -> bool {
        match self {
            Prop::Letter(i) => assignment >> i & 1 == 1,
            Prop::Not(p) => !p.eval(assignment),
            Prop::Implies(a, b) => !a.eval(assignment) || b.eval(assignment),
        }
    }
}

fn abstract_formula<'f>(f: &'f Formula, letters: &mut HashMap<&'f Formula, usize>) -> Prop {
    match f {
        Formula::Neg(body) => Prop::Not(Box::new(abstract_formula(body, letters))),
        Formula::Impl(l, r) => Prop::Implies(
            Box::new(abstract_formula(l, letters)),
            Box::new(abstract_formula(r, letters)),
        ),
        other => {
            let next = letters.len();
            Prop::Letter(*letters.entry(other).or_insert(next))
        }
    }
}

/// Decides whether `f` is an instance of a propositional tautology.
///
/// Every maximal subformula not built from `!` and `->` (atoms and modal
/// formulas) becomes a propositional letter, structurally equal subformulas
/// sharing one letter. Validity is then decided by the full truth table.
pub fn is_prop_tautology(f: &Formula) -> Result<bool, TautologyError> {
    let owned;
    let f = if is_desugared(f) {
        f
    } else {
        owned = expand_sugar(f);
        &owned
    };
    let mut letters = HashMap::new();
    let prop = abstract_formula(f, &mut letters);
    let k = letters.len();
    if k > MAX_LETTERS {
        return Err(TautologyError::AbstractionTooLarge(k));
    }
    Ok((0..1u32 << k).all(|assignment| prop.eval(assignment)))
}
