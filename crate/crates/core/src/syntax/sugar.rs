use super::{Formula, NameSet};

/// Reserved atom behind `true`, which expands to `p0 -> p0`.
pub const TRUE_ATOM: &str = "p0";

/// Rewrites sugar into the five core constructors.
///
/// - `K{X}φ` becomes `B{}{X}φ`
/// - `φ & ψ` becomes `!(φ -> !ψ)`
/// - `φ | ψ` becomes `!φ -> ψ`
/// - `φ <-> ψ` becomes `(φ -> ψ) & (ψ -> φ)`, then the conjunction is expanded
/// - `true` becomes `p0 -> p0`, `false` becomes `!true`
pub fn expand_sugar(f: &Formula) -> Formula {
    match f {
        Formula::Atom(p) => Formula::Atom(p.clone()),
        Formula::Neg(body) => Formula::neg(expand_sugar(body)),
        Formula::Impl(l, r) => Formula::implies(expand_sugar(l), expand_sugar(r)),
        Formula::Belief { trust, data, body } => {
            Formula::belief(trust.clone(), data.clone(), expand_sugar(body))
        }
        Formula::Strategy {
            coalition,
            ante,
            post,
            data,
            body,
        } => Formula::strategy(
            coalition.clone(),
            ante.clone(),
            post.clone(),
            data.clone(),
            expand_sugar(body),
        ),
        Formula::Know { data, body } => {
            Formula::belief(NameSet::new(), data.clone(), expand_sugar(body))
        }
        Formula::And(l, r) => core_and(expand_sugar(l), expand_sugar(r)),
        Formula::Or(l, r) => Formula::implies(Formula::neg(expand_sugar(l)), expand_sugar(r)),
        Formula::Iff(l, r) => {
            let (l, r) = (expand_sugar(l), expand_sugar(r));
            core_and(
                Formula::implies(l.clone(), r.clone()),
                Formula::implies(r, l),
            )
        }
        Formula::True => core_true(),
        Formula::False => Formula::neg(core_true()),
    }
}

fn core_true() -> Formula {
    Formula::implies(Formula::atom(TRUE_ATOM), Formula::atom(TRUE_ATOM))
}

fn core_and(l: Formula, r: Formula) -> Formula {
    Formula::neg(Formula::implies(l, Formula::neg(r)))
}

/// Whether `f` uses only the core constructors.
pub fn is_desugared(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Neg(_) | Formula::Impl(..) | Formula::Belief { .. } | Formula::Strategy { .. } => {
            f.children().all(is_desugared)
        }
        _ => false,
    }
}
