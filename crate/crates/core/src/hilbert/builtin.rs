//! Derivation templates for derived principles.

use super::schema;
use super::{box_lift_transform, Derivation, Schema};
use crate::syntax::{ActorSet, Formula, NameSet, VarSet};

fn neg(f: &Formula) -> Formula {
    Formula::neg(f.clone())
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

/// Appends `a -> c` given line `ab` (`a -> b`) and line `bc` (`b -> c`).
fn chain(d: &mut Derivation, ab: usize, bc: usize) -> usize {
    let (a, b) = match d.formula(ab) {
        Formula::Impl(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
        other => panic!("not an implication: {other}"),
    };
    let c = match d.formula(bc) {
        Formula::Impl(_, c) => c.as_ref().clone(),
        other => panic!("not an implication: {other}"),
    };
    let t = d.taut(imp(&imp(&a, &b), &imp(&imp(&b, &c), &imp(&a, &c))));
    let step = d.mp(ab, t);
    d.mp(bc, step)
}

/// Proof lines of `B{T}{X}φ -> B{}{X}B{T}{X}φ` appended to `d`; returns the
/// number of the last line.
fn push_positive_introspection(d: &mut Derivation, trust: &VarSet, data: &VarSet, phi: &Formula) -> usize {
    let none = NameSet::new();
    let b = Formula::belief(trust.clone(), data.clone(), phi.clone());
    let k = |f: &Formula| Formula::belief(NameSet::new(), data.clone(), f.clone());
    let not_b = neg(&b);
    let k_not_b = k(&not_b);
    let possible_b = neg(&k_not_b);

    // !K!b -> b, then K!K!b -> Kb
    let ni = d.axiom(Schema::NegativeIntrospection, schema::negative_introspection(trust, data, phi));
    let contra = d.taut(imp(&imp(&not_b, &k_not_b), &imp(&possible_b, &b)));
    let back = d.mp(ni, contra);
    let nec = d.nec(back);
    let widen = d.axiom(
        Schema::MonotonicityB,
        schema::monotonicity_b(&none, &none, &none, data, &imp(&possible_b, &b)),
    );
    let known = d.mp(nec, widen);
    let dist = d.axiom(Schema::Distributivity, schema::distributivity(&none, data, &possible_b, &b));
    let lift = d.mp(known, dist);

    // b -> !K!b -> K!K!b
    let truth = d.axiom(Schema::Truth, schema::truth(data, &not_b));
    let contra = d.taut(imp(&imp(&k_not_b, &not_b), &imp(&b, &possible_b)));
    let forward = d.mp(truth, contra);
    let ni2 = d.axiom(Schema::NegativeIntrospection, schema::negative_introspection(&none, data, &not_b));
    let to_known = chain(d, forward, ni2);
    chain(d, to_known, lift)
}

/// `B{T}{X}φ -> B{}{X}B{T}{X}φ`, in 18 lines, from negative introspection,
/// truth, monotonicity and distributivity.
pub fn positive_introspection(trust: &VarSet, data: &VarSet, phi: &Formula) -> Derivation {
    let mut d = Derivation::new(Vec::new());
    push_positive_introspection(&mut d, trust, data, phi);
    d
}

/// `[C]{T}{X}φ -> B{}{X}B{T}{X}[C]{T}{X}φ`.
pub fn strategic_introspection_plus(
    coalition: &ActorSet,
    trust: &VarSet,
    data: &VarSet,
    phi: &Formula,
) -> Derivation {
    let s = Formula::doxastic(coalition.clone(), trust.clone(), data.clone(), phi.clone());
    let bs = Formula::belief(trust.clone(), data.clone(), s.clone());
    let mut d = Derivation::new(Vec::new());
    let pi = push_positive_introspection(&mut d, trust, data, &s);
    let si = d.axiom(
        Schema::StrategicIntrospection,
        schema::strategic_introspection(coalition, trust, data, phi),
    );
    let first = d.taut(imp(&schema::iff(s.clone(), bs.clone()), &imp(&s, &bs)));
    let forward = d.mp(si, first);
    chain(&mut d, forward, pi);
    d
}

/// `[]{T}{X}(φ -> φ)`, by lifting the one-line theorem `φ -> φ`.
pub fn s_necessitation(trust: &VarSet, data: &VarSet, phi: &Formula) -> Derivation {
    let mut theorem = Derivation::new(Vec::new());
    theorem.taut(imp(phi, phi));
    box_lift_transform(&theorem, trust, data).expect("one-line tautology is a valid derivation")
}

/// A named derivation template, instantiated with a coalition, trust set,
/// data set and body. Templates that do not mention a coalition ignore it.
#[derive(Debug, Clone, Copy)]
pub struct BuiltinProof {
    pub name: &'static str,
    pub statement: &'static str,
    pub build: fn(&ActorSet, &VarSet, &VarSet, &Formula) -> Derivation,
}

pub fn builtin_proofs() -> [BuiltinProof; 3] {
    [
        BuiltinProof {
            name: "positive-introspection",
            statement: "B{T}{X}φ -> K{X}B{T}{X}φ",
            build: |_, t, x, phi| positive_introspection(t, x, phi),
        },
        BuiltinProof {
            name: "strategic-introspection-plus",
            statement: "[C]{T}{X}φ -> K{X}B{T}{X}[C]{T}{X}φ",
            build: strategic_introspection_plus,
        },
        BuiltinProof {
            name: "s-necessitation",
            statement: "[]{T}{X}(φ -> φ)",
            build: |_, t, x, phi| s_necessitation(t, x, phi),
        },
    ]
}

pub fn builtin_proof(name: &str) -> Option<BuiltinProof> {
    builtin_proofs().into_iter().find(|p| p.name == name)
}
