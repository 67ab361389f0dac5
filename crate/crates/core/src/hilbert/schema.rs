//! Axiom schemas: structural matchers and instance builders.
//!
//! Strategy modalities in schemas 1-9 are the single-superscript form, i.e.
//! `ante == post`. Only [`Schema::GeneralizedPublicBelief`] separates them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{expand_sugar, is_desugared, ActorSet, Formula, NameSet, VarSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    /// `B{}{X}φ -> φ`
    Truth,
    /// `!B{T}{X}φ -> B{}{X}!B{T}{X}φ`
    NegativeIntrospection,
    /// `B{T}{X}(φ -> ψ) -> B{T}{X}φ -> B{T}{X}ψ`
    Distributivity,
    /// `B{T}{X}(B{T}{Y}φ -> φ)`
    Trust,
    /// `B{T}{X}φ -> B{T'}{X'}φ` for `T ⊆ T'`, `X ⊆ X'`
    MonotonicityB,
    /// `[C]{T}{X}φ -> [C']{T'}{X'}φ` for `C ⊆ C'`, `T ⊆ T'`, `X ⊆ X'`
    MonotonicityS,
    /// `[C]{T}{X}(φ -> ψ) -> [D]{T}{X}φ -> [C ∪ D]{T}{X}ψ` for disjoint `C`, `D`
    Cooperation,
    /// `[C]{T}{X}φ <-> B{T}{X}[C]{T}{X}φ`
    StrategicIntrospection,
    /// `B{T}{X}[]{T}{Y}φ -> []{T}{X}φ`
    BeliefInUnavoidability,
    /// `B{T}{}φ -> []{T}{}φ`
    PublicBelief,
    /// `B{T}{}φ -> []{;T}{}φ`, for the two-superscript modality
    GeneralizedPublicBelief,
}

impl Schema {
    pub const ALL: [Schema; 11] = [
        Schema::Truth,
        Schema::NegativeIntrospection,
        Schema::Distributivity,
        Schema::Trust,
        Schema::MonotonicityB,
        Schema::MonotonicityS,
        Schema::Cooperation,
        Schema::StrategicIntrospection,
        Schema::BeliefInUnavoidability,
        Schema::PublicBelief,
        Schema::GeneralizedPublicBelief,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::Truth => "Truth",
            Schema::NegativeIntrospection => "NegativeIntrospection",
            Schema::Distributivity => "Distributivity",
            Schema::Trust => "Trust",
            Schema::MonotonicityB => "MonotonicityB",
            Schema::MonotonicityS => "MonotonicityS",
            Schema::Cooperation => "Cooperation",
            Schema::StrategicIntrospection => "StrategicIntrospection",
            Schema::BeliefInUnavoidability => "BeliefInUnavoidability",
            Schema::PublicBelief => "PublicBelief",
            Schema::GeneralizedPublicBelief => "GeneralizedPublicBelief",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom schema '{0}'")]
pub struct UnknownSchema(pub String);

impl FromStr for Schema {
    type Err = UnknownSchema;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL
            .into_iter()
            .find(|schema| schema.name() == s)
            .ok_or_else(|| UnknownSchema(s.to_string()))
    }
}

fn as_impl(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Impl(l, r) => Some((l, r)),
        _ => None,
    }
}

fn as_neg(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Neg(b) => Some(b),
        _ => None,
    }
}

fn as_belief(f: &Formula) -> Option<(&VarSet, &VarSet, &Formula)> {
    match f {
        Formula::Belief { trust, data, body } => Some((trust, data, body)),
        _ => None,
    }
}

/// `[C]{T}{X}φ` with a single trust superscript.
fn as_doxastic(f: &Formula) -> Option<(&ActorSet, &VarSet, &VarSet, &Formula)> {
    match f {
        Formula::Strategy {
            coalition,
            ante,
            post,
            data,
            body,
        } if ante == post => Some((coalition, ante, data, body)),
        _ => None,
    }
}

fn matches_core(f: &Formula, schema: Schema) -> Option<()> {
    let check = |b: bool| b.then_some(());
    match schema {
        Schema::Truth => {
            let (lhs, rhs) = as_impl(f)?;
            let (trust, _, body) = as_belief(lhs)?;
            check(trust.is_empty() && body == rhs)
        }
        Schema::NegativeIntrospection => {
            let (lhs, rhs) = as_impl(f)?;
            let belief = as_neg(lhs)?;
            let (_, data, _) = as_belief(belief)?;
            let (k_trust, k_data, k_body) = as_belief(rhs)?;
            check(k_trust.is_empty() && k_data == data && as_neg(k_body)? == belief)
        }
        Schema::Distributivity => {
            let (lhs, rhs) = as_impl(f)?;
            let (trust, data, imp) = as_belief(lhs)?;
            let (phi, psi) = as_impl(imp)?;
            let (b_phi, b_psi) = as_impl(rhs)?;
            check(
                b_phi == &Formula::belief(trust.clone(), data.clone(), phi.clone())
                    && b_psi == &Formula::belief(trust.clone(), data.clone(), psi.clone()),
            )
        }
        Schema::Trust => {
            let (trust, _, body) = as_belief(f)?;
            let (inner, phi) = as_impl(body)?;
            let (inner_trust, _, inner_body) = as_belief(inner)?;
            check(inner_trust == trust && inner_body == phi)
        }
        Schema::MonotonicityB => {
            let (lhs, rhs) = as_impl(f)?;
            let (t, x, phi) = as_belief(lhs)?;
            let (t2, x2, phi2) = as_belief(rhs)?;
            check(t.is_subset(t2) && x.is_subset(x2) && phi == phi2)
        }
        Schema::MonotonicityS => {
            let (lhs, rhs) = as_impl(f)?;
            let (c, t, x, phi) = as_doxastic(lhs)?;
            let (c2, t2, x2, phi2) = as_doxastic(rhs)?;
            check(c.is_subset(c2) && t.is_subset(t2) && x.is_subset(x2) && phi == phi2)
        }
        Schema::Cooperation => {
            let (lhs, rhs) = as_impl(f)?;
            let (c, t, x, imp) = as_doxastic(lhs)?;
            let (phi, psi) = as_impl(imp)?;
            let (d_phi, cd_psi) = as_impl(rhs)?;
            let (d, t2, x2, phi2) = as_doxastic(d_phi)?;
            let (cd, t3, x3, psi2) = as_doxastic(cd_psi)?;
            check(
                c.is_disjoint(d)
                    && *cd == c.union(d)
                    && t == t2
                    && t == t3
                    && x == x2
                    && x == x3
                    && phi == phi2
                    && psi == psi2,
            )
        }
        Schema::StrategicIntrospection => {
            // !((S -> B S) -> !(B S -> S))
            let (forward, neg_backward) = as_impl(as_neg(f)?)?;
            let (s, bs) = as_impl(forward)?;
            let (bs2, s2) = as_impl(as_neg(neg_backward)?)?;
            let (_, t, x, _) = as_doxastic(s)?;
            check(bs == &Formula::belief(t.clone(), x.clone(), s.clone()) && bs2 == bs && s2 == s)
        }
        Schema::BeliefInUnavoidability => {
            let (lhs, rhs) = as_impl(f)?;
            let (t, x, inner) = as_belief(lhs)?;
            let (c, t2, _, phi) = as_doxastic(inner)?;
            let (c3, t3, x3, phi3) = as_doxastic(rhs)?;
            check(c.is_empty() && c3.is_empty() && t == t2 && t == t3 && x == x3 && phi == phi3)
        }
        Schema::PublicBelief => {
            let (lhs, rhs) = as_impl(f)?;
            let (t, x, phi) = as_belief(lhs)?;
            let (c, t2, x2, phi2) = as_doxastic(rhs)?;
            check(x.is_empty() && c.is_empty() && x2.is_empty() && t == t2 && phi == phi2)
        }
        Schema::GeneralizedPublicBelief => {
            let (lhs, rhs) = as_impl(f)?;
            let (t, x, phi) = as_belief(lhs)?;
            match rhs {
                Formula::Strategy {
                    coalition,
                    ante,
                    post,
                    data,
                    body,
                } => check(
                    x.is_empty()
                        && coalition.is_empty()
                        && ante.is_empty()
                        && data.is_empty()
                        && post == t
                        && body.as_ref() == phi,
                ),
                _ => None,
            }
        }
    }
}

/// Whether `f` is an instance of `schema`, side conditions included.
pub fn match_axiom(f: &Formula, schema: Schema) -> bool {
    if is_desugared(f) {
        matches_core(f, schema).is_some()
    } else {
        matches_core(&expand_sugar(f), schema).is_some()
    }
}

/// Like [`match_axiom`] with the schema given by name.
pub fn match_axiom_named(f: &Formula, schema: &str) -> Result<bool, UnknownSchema> {
    Ok(match_axiom(f, schema.parse()?))
}

// Instance builders. Side conditions are the caller's responsibility.

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn bel(t: &VarSet, x: &VarSet, body: Formula) -> Formula {
    Formula::belief(t.clone(), x.clone(), body)
}

fn dox(c: &ActorSet, t: &VarSet, x: &VarSet, body: Formula) -> Formula {
    Formula::doxastic(c.clone(), t.clone(), x.clone(), body)
}

/// `!((a -> b) -> !(b -> a))`, the expanded biconditional.
pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::neg(imp(imp(a.clone(), b.clone()), Formula::neg(imp(b, a))))
}

pub fn truth(x: &VarSet, phi: &Formula) -> Formula {
    imp(bel(&NameSet::new(), x, phi.clone()), phi.clone())
}

pub fn negative_introspection(t: &VarSet, x: &VarSet, phi: &Formula) -> Formula {
    let b = bel(t, x, phi.clone());
    imp(Formula::neg(b.clone()), bel(&NameSet::new(), x, Formula::neg(b)))
}

pub fn distributivity(t: &VarSet, x: &VarSet, phi: &Formula, psi: &Formula) -> Formula {
    imp(
        bel(t, x, imp(phi.clone(), psi.clone())),
        imp(bel(t, x, phi.clone()), bel(t, x, psi.clone())),
    )
}

pub fn trust(t: &VarSet, x: &VarSet, y: &VarSet, phi: &Formula) -> Formula {
    bel(t, x, imp(bel(t, y, phi.clone()), phi.clone()))
}

pub fn monotonicity_b(t: &VarSet, x: &VarSet, t2: &VarSet, x2: &VarSet, phi: &Formula) -> Formula {
    imp(bel(t, x, phi.clone()), bel(t2, x2, phi.clone()))
}

#[allow(clippy::too_many_arguments)]
pub fn monotonicity_s(
    c: &ActorSet,
    t: &VarSet,
    x: &VarSet,
    c2: &ActorSet,
    t2: &VarSet,
    x2: &VarSet,
    phi: &Formula,
) -> Formula {
    imp(dox(c, t, x, phi.clone()), dox(c2, t2, x2, phi.clone()))
}

pub fn cooperation(
    c: &ActorSet,
    d: &ActorSet,
    t: &VarSet,
    x: &VarSet,
    phi: &Formula,
    psi: &Formula,
) -> Formula {
    imp(
        dox(c, t, x, imp(phi.clone(), psi.clone())),
        imp(dox(d, t, x, phi.clone()), dox(&c.union(d), t, x, psi.clone())),
    )
}

pub fn strategic_introspection(c: &ActorSet, t: &VarSet, x: &VarSet, phi: &Formula) -> Formula {
    let s = dox(c, t, x, phi.clone());
    iff(s.clone(), bel(t, x, s))
}

pub fn belief_in_unavoidability(t: &VarSet, x: &VarSet, y: &VarSet, phi: &Formula) -> Formula {
    let none = NameSet::new();
    imp(bel(t, x, dox(&none, t, y, phi.clone())), dox(&none, t, x, phi.clone()))
}

pub fn public_belief(t: &VarSet, phi: &Formula) -> Formula {
    let none = NameSet::new();
    imp(bel(t, &none, phi.clone()), dox(&none, t, &none, phi.clone()))
}

pub fn generalized_public_belief(t: &VarSet, phi: &Formula) -> Formula {
    let none = NameSet::new();
    imp(
        bel(t, &none, phi.clone()),
        Formula::strategy(none.clone(), none.clone(), t.clone(), none, phi.clone()),
    )
}
