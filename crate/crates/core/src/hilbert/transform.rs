//! Derivation transformers: the deduction lemma and the two lifting lemmas.
//!
//! Every transformer validates its input and, for valid input, returns a
//! derivation that passes [`super::check_derivation_with`] under the same
//! configuration the input needed.

use thiserror::Error;

use super::schema;
use super::{verify, Derivation, LineFailure, ProofConfig, Rule, Schema};
use crate::syntax::{expand_sugar, ActorSet, Formula, NameSet, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("input derivation is invalid: {0}")]
    Invalid(#[from] LineFailure),
    #[error("{0} is not a hypothesis of the derivation")]
    NotAHypothesis(Formula),
}

/// Input checks accept every axiom; outputs only reuse the input's axiom
/// lines plus schemas 1-9.
const PERMISSIVE: ProofConfig = ProofConfig {
    generalized_public_belief: true,
};

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

/// Drops lines the conclusion does not use and renumbers references.
fn prune(d: Derivation) -> Derivation {
    let n = d.lines.len();
    let mut used = vec![false; n];
    if n > 0 {
        used[n - 1] = true;
    }
    for k in (0..n).rev() {
        if !used[k] {
            continue;
        }
        match d.lines[k].rule {
            Rule::ModusPonens(i, j) => {
                used[i - 1] = true;
                used[j - 1] = true;
            }
            Rule::Necessitation(i) => used[i - 1] = true,
            _ => {}
        }
    }
    let mut renumber = vec![0; n + 1];
    let mut out = Derivation::new(d.hypotheses);
    for (k, line) in d.lines.into_iter().enumerate() {
        if !used[k] {
            continue;
        }
        let rule = match line.rule {
            Rule::ModusPonens(i, j) => Rule::ModusPonens(renumber[i], renumber[j]),
            Rule::Necessitation(i) => Rule::Necessitation(renumber[i]),
            other => other,
        };
        renumber[k + 1] = out.push(line.formula, rule);
    }
    out
}

/// From `Γ, φ ⊢ ψ`, builds `Γ ⊢ φ -> ψ`.
///
/// Every occurrence of `φ` is removed from the hypotheses; the remaining ones
/// keep their relative order.
pub fn deduction_transform(d: &Derivation, phi: &Formula) -> Result<Derivation, TransformError> {
    let dep = verify(d, &PERMISSIVE)?;
    let phi = expand_sugar(phi);
    let desugared_hyps: Vec<Formula> = d.hypotheses.iter().map(expand_sugar).collect();
    if !desugared_hyps.contains(&phi) {
        return Err(TransformError::NotAHypothesis(phi));
    }
    let mut remap = vec![None; d.hypotheses.len()];
    let mut kept = Vec::new();
    for (i, h) in desugared_hyps.into_iter().enumerate() {
        if h != phi {
            remap[i] = Some(kept.len());
            kept.push(h);
        }
    }

    let mut out = Derivation::new(kept);
    // plain[k]: line proving ψ_k itself; imp[k]: line proving φ -> ψ_k.
    let mut plain = vec![0; d.lines.len() + 1];
    let mut imps = vec![0; d.lines.len() + 1];
    for (k, line) in d.lines.iter().enumerate() {
        let n = k + 1;
        let psi = expand_sugar(&line.formula);
        if let Rule::Hypothesis(i) = line.rule {
            if remap[i].is_none() {
                imps[n] = out.taut(imp(&phi, &phi));
                continue;
            }
        }
        if !dep[k] || matches!(line.rule, Rule::Hypothesis(_)) {
            let rule = match line.rule {
                Rule::Hypothesis(i) => Rule::Hypothesis(remap[i].expect("checked above")),
                Rule::ModusPonens(i, j) => Rule::ModusPonens(plain[i], plain[j]),
                Rule::Necessitation(i) => Rule::Necessitation(plain[i]),
                other => other,
            };
            plain[n] = out.push(psi.clone(), rule);
            let weaken = out.taut(imp(&psi, &imp(&phi, &psi)));
            imps[n] = out.mp(plain[n], weaken);
            continue;
        }
        let Rule::ModusPonens(i, j) = line.rule else {
            unreachable!("only hypotheses and modus ponens depend on hypotheses")
        };
        let psi_i = expand_sugar(d.formula(i));
        // (φ -> ψi) -> (φ -> (ψi -> ψk)) -> (φ -> ψk)
        let frege = out.taut(imp(
            &imp(&phi, &psi_i),
            &imp(&imp(&phi, &imp(&psi_i, &psi)), &imp(&phi, &psi)),
        ));
        let step = out.mp(imps[i], frege);
        imps[n] = out.mp(imps[j], step);
    }
    Ok(prune(out))
}

fn distinct(hyps: &[Formula]) -> Vec<Formula> {
    let mut seen = Vec::new();
    for h in hyps.iter().map(expand_sugar) {
        if !seen.contains(&h) {
            seen.push(h);
        }
    }
    seen
}

/// Discharges every distinct hypothesis, last first, leaving a theorem
/// `h1 -> (h2 -> ... -> ψ)`.
fn discharge_all(d: &Derivation, hyps: &[Formula]) -> Result<Derivation, TransformError> {
    let mut theorem = d.clone();
    for h in hyps.iter().rev() {
        theorem = deduction_transform(&theorem, h)?;
    }
    debug_assert!(theorem.hypotheses.is_empty());
    Ok(theorem)
}

/// Copies the lines of a hypothesis-free derivation into `out`, which must
/// have no lines yet.
fn append_theorem(out: &mut Derivation, theorem: Derivation) -> usize {
    debug_assert!(out.lines.is_empty());
    out.lines.extend(theorem.lines);
    out.lines.len()
}

/// From `φ1, ..., φn ⊢ ψ`, builds `B{T}{X}φ1, ..., B{T}{X}φn ⊢ B{T}{X}ψ`.
pub fn b_lift_transform(d: &Derivation, trust: &VarSet, data: &VarSet) -> Result<Derivation, TransformError> {
    verify(d, &PERMISSIVE)?;
    let hyps = distinct(&d.hypotheses);
    let theorem = discharge_all(d, &hyps)?;
    let b = |f: &Formula| Formula::belief(trust.clone(), data.clone(), f.clone());
    let lifted: Vec<Formula> = d.hypotheses.iter().map(|h| b(&expand_sugar(h))).collect();
    let mut out = Derivation::new(lifted.clone());
    let chi = append_theorem(&mut out, theorem);
    let mut rest = out.formula(chi).clone();

    let nec = out.nec(chi);
    let none = NameSet::new();
    let mono = out.axiom(Schema::MonotonicityB, schema::monotonicity_b(&none, &none, trust, data, &rest));
    let mut cur = out.mp(nec, mono);
    for h in &hyps {
        let Formula::Impl(_, tail) = rest else {
            unreachable!("discharged theorem is a chain of implications")
        };
        let tail = *tail;
        let dist = out.axiom(Schema::Distributivity, schema::distributivity(trust, data, h, &tail));
        let step = out.mp(cur, dist);
        let index = lifted.iter().position(|l| *l == b(h)).expect("lifted hypothesis");
        let hyp = out.hyp(index);
        cur = out.mp(hyp, step);
        rest = tail;
    }
    Ok(out)
}

/// From `φ1, ..., φn ⊢ ψ`, builds
/// `[]{T}{X}φ1, ..., []{T}{X}φn ⊢ []{T}{X}ψ`.
pub fn box_lift_transform(d: &Derivation, trust: &VarSet, data: &VarSet) -> Result<Derivation, TransformError> {
    verify(d, &PERMISSIVE)?;
    let hyps = distinct(&d.hypotheses);
    let theorem = discharge_all(d, &hyps)?;
    let none: ActorSet = NameSet::new();
    let dox = |f: &Formula| Formula::doxastic(NameSet::new(), trust.clone(), data.clone(), f.clone());
    let lifted: Vec<Formula> = d.hypotheses.iter().map(|h| dox(&expand_sugar(h))).collect();
    let mut out = Derivation::new(lifted.clone());
    let chi = append_theorem(&mut out, theorem);
    let mut rest = out.formula(chi).clone();

    let nec = out.nec(chi);
    let public = out.axiom(Schema::PublicBelief, schema::public_belief(&none, &rest));
    let unavoidable = out.mp(nec, public);
    let mono = out.axiom(
        Schema::MonotonicityS,
        schema::monotonicity_s(&none, &none, &none, &none, trust, data, &rest),
    );
    let mut cur = out.mp(unavoidable, mono);
    for h in &hyps {
        let Formula::Impl(_, tail) = rest else {
            unreachable!("discharged theorem is a chain of implications")
        };
        let tail = *tail;
        let coop = out.axiom(Schema::Cooperation, schema::cooperation(&none, &none, trust, data, h, &tail));
        let step = out.mp(cur, coop);
        let index = lifted.iter().position(|l| *l == dox(h)).expect("lifted hypothesis");
        let hyp = out.hyp(index);
        cur = out.mp(hyp, step);
        rest = tail;
    }
    Ok(out)
}
