use super::builtin::{builtin_proof, builtin_proofs, positive_introspection, s_necessitation};
use super::*;
use crate::bundled;
use crate::names;
use crate::syntax::parse;

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn failure(d: &Derivation) -> LineFailure {
    check_derivation(d).unwrap_err()
}

#[test]
fn positive_introspection_checks() {
    let d = positive_introspection(&names!["t"], &names!["x"], &f("p"));
    assert_eq!(d.len(), 18);
    assert_eq!(check_derivation(&d), Ok(()));
    assert_eq!(d.conclusion(), Some(&expand_sugar(&f("B{t}{x}p -> K{x}B{t}{x}p"))));
}

#[test]
fn bundled_proof_file_matches_template() {
    let d = bundled::lemma1();
    assert_eq!(Derivation::from_json(bundled::LEMMA1_PROOF).unwrap(), d);
    assert_eq!(d.to_json(), bundled::LEMMA1_PROOF);
}

#[test]
fn builtins_check() {
    for proof in builtin_proofs() {
        let d = (proof.build)(&names!["a"], &names!["t", "u"], &names!["x"], &f("p -> q"));
        assert_eq!(check_derivation(&d), Ok(()), "{}", proof.name);
    }
    let d = s_necessitation(&names!["t"], &names![], &f("q"));
    assert_eq!(d.conclusion(), Some(&f("[]{t}{}(q -> q)")));
    assert!(builtin_proof("strategic-introspection-plus").is_some());
    assert!(builtin_proof("lemma").is_none());
}

#[test]
fn modus_ponens_premise_order() {
    let mut d = Derivation::new(vec![f("p"), f("p -> q")]);
    d.hyp(0);
    d.hyp(1);
    d.push(f("q"), Rule::ModusPonens(1, 2));
    assert_eq!(check_derivation(&d), Ok(()));
    d.lines[2].rule = Rule::ModusPonens(2, 1);
    assert_eq!(failure(&d), LineFailure {
        line: 3,
        reason: Failure::ModusPonensMismatch { minor: 2, major: 1 }
    });
    d.lines[2].rule = Rule::ModusPonens(1, 3);
    assert_eq!(failure(&d).reason, Failure::BadReference(3));
    d.lines[2].rule = Rule::ModusPonens(0, 2);
    assert_eq!(failure(&d).reason, Failure::BadReference(0));
}

#[test]
fn necessitation_needs_a_theorem() {
    let mut d = Derivation::new(vec![f("p")]);
    let h = d.hyp(0);
    d.nec(h);
    assert_eq!(failure(&d), LineFailure {
        line: 2,
        reason: Failure::NecessitationOnHypothesis(1)
    });

    let mut d = Derivation::new(vec![f("p")]);
    let t = d.taut(f("q -> q"));
    d.nec(t);
    assert_eq!(check_derivation(&d), Ok(()));
    d.lines[1].formula = f("B{}{x}(q -> q)");
    assert_eq!(failure(&d).reason, Failure::NecessitationMismatch(1));
}

#[test]
fn dependence_propagates_through_modus_ponens() {
    let mut d = Derivation::new(vec![f("p")]);
    let h = d.hyp(0);
    let t = d.taut(f("p -> q -> p"));
    let m = d.mp(h, t);
    let t2 = d.taut(f("r -> r"));
    d.nec(t2);
    assert_eq!(m, 3);
    assert_eq!(d.hypothesis_dependence(), vec![true, false, true, false, false]);
    assert_eq!(check_derivation(&d), Ok(()));
}

#[test]
fn line_failures() {
    let mut d = Derivation::new(vec![f("p")]);
    d.taut(f("p -> q"));
    assert_eq!(failure(&d), LineFailure { line: 1, reason: Failure::NotATautology });

    let mut d = Derivation::new(vec![]);
    d.axiom(Schema::Truth, f("B{t}{}p -> p"));
    assert_eq!(failure(&d).reason, Failure::NotAnInstance(Schema::Truth));

    let mut d = Derivation::new(vec![f("p")]);
    d.push(f("p"), Rule::Hypothesis(1));
    assert_eq!(failure(&d).reason, Failure::NoSuchHypothesis(1));
    d.lines[0] = ProofLine { formula: f("q"), rule: Rule::Hypothesis(0) };
    assert_eq!(failure(&d).reason, Failure::HypothesisMismatch(0));

    assert_eq!(failure(&Derivation::default()), LineFailure { line: 0, reason: Failure::Empty });
}

#[test]
fn first_failure_is_reported() {
    let mut d = Derivation::new(vec![]);
    d.taut(f("p -> p"));
    d.taut(f("p"));
    d.taut(f("q"));
    assert_eq!(failure(&d).line, 2);
}

#[test]
fn sugar_is_transparent() {
    let mut d = Derivation::new(vec![f("p & q")]);
    let h = d.hyp(0);
    let t = d.taut(f("p & q -> p"));
    d.push(f("p"), Rule::ModusPonens(h, t));
    d.hypotheses[0] = f("!(p -> !q)");
    assert_eq!(check_derivation(&d), Ok(()));
    let mut d = Derivation::new(vec![]);
    d.axiom(Schema::Truth, f("K{x}p -> p"));
    d.taut(f("true"));
    assert_eq!(check_derivation(&d), Ok(()));
}

#[test]
fn generalized_public_belief_is_opt_in() {
    let mut d = Derivation::new(vec![]);
    d.axiom(Schema::GeneralizedPublicBelief, f("B{t}{}p -> []{;t}{}p"));
    assert_eq!(failure(&d).reason, Failure::SchemaDisabled(Schema::GeneralizedPublicBelief));
    let config = ProofConfig {
        generalized_public_belief: true,
    };
    assert_eq!(check_derivation_with(&d, &config), Ok(()));
}

#[test]
fn deduction_on_small_derivation() {
    // p, p -> q ⊢ q, discharge p.
    let mut d = Derivation::new(vec![f("p"), f("p -> q")]);
    let a = d.hyp(0);
    let b = d.hyp(1);
    d.mp(a, b);
    let e = deduction_transform(&d, &f("p")).unwrap();
    assert_eq!(e.hypotheses, vec![f("p -> q")]);
    assert_eq!(e.conclusion(), Some(&f("p -> q")));
    assert_eq!(check_derivation(&e), Ok(()));

    let e2 = deduction_transform(&e, &f("p -> q")).unwrap();
    assert!(e2.hypotheses.is_empty());
    assert_eq!(e2.conclusion(), Some(&f("(p -> q) -> p -> q")));
    assert_eq!(check_derivation(&e2), Ok(()));
}

#[test]
fn deduction_removes_repeated_hypotheses() {
    let mut d = Derivation::new(vec![f("p"), f("q"), f("p")]);
    let a = d.hyp(2);
    let t = d.taut(f("p -> r -> p"));
    d.mp(a, t);
    let e = deduction_transform(&d, &f("p")).unwrap();
    assert_eq!(e.hypotheses, vec![f("q")]);
    assert_eq!(e.conclusion(), Some(&f("p -> r -> p")));
    assert_eq!(check_derivation(&e), Ok(()));
}

#[test]
fn deduction_keeps_necessitation_of_theorems() {
    let mut d = Derivation::new(vec![f("p")]);
    let t = d.taut(f("q -> q"));
    d.nec(t);
    let e = deduction_transform(&d, &f("p")).unwrap();
    assert_eq!(e.conclusion(), Some(&f("p -> B{}{}(q -> q)")));
    assert_eq!(check_derivation(&e), Ok(()));
}

#[test]
fn deduction_errors() {
    let mut d = Derivation::new(vec![f("p")]);
    d.hyp(0);
    assert_eq!(
        deduction_transform(&d, &f("q")),
        Err(TransformError::NotAHypothesis(f("q")))
    );
    let mut bad = Derivation::new(vec![f("p")]);
    bad.taut(f("p"));
    assert!(matches!(deduction_transform(&bad, &f("p")), Err(TransformError::Invalid(_))));
}

fn modus_ponens_derivation() -> Derivation {
    let mut d = Derivation::new(vec![f("p"), f("p -> q")]);
    let a = d.hyp(0);
    let b = d.hyp(1);
    d.mp(a, b);
    d
}

#[test]
fn lifting() {
    let d = modus_ponens_derivation();
    let (t, x) = (names!["t"], names!["x", "y"]);

    let b = b_lift_transform(&d, &t, &x).unwrap();
    assert_eq!(b.hypotheses, vec![f("B{t}{x,y}p"), f("B{t}{x,y}(p -> q)")]);
    assert_eq!(b.conclusion(), Some(&f("B{t}{x,y}q")));
    assert_eq!(check_derivation(&b), Ok(()));

    let s = box_lift_transform(&d, &t, &x).unwrap();
    assert_eq!(s.hypotheses, vec![f("[]{t}{x,y}p"), f("[]{t}{x,y}(p -> q)")]);
    assert_eq!(s.conclusion(), Some(&f("[]{t}{x,y}q")));
    assert_eq!(check_derivation(&s), Ok(()));
}

#[test]
fn lifting_theorems() {
    let mut d = Derivation::new(vec![]);
    d.taut(f("p | !p"));
    let b = b_lift_transform(&d, &names![], &names!["x"]).unwrap();
    assert_eq!(b.conclusion(), Some(&f("B{}{x}(p | !p)")));
    assert_eq!(check_derivation(&b), Ok(()));
}

#[test]
fn lifting_duplicate_hypotheses() {
    let mut d = Derivation::new(vec![f("p"), f("p")]);
    let a = d.hyp(1);
    let t = d.taut(f("p -> p | q"));
    d.mp(a, t);
    let b = b_lift_transform(&d, &names!["t"], &names![]).unwrap();
    assert_eq!(b.hypotheses.len(), 2);
    assert_eq!(check_derivation(&b), Ok(()));
}

#[test]
fn json_round_trip() {
    let d = modus_ponens_derivation();
    let mut d = b_lift_transform(&d, &names!["t"], &names!["x"]).unwrap();
    d.axiom(Schema::GeneralizedPublicBelief, f("B{t}{}p -> []{;t}{}p"));
    let text = d.to_json();
    assert_eq!(Derivation::from_json(&text).unwrap(), d);
}

#[test]
fn proof_file_errors() {
    let bad = [
        r#"{"hypotheses":[],"lines":[{"formula":"p","rule":"Taut","premise":1}]}"#,
        r#"{"hypotheses":[],"lines":[{"formula":"p","rule":"MP","premises":[1]}]}"#,
        r#"{"hypotheses":[],"lines":[{"formula":"p","rule":"Hyp"}]}"#,
        r#"{"hypotheses":[],"lines":[{"formula":"p","rule":"Axiom:Modesty"}]}"#,
        r#"{"hypotheses":[],"lines":[{"formula":"p","rule":"Guess"}]}"#,
    ];
    for text in bad {
        assert!(matches!(Derivation::from_json(text), Err(ProofFileError::Rule { line: 1, .. })), "{text}");
    }
    assert!(matches!(
        Derivation::from_json(r#"{"hypotheses":["p ->"],"lines":[]}"#),
        Err(ProofFileError::Hypothesis { index: 0, .. })
    ));
    assert!(matches!(
        Derivation::from_json(r#"{"hypotheses":[],"lines":[{"formula":"(","rule":"Taut"}]}"#),
        Err(ProofFileError::Formula { line: 1, .. })
    ));
    assert!(matches!(
        Derivation::from_json(r#"{"hypotheses":[],"lines":[],"extra":1}"#),
        Err(ProofFileError::Json(_))
    ));
}
