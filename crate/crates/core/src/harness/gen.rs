//! Random games, formulas, axiom instances and derivations.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::GenConfig;
use crate::game::{EntryFile, Game, GameFile, StateFile, WILDCARD};
use crate::hilbert::{schema, Derivation, Schema};
use crate::syntax::{ActorSet, Formula, NameSet};

/// Atom names used by the generators.
pub const ATOMS: [&str; 3] = ["p", "q", "r"];

/// Names a generated formula may mention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub atoms: Vec<String>,
    pub variables: Vec<String>,
    pub actors: Vec<String>,
}

impl Vocabulary {
    pub fn of_game(game: &Game) -> Self {
        Vocabulary {
            atoms: ATOMS.iter().map(|s| s.to_string()).collect(),
            variables: game.variables().to_vec(),
            actors: game.actors().to_vec(),
        }
    }
}

/// A random game within the bounds of `config`. Variables take values `0` or
/// `1`; each mechanism entry fixes each actor with probability 2/3.
pub fn gen_game<R: Rng + ?Sized>(rng: &mut R, config: &GenConfig) -> Game {
    let variables: Vec<String> = (0..rng.random_range(1..=config.max_variables.max(1)))
        .map(|i| format!("v{i}"))
        .collect();
    let actors: Vec<String> = (0..rng.random_range(1..=config.max_actors.max(1)))
        .map(|i| format!("a{i}"))
        .collect();
    let actions: Vec<String> = (0..rng.random_range(1..=config.max_actions.max(1)))
        .map(|i| format!("s{i}"))
        .collect();
    let states: Vec<StateFile> = (0..rng.random_range(1..=config.max_states.max(1)))
        .map(|i| StateFile {
            name: format!("w{i}"),
            values: variables
                .iter()
                .map(|v| (v.clone(), rng.random_range(0..2u8).to_string()))
                .collect(),
            trustworthy: variables.iter().filter(|_| rng.random_bool(0.5)).cloned().collect(),
            atoms: ATOMS
                .iter()
                .filter(|_| rng.random_bool(0.5))
                .map(|s| s.to_string())
                .collect(),
        })
        .collect();
    let mechanism = (0..rng.random_range(0..=config.max_mech_entries))
        .map(|_| {
            let mut profile = BTreeMap::new();
            for actor in &actors {
                match rng.random_range(0..6) {
                    0 => {}
                    1 => {
                        profile.insert(actor.clone(), WILDCARD.to_string());
                    }
                    _ => {
                        profile.insert(actor.clone(), actions.choose(rng).unwrap().clone());
                    }
                }
            }
            EntryFile {
                from: states.choose(rng).unwrap().name.clone(),
                profile,
                to: states.choose(rng).unwrap().name.clone(),
            }
        })
        .collect();
    Game::from_file(GameFile {
        variables,
        actors,
        actions,
        states,
        mechanism,
    })
    .expect("generated games are well formed")
}

/// Each name independently with probability 1/2.
pub fn gen_subset<R: Rng + ?Sized>(rng: &mut R, names: &[String]) -> NameSet {
    names.iter().filter(|_| rng.random_bool(0.5)).cloned().collect()
}

/// A random formula of depth at most `depth`, sugar included.
pub fn gen_formula<R: Rng + ?Sized>(rng: &mut R, vocab: &Vocabulary, depth: usize) -> Formula {
    if depth == 0 {
        return Formula::atom(vocab.atoms.choose(rng).expect("non-empty atom pool").clone());
    }
    let sub = |rng: &mut R| gen_below(rng, vocab, depth);
    match rng.random_range(0..11) {
        0 => Formula::atom(vocab.atoms.choose(rng).unwrap().clone()),
        1 => Formula::neg(sub(rng)),
        2 => Formula::implies(sub(rng), sub(rng)),
        3 => Formula::and(sub(rng), sub(rng)),
        4 => Formula::or(sub(rng), sub(rng)),
        5 => Formula::iff(sub(rng), sub(rng)),
        6 => Formula::belief(gen_subset(rng, &vocab.variables), gen_subset(rng, &vocab.variables), sub(rng)),
        7 => Formula::know(gen_subset(rng, &vocab.variables), sub(rng)),
        8 => Formula::doxastic(
            gen_subset(rng, &vocab.actors),
            gen_subset(rng, &vocab.variables),
            gen_subset(rng, &vocab.variables),
            sub(rng),
        ),
        9 => Formula::strategy(
            gen_subset(rng, &vocab.actors),
            gen_subset(rng, &vocab.variables),
            gen_subset(rng, &vocab.variables),
            gen_subset(rng, &vocab.variables),
            sub(rng),
        ),
        _ => {
            if rng.random_bool(0.5) {
                Formula::True
            } else {
                Formula::False
            }
        }
    }
}

/// A random formula of random depth below `depth` (an atom if `depth` is 0).
pub fn gen_below<R: Rng + ?Sized>(rng: &mut R, vocab: &Vocabulary, depth: usize) -> Formula {
    let d = rng.random_range(0..depth.max(1));
    gen_formula(rng, vocab, d)
}

/// Splits a random subset of `actors` into two disjoint coalitions.
fn disjoint_pair<R: Rng + ?Sized>(rng: &mut R, actors: &[String]) -> (ActorSet, ActorSet) {
    let (mut c, mut d) = (NameSet::new(), NameSet::new());
    for a in actors {
        match rng.random_range(0..3) {
            0 => c.insert(a.clone()),
            1 => d.insert(a.clone()),
            _ => false,
        };
    }
    (c, d)
}

/// A random instance of `schema`, side conditions respected. Subformulas have
/// depth below `depth`.
pub fn instantiate_schema<R: Rng + ?Sized>(
    rng: &mut R,
    schema: Schema,
    vocab: &Vocabulary,
    depth: usize,
) -> Formula {
    let vars = |rng: &mut R| gen_subset(rng, &vocab.variables);
    let phi = gen_below(rng, vocab, depth);
    let (t, x) = (vars(rng), vars(rng));
    match schema {
        Schema::Truth => schema::truth(&x, &phi),
        Schema::NegativeIntrospection => schema::negative_introspection(&t, &x, &phi),
        Schema::Distributivity => {
            let psi = gen_below(rng, vocab, depth);
            schema::distributivity(&t, &x, &phi, &psi)
        }
        Schema::Trust => schema::trust(&t, &x, &vars(rng), &phi),
        Schema::MonotonicityB => {
            let (t2, x2) = (t.union(&vars(rng)), x.union(&vars(rng)));
            schema::monotonicity_b(&t, &x, &t2, &x2, &phi)
        }
        Schema::MonotonicityS => {
            let c = gen_subset(rng, &vocab.actors);
            let c2 = c.union(&gen_subset(rng, &vocab.actors));
            let (t2, x2) = (t.union(&vars(rng)), x.union(&vars(rng)));
            schema::monotonicity_s(&c, &t, &x, &c2, &t2, &x2, &phi)
        }
        Schema::Cooperation => {
            let (c, d) = disjoint_pair(rng, &vocab.actors);
            let psi = gen_below(rng, vocab, depth);
            schema::cooperation(&c, &d, &t, &x, &phi, &psi)
        }
        Schema::StrategicIntrospection => {
            schema::strategic_introspection(&gen_subset(rng, &vocab.actors), &t, &x, &phi)
        }
        Schema::BeliefInUnavoidability => schema::belief_in_unavoidability(&t, &x, &vars(rng), &phi),
        Schema::PublicBelief => schema::public_belief(&t, &phi),
        Schema::GeneralizedPublicBelief => schema::generalized_public_belief(&t, &phi),
    }
}

/// A random valid derivation with up to three hypotheses and about `steps`
/// lines, mixing hypotheses, axiom instances, tautologies, modus ponens and
/// necessitation. The last line is whatever the generator produced last.
pub fn gen_derivation<R: Rng + ?Sized>(
    rng: &mut R,
    vocab: &Vocabulary,
    depth: usize,
    steps: usize,
) -> Derivation {
    let hyps = (0..rng.random_range(0..=3))
        .map(|_| gen_below(rng, vocab, depth))
        .collect();
    let mut d = Derivation::new(hyps);
    let axioms: Vec<Schema> = Schema::ALL
        .into_iter()
        .filter(|s| *s != Schema::GeneralizedPublicBelief)
        .collect();
    while d.len() < steps.max(1) {
        match rng.random_range(0..6) {
            0 if !d.hypotheses.is_empty() => {
                let i = rng.random_range(0..d.hypotheses.len());
                d.hyp(i);
            }
            1 => {
                let schema = *axioms.choose(rng).unwrap();
                let f = instantiate_schema(rng, schema, vocab, depth);
                d.axiom(schema, f);
            }
            2 => {
                // ψ, ψ -> (χ -> ψ) ⊢ χ -> ψ, keeping the tautology small
                let small: Vec<usize> = (1..=d.len()).filter(|&i| d.formula(i).size() <= 24).collect();
                let Some(&i) = small.choose(rng) else { continue };
                let psi = d.formula(i).clone();
                let chi = gen_below(rng, vocab, depth);
                let t = d.taut(Formula::implies(
                    psi.clone(),
                    Formula::implies(chi, psi),
                ));
                d.mp(i, t);
            }
            3 => {
                // Some existing implication whose antecedent is also a line.
                let pairs: Vec<(usize, usize)> = (1..=d.len())
                    .flat_map(|j| (1..=d.len()).map(move |i| (i, j)))
                    .filter(|&(i, j)| {
                        matches!(d.formula(j), Formula::Impl(l, _) if **l == *d.formula(i))
                    })
                    .collect();
                if let Some(&(i, j)) = pairs.choose(rng) {
                    d.mp(i, j);
                } else {
                    let psi = gen_below(rng, vocab, depth);
                    d.taut(Formula::implies(psi.clone(), psi));
                }
            }
            4 => {
                let dep = d.hypothesis_dependence();
                let free: Vec<usize> = (1..=d.len()).filter(|&i| !dep[i - 1]).collect();
                if let Some(&i) = free.choose(rng) {
                    d.nec(i);
                }
            }
            _ => {
                let psi = gen_below(rng, vocab, depth);
                d.taut(Formula::or(psi.clone(), Formula::neg(psi)));
            }
        }
    }
    d
}
