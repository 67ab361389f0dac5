use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use doxlogic::harness::{gen_formula, gen_game, GenConfig, Vocabulary};
use doxlogic::{expand_sugar, naive_satisfies, parse, print, Checker, Formula, Game, NameSet};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `w ~_X u` straight from the stored value tags.
fn same_values(game: &Game, w: usize, u: usize, vars: &[String]) -> bool {
    let file = game.to_file();
    vars.iter()
        .all(|x| file.states[w].values[x] == file.states[u].values[x])
}

fn subsets(vars: &[String]) -> Vec<Vec<String>> {
    (0..1u32 << vars.len())
        .map(|mask| {
            vars.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

#[test]
fn seed_42_game_reloads() {
    let config = GenConfig::default();
    let game = gen_game(&mut rng(42), &config);
    let again = Game::from_json(&game.to_json()).unwrap();
    assert_eq!(again.to_file(), game.to_file());
    assert!(!game.states().is_empty());
    assert!(game.states().len() <= config.max_states);
    assert!(game.variables().len() <= config.max_variables);
    assert!(game.actors().len() <= config.max_actors);
    assert!(game.actions().len() <= config.max_actions);
    assert!(game.mechanism().len() <= config.max_mech_entries);
}

#[test]
fn single_terminated_state() {
    let config = GenConfig {
        max_states: 1,
        max_mech_entries: 0,
        ..GenConfig::default()
    };
    for seed in 0..20 {
        let game = gen_game(&mut rng(seed), &config);
        assert_eq!(game.states().len(), 1);
        assert!(game.outgoing(0).is_empty());
        // Nothing can follow, so every strategy claim is vacuous.
        assert!(doxlogic::satisfies(&game, "w0", &parse("[]{}{}false").unwrap()).unwrap());
    }
}

#[test]
fn indistinguishability_matches_value_tags_on_1000_games() {
    let config = GenConfig::default();
    for seed in 0..1000 {
        let game = gen_game(&mut rng(seed), &config);
        let n = game.states().len();
        for xs in subsets(game.variables()) {
            let set: NameSet = xs.iter().cloned().collect();
            let ids = game.var_ids(&set).unwrap();
            for w in 0..n {
                for u in 0..n {
                    assert_eq!(game.indist_ids(w, u, &ids), same_values(&game, w, u, &xs));
                }
            }
        }
    }
}

#[test]
fn generated_formulas_stay_in_scope_and_round_trip() {
    let config = GenConfig::default();
    let mut r = rng(5);
    for _ in 0..300 {
        let game = gen_game(&mut r, &config);
        let vocab = Vocabulary::of_game(&game);
        let depth = r.random_range(0..=config.max_formula_depth);
        let f = gen_formula(&mut r, &vocab, depth);
        // Generator depth counts connectives; `Formula::depth` counts nodes.
        assert!(f.depth() <= depth + 1);
        let names = f.names();
        assert!(names.variables.iter().all(|v| vocab.variables.iter().any(|w| w == v)));
        assert!(names.actors.iter().all(|a| vocab.actors.iter().any(|b| b == a)));
        assert_eq!(parse(&print(&f)).unwrap(), f, "{f}");
    }
    assert!(matches!(gen_formula(&mut r, &Vocabulary::of_game(&gen_game(&mut rng(1), &config)), 0), Formula::Atom(_)));
}

#[test]
fn memoized_checker_agrees_with_naive_evaluator() {
    let config = GenConfig::default();
    let mut r = rng(99);
    for _ in 0..200 {
        let game = gen_game(&mut r, &config);
        let vocab = Vocabulary::of_game(&game);
        let f = gen_formula(&mut r, &vocab, config.max_formula_depth);
        let mut checker = Checker::new(&game);
        for state in game.states() {
            assert_eq!(
                checker.satisfies(state.name(), &f).unwrap(),
                naive_satisfies(&game, state.name(), &f).unwrap(),
                "{f} at {} in {}",
                state.name(),
                game.to_json()
            );
        }
    }
}

#[test]
fn evaluate_all_matches_pointwise_checks() {
    let config = GenConfig::default();
    let mut r = rng(17);
    for _ in 0..100 {
        let game = gen_game(&mut r, &config);
        let f = gen_formula(&mut r, &Vocabulary::of_game(&game), 3);
        let all = doxlogic::evaluate_all(&game, &f).unwrap();
        for (state, verdict) in &all {
            assert_eq!(*verdict, doxlogic::satisfies(&game, state, &f).unwrap());
        }
        assert_eq!(all.len(), game.states().len());
    }
}

#[test]
fn sugar_does_not_change_meaning() {
    let config = GenConfig::default();
    let mut r = rng(23);
    for _ in 0..100 {
        let game = gen_game(&mut r, &config);
        let f = gen_formula(&mut r, &Vocabulary::of_game(&game), 3);
        let plain = expand_sugar(&f);
        assert_eq!(
            doxlogic::evaluate_all(&game, &f).unwrap(),
            doxlogic::evaluate_all(&game, &plain).unwrap()
        );
    }
}

/// Trusting more and knowing more only shrinks the candidate set.
#[test]
fn belief_grows_with_trust_and_data() {
    let config = GenConfig::default();
    let mut r = rng(31);
    for _ in 0..100 {
        let game = gen_game(&mut r, &config);
        let vocab = Vocabulary::of_game(&game);
        let body = gen_formula(&mut r, &vocab, 2);
        let vars: Vec<String> = game.variables().to_vec();
        let all: NameSet = vars.iter().cloned().collect();
        let weak = Formula::belief(NameSet::new(), NameSet::new(), body.clone());
        let strong = Formula::belief(all.clone(), all, body);
        let w = doxlogic::evaluate_all(&game, &weak).unwrap();
        let s = doxlogic::evaluate_all(&game, &strong).unwrap();
        for (state, holds) in &w {
            assert!(!holds || s[state], "at {state}");
        }
    }
}
