//! Direct transcription of the satisfaction clauses, quantifying over named
//! profiles and every complete action profile. No memo table, no pattern
//! reasoning; exponential in the number of actors. Only for cross-checking.

use crate::game::{ActionProfile, Game};
use crate::syntax::{expand_sugar, Formula, NameSet};

use super::{CheckError, CheckOptions};

/// `w ⊩ f`, computed the slow way.
pub fn naive_satisfies(game: &Game, w: &str, f: &Formula) -> Result<bool, CheckError> {
    let w = game.state_id(w)?;
    let f = expand_sugar(f);
    let names = f.names();
    game.var_ids(&names.variables)?;
    game.actor_ids(&names.actors)?;
    let options = CheckOptions::default();
    check_budgets(&f, game, &options)?;
    Ok(eval(game, w, &f))
}

fn check_budgets(f: &Formula, game: &Game, options: &CheckOptions) -> Result<(), CheckError> {
    if let Formula::Strategy { coalition, .. } = f {
        options.check_budget(coalition.len(), game.actions().len())?;
    }
    f.children().try_for_each(|c| check_budgets(c, game, options))
}

/// Every total assignment of actions to `actors`, by name.
fn all_profiles<'a>(game: &Game, actors: impl IntoIterator<Item = &'a str>) -> Vec<ActionProfile> {
    let mut profiles = vec![ActionProfile::new()];
    for actor in actors {
        profiles = profiles
            .into_iter()
            .flat_map(|p| {
                game.actions().iter().map(move |action| {
                    let mut q = p.clone();
                    q.insert(actor, action.clone());
                    q
                })
            })
            .collect();
    }
    profiles
}

fn trusted(game: &Game, w: usize, vars: &NameSet) -> bool {
    vars.is_subset(game.state(w).trustworthy())
}

fn indist(game: &Game, w: usize, u: usize, vars: &NameSet) -> bool {
    game.indist(game.state(w).name(), game.state(u).name(), vars)
        .expect("names validated before evaluation")
}

fn eval(game: &Game, w: usize, f: &Formula) -> bool {
    let n = game.states().len();
    match f {
        Formula::Atom(p) => game.state(w).atoms().contains(p),
        Formula::Neg(body) => !eval(game, w, body),
        Formula::Impl(l, r) => !eval(game, w, l) || eval(game, w, r),
        Formula::Belief { trust, data, body } => {
            for u in 0..n {
                if indist(game, w, u, data) && trusted(game, u, trust) && !eval(game, u, body) {
                    return false;
                }
            }
            true
        }
        Formula::Strategy {
            coalition,
            ante,
            post,
            data,
            body,
        } => {
            let good: Vec<bool> = (0..n).map(|v| eval(game, v, body)).collect();
            let complete: Vec<(ActionProfile, Vec<usize>)> = all_profiles(game, game.actors().iter().map(String::as_str))
                .into_iter()
                .map(|delta| {
                    let ids = game
                        .actors()
                        .iter()
                        .map(|a| game.action_id(delta.get(a).unwrap()).unwrap())
                        .collect();
                    (delta, ids)
                })
                .collect();
            'profiles: for s in all_profiles(game, coalition.iter()) {
                for u in 0..n {
                    if !indist(game, w, u, data) || !trusted(game, u, ante) {
                        continue;
                    }
                    for (delta, ids) in &complete {
                        if !s.agrees_on(delta, coalition) {
                            continue;
                        }
                        for (v, ok) in good.iter().enumerate() {
                            if !ok && game.has_transition(u, ids, v) && trusted(game, v, post) {
                                continue 'profiles;
                            }
                        }
                    }
                }
                return true;
            }
            false
        }
        _ => unreachable!("sugar expanded before evaluation"),
    }
}
