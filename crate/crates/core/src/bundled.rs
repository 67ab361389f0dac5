//! Example games and proofs shipped with the crate.

use crate::game::Game;
use crate::hilbert::{builtin, Derivation};
use crate::names;
use crate::syntax::Formula;

/// Single-actor interception game: four states, `x` and `v` trustworthy
/// everywhere, `t` trustworthy everywhere except `w1`.
pub const PATRIOT_GAME: &str = include_str!("../data/patriot.game");

/// Five voters, approval iff at least three vote yes. A newspaper reports two
/// committed supporters (`yea`) and two committed opponents (`nay`); Alice is
/// undecided. The tallyman's count `n` may be wrong.
pub const VOTING5_GAME: &str = include_str!("../data/voting5.game");

/// Positive introspection at `T = {t}`, `X = {x}`, body `p`.
pub const LEMMA1_PROOF: &str = include_str!("../data/lemma1.proof");

pub fn patriot() -> Game {
    Game::from_json(PATRIOT_GAME).expect("bundled patriot game is valid")
}

pub fn voting5() -> Game {
    Game::from_json(VOTING5_GAME).expect("bundled voting game is valid")
}

/// The derivation stored in [`LEMMA1_PROOF`], built from its template.
pub fn lemma1() -> Derivation {
    builtin::positive_introspection(&names!["t"], &names!["x"], &Formula::atom("p"))
}

/// `(file name, contents)` for every bundled file.
pub fn files() -> [(&'static str, &'static str); 3] {
    [
        ("patriot.game", PATRIOT_GAME),
        ("voting5.game", VOTING5_GAME),
        ("lemma1.proof", LEMMA1_PROOF),
    ]
}
