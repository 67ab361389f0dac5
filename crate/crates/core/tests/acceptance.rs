//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use doxlogic::harness::{
    fuzz_soundness, fuzz_target, gen_derivation, gen_formula, gen_game, gen_subset, FuzzTarget, GenConfig, Vocabulary,
};
use doxlogic::hilbert::builtin::{positive_introspection, s_necessitation, strategic_introspection_plus};
use doxlogic::hilbert::{b_lift_transform, box_lift_transform, deduction_transform};
use doxlogic::syntax::is_desugared;
use doxlogic::{
    bundled, check_derivation, expand_sugar, find_strategy, naive_satisfies, names, parse, print, satisfies,
    ActionProfile, Checker, Derivation, Formula, Game, NameSet, Rule, Schema,
};

type Outcome = Result<String, String>;

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f(text: &str) -> Formula {
    parse(text).expect("formula parses")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn patriot() -> Outcome {
    let game = Game::from_json(bundled::PATRIOT_GAME).map_err(|e| e.to_string())?;
    let claim = f("[patriot]{x,v,t}{x,v,t} destroyed");
    let introspected = f("B{x,v,t}{x,v,t} [patriot]{x,v,t}{x,v,t} destroyed");
    for g in [&claim, &introspected] {
        let fast = satisfies(&game, "w1", g).map_err(|e| e.to_string())?;
        let slow = naive_satisfies(&game, "w1", g).map_err(|e| e.to_string())?;
        ensure(fast && slow, || format!("{g} at w1: memo {fast}, naive {slow}"))?;
    }
    let xvt = names!["x", "v", "t"];
    let witness = find_strategy(&game, "w1", &names!["patriot"], &xvt, &xvt, &xvt, &f("destroyed"))
        .map_err(|e| e.to_string())?;
    let s1: ActionProfile = [("patriot", "s1")].into_iter().collect();
    ensure(witness.as_ref() == Some(&s1), || format!("witness {witness:?}"))?;
    Ok("claim and its introspection true at w1, witness patriot=s1".into())
}

fn voting() -> Outcome {
    let game = Game::from_json(bundled::VOTING5_GAME).map_err(|e| e.to_string())?;
    // Every vote combination from every pre-vote state: reported tallies are
    // the number of yes votes, and approval means at least three.
    let voters = ["alice", "bob", "carol", "dave", "eve"];
    let mut checked = 0;
    for pre in ["w", "w_misreported", "w_one_yea"] {
        for mask in 0u32..32 {
            let votes: ActionProfile = voters
                .iter()
                .enumerate()
                .map(|(i, v)| (*v, if mask >> i & 1 == 1 { "yes" } else { "no" }))
                .collect();
            let yes = mask.count_ones() as usize;
            for (_, to) in game.successors(pre, &votes).map_err(|e| e.to_string())? {
                let v = game.state_id(to).map_err(|e| e.to_string())?;
                let state = game.state(v);
                if let Some(k) = to.strip_prefix("tally") {
                    ensure(k == yes.to_string(), || format!("{pre} with {yes} yes votes reaches {to}"))?;
                    ensure(state.atoms().contains("approved") == (yes >= 3), || format!("{to} approval"))?;
                    checked += 1;
                }
            }
        }
    }
    let cases = [
        ("[alice]{yea;n}{yea} approved", true),
        ("[alice]{yea;n}{} approved", false),
        ("[alice]{;n}{yea} approved", false),
        ("[alice]{yea;}{yea} approved", false),
    ];
    let mut checker = Checker::new(&game);
    for (text, expected) in cases {
        let g = f(text);
        let fast = checker.satisfies("w", &g).map_err(|e| e.to_string())?;
        let slow = naive_satisfies(&game, "w", &g).map_err(|e| e.to_string())?;
        ensure(fast == expected && slow == expected, || {
            format!("{text}: expected {expected}, memo {fast}, naive {slow}")
        })?;
    }
    Ok(format!("{checked} tally transitions consistent with threshold 3; pattern true/false/false/false"))
}

fn fuzz() -> Outcome {
    let config = GenConfig::default();
    let report = fuzz_soundness(&config);
    let bad: Vec<String> = report
        .schemas
        .iter()
        .filter(|s| !s.failures.is_empty())
        .map(|s| format!("{} ({})", s.schema, s.failures.len()))
        .collect();
    ensure(bad.is_empty(), || format!("failures in {}", bad.join(", ")))?;
    let control = fuzz_target(FuzzTarget::CorruptedTruth, &config);
    ensure(!control.failures.is_empty(), || "negative control found nothing".into())?;
    Ok(format!(
        "{} targets x {} trials, 0 failures; corrupted Truth caught {} times, first at trial {}",
        report.schemas.len(),
        config.trials,
        control.failures.len(),
        control.failures[0].trial
    ))
}

fn mutate(d: &Derivation, k: usize, kind: usize) -> Option<(Derivation, String)> {
    let mut m = d.clone();
    let line = &mut m.lines[k - 1];
    let what = match kind {
        0 => {
            line.formula = Formula::atom("mutated");
            "formula edit"
        }
        1 => {
            line.rule = match line.rule {
                Rule::Tautology => Rule::Axiom(Schema::Truth),
                Rule::Axiom(_) => Rule::Tautology,
                Rule::ModusPonens(i, _) => Rule::Necessitation(i),
                Rule::Necessitation(_) => Rule::Tautology,
                Rule::Hypothesis(_) => return None,
            };
            "rule name"
        }
        _ => {
            line.rule = match line.rule {
                Rule::ModusPonens(i, j) => Rule::ModusPonens(j, i),
                Rule::Necessitation(i) if i > 1 => Rule::Necessitation(i - 1),
                _ => return None,
            };
            "premise index"
        }
    };
    Some((m, format!("{what} at line {k}")))
}

fn proof_suite() -> Outcome {
    let lemma = Derivation::from_json(bundled::LEMMA1_PROOF).map_err(|e| e.to_string())?;
    let (c, t, x, p) = (names!["a"], names!["t"], names!["x"], Formula::atom("p"));
    let proofs = [
        ("lemma1", lemma),
        ("strategic-introspection-plus", strategic_introspection_plus(&c, &t, &x, &p)),
        ("s-necessitation", s_necessitation(&t, &x, &p)),
    ];
    for (name, d) in &proofs {
        check_derivation(d).map_err(|e| format!("{name}: {e}"))?;
    }
    ensure(proofs[0].1 == positive_introspection(&t, &x, &p), || "bundled lemma differs from template".into())?;

    let mut r = rng(4);
    let mut mutations = 0;
    while mutations < 20 {
        let kind = mutations % 3;
        let (name, d) = proofs.choose(&mut r).unwrap();
        let k = r.random_range(1..=d.len());
        let Some((m, what)) = mutate(d, k, kind) else { continue };
        match check_derivation(&m) {
            Err(failure) if failure.line == k => mutations += 1,
            Err(failure) => return Err(format!("{name}, {what}: failed at line {}", failure.line)),
            Ok(()) => return Err(format!("{name}, {what}: still valid")),
        }
    }
    Ok(format!("3 proofs valid; {mutations} mutations each rejected at the mutated line"))
}

fn transformers() -> Outcome {
    let config = GenConfig::default();
    let mut r = rng(5);
    let mut done = 0;
    let mut lines = 0;
    while done < 100 {
        let game = gen_game(&mut r, &config);
        let vocab = Vocabulary::of_game(&game);
        let d = gen_derivation(&mut r, &vocab, 3, 12);
        check_derivation(&d).map_err(|e| format!("generated derivation invalid: {e}"))?;
        if d.hypotheses.is_empty() {
            continue;
        }
        done += 1;
        let psi = expand_sugar(d.conclusion().unwrap());
        let phi = expand_sugar(d.hypotheses.choose(&mut r).unwrap());
        let (t, x) = (gen_subset(&mut r, &vocab.variables), gen_subset(&mut r, &vocab.variables));

        let e = deduction_transform(&d, &phi).map_err(|e| e.to_string())?;
        check_derivation(&e).map_err(|err| format!("deduction output: {err}"))?;
        ensure(e.conclusion() == Some(&Formula::implies(phi.clone(), psi.clone())), || "deduction conclusion".into())?;

        let b = b_lift_transform(&d, &t, &x).map_err(|e| e.to_string())?;
        check_derivation(&b).map_err(|err| format!("B-lift output: {err}"))?;
        let want = Formula::belief(t.clone(), x.clone(), psi.clone());
        ensure(b.conclusion().map(expand_sugar) == Some(want), || "B-lift conclusion".into())?;

        let s = box_lift_transform(&d, &t, &x).map_err(|e| e.to_string())?;
        check_derivation(&s).map_err(|err| format!("box-lift output: {err}"))?;
        let want = Formula::doxastic(NameSet::new(), t, x, psi);
        ensure(s.conclusion().map(expand_sugar) == Some(want), || "box-lift conclusion".into())?;
        lines += e.len() + b.len() + s.len();
    }
    Ok(format!("{done} derivations x 3 transformers re-validated ({lines} output lines)"))
}

fn oracle_equivalence() -> Outcome {
    let config = GenConfig::default();
    let mut r = rng(6);
    for i in 0..500 {
        let game = gen_game(&mut r, &config);
        let g = gen_formula(&mut r, &Vocabulary::of_game(&game), config.max_formula_depth);
        let w = game.states().choose(&mut r).unwrap().name().to_string();
        let fast = satisfies(&game, &w, &g).map_err(|e| e.to_string())?;
        let slow = naive_satisfies(&game, &w, &g).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("triple {i}: {g} at {w}: memo {fast}, naive {slow}"))?;
    }
    Ok("500 triples agree".into())
}

fn round_trip() -> Outcome {
    let config = GenConfig::default();
    let mut r = rng(7);
    for _ in 0..1000 {
        let game = gen_game(&mut r, &config);
        let g = gen_formula(&mut r, &Vocabulary::of_game(&game), config.max_formula_depth);
        let text = print(&g);
        let back = parse(&text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == g, || format!("{text} reparsed as {back}"))?;
        let once = expand_sugar(&g);
        ensure(is_desugared(&once) && expand_sugar(&once) == once, || format!("desugaring {text}"))?;
        ensure(parse(&print(&once)).as_ref() == Ok(&once), || format!("desugared {once}"))?;
    }
    Ok("1000 formulas: parse(print(f)) = f, desugaring idempotent".into())
}

fn equivalence_relations() -> Outcome {
    let config = GenConfig::default();
    let mut r = rng(8);
    let mut pairs = 0usize;
    for _ in 0..200 {
        let game = gen_game(&mut r, &config);
        let n = game.states().len();
        let nv = game.variables().len();
        let rel = |mask: u32| -> Vec<Vec<bool>> {
            let ids: Vec<usize> = (0..nv).filter(|i| mask >> i & 1 == 1).collect();
            (0..n).map(|w| (0..n).map(|u| game.indist_ids(w, u, &ids)).collect()).collect()
        };
        let all: Vec<Vec<Vec<bool>>> = (0..1u32 << nv).map(rel).collect();
        for (mask, m) in all.iter().enumerate() {
            for w in 0..n {
                ensure(m[w][w], || format!("~ not reflexive for mask {mask}"))?;
                for u in 0..n {
                    ensure(m[w][u] == m[u][w], || format!("~ not symmetric for mask {mask}"))?;
                    for v in 0..n {
                        ensure(!(m[w][u] && m[u][v]) || m[w][v], || format!("~ not transitive for mask {mask}"))?;
                    }
                    pairs += 1;
                }
            }
        }
        ensure(all[0].iter().flatten().all(|b| *b), || "~ for the empty set is not universal".into())?;
        for x in 0..all.len() {
            for y in 0..all.len() {
                let joint = all[x].iter().flatten().zip(all[y].iter().flatten());
                let law = all[x | y].iter().flatten().zip(joint).all(|(xy, (a, b))| *xy == (*a && *b));
                ensure(law, || format!("union law fails for masks {x}, {y}"))?;
            }
        }
    }
    Ok(format!("200 games, {pairs} (subset, pair) checks"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("patriot reproduction", Duration::from_secs(1), patriot),
        ("voting reproduction", Duration::from_secs(5), voting),
        ("soundness fuzz", Duration::from_secs(60), fuzz),
        ("proof suite", Duration::from_secs(5), proof_suite),
        ("transformer closure", Duration::from_secs(30), transformers),
        ("oracle equivalence", Duration::from_secs(30), oracle_equivalence),
        ("parser round-trip", Duration::from_secs(5), round_trip),
        ("equivalence relations", Duration::from_secs(10), equivalence_relations),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; too slow")),
            other => other,
        };
        let timing = format!("{:.3}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs());
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({timing})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({timing})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
