//! Randomized generators shared by the property suites and the acceptance
//! harness: formulas, words, automata and zone-graph nodes, all driven by a
//! seeded generator for reproducibility.

use crate::bound::Bound;
use crate::dbm::Dbm;
use crate::node::{AtaVar, Node};
use ataz_core::config::TimedWord;
use ataz_core::formula::TransitionFormula;
use ataz_core::interval::Interval;
use ataz_core::mtl::Mtl;
use ataz_core::rat::{rat, rat_int};
use ataz_core::{LocId, OneAta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const LETTERS: [&str; 3] = ["a", "b", "c"];

pub fn random_mtl(rng: &mut ChaCha8Rng, depth: usize, max_const: u32) -> Mtl {
    let atom = |rng: &mut ChaCha8Rng| {
        let l = LETTERS[rng.gen_range(0..LETTERS.len())].to_string();
        if rng.gen_bool(0.3) {
            Mtl::NegAtom(l)
        } else {
            Mtl::Atom(l)
        }
    };
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..6) {
        0 => atom(rng),
        1 => Mtl::and(
            random_mtl(rng, depth - 1, max_const),
            random_mtl(rng, depth - 1, max_const),
        ),
        2 => Mtl::or(
            random_mtl(rng, depth - 1, max_const),
            random_mtl(rng, depth - 1, max_const),
        ),
        3 => Mtl::next(
            random_interval(rng, max_const),
            random_mtl(rng, depth - 1, max_const),
        ),
        _ => Mtl::until(
            random_interval(rng, max_const),
            random_mtl(rng, depth - 1, max_const),
            random_mtl(rng, depth - 1, max_const),
        ),
    }
}

/// One-sided: every until's left branch is restricted to pure LTL.
pub fn random_one_sided(rng: &mut ChaCha8Rng, depth: usize, max_const: u32) -> Mtl {
    fn relax(f: &mut Mtl) {
        match f {
            Mtl::Atom(_) | Mtl::NegAtom(_) => {}
            Mtl::And(a, b) | Mtl::Or(a, b) => {
                relax(a);
                relax(b);
            }
            Mtl::Next(i, a) => {
                *i = Interval::full();
                relax(a);
            }
            Mtl::Until(i, a, b) => {
                *i = Interval::full();
                relax(a);
                relax(b);
            }
        }
    }
    let atom = |rng: &mut ChaCha8Rng| Mtl::Atom(LETTERS[rng.gen_range(0..3)].to_string());
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..6) {
        0 => atom(rng),
        1 => Mtl::and(
            random_one_sided(rng, depth - 1, max_const),
            random_one_sided(rng, depth - 1, max_const),
        ),
        2 => Mtl::or(
            random_one_sided(rng, depth - 1, max_const),
            random_one_sided(rng, depth - 1, max_const),
        ),
        3 => Mtl::next(
            random_interval(rng, max_const),
            random_one_sided(rng, depth - 1, max_const),
        ),
        _ => {
            let mut left = random_mtl(rng, depth - 1, 0);
            relax(&mut left);
            Mtl::until(
                random_interval(rng, max_const),
                left,
                random_one_sided(rng, depth - 1, max_const),
            )
        }
    }
}

/// Words over the fixed three-letter alphabet with delays from
/// `{0, 1/2, 1, 3/2, 2}`.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> TimedWord {
    let delays = [rat_int(0), rat(1, 2), rat_int(1), rat(3, 2), rat_int(2)];
    let len = rng.gen_range(1..=max_len);
    TimedWord::new(
        (0..len)
            .map(|_| {
                (
                    delays[rng.gen_range(0..delays.len())],
                    LETTERS[rng.gen_range(0..3)].to_string(),
                )
            })
            .collect(),
    )
}

pub fn random_interval(rng: &mut ChaCha8Rng, max_const: u32) -> Interval {
    let lo = rng.gen_range(0..=max_const);
    if rng.gen_bool(0.3) {
        Interval::new(lo, None, rng.gen_bool(0.7), false).unwrap()
    } else {
        let hi = rng.gen_range(lo..=max_const);
        let point = lo == hi;
        Interval::new(
            lo,
            Some(hi),
            point || rng.gen_bool(0.7),
            point || rng.gen_bool(0.7),
        )
        .unwrap()
    }
}

/// A random automaton with up to three locations and two letters; every
/// (location, letter) gets one to three random clauses.
pub fn random_automaton(rng: &mut ChaCha8Rng) -> OneAta {
    let n_locs = rng.gen_range(2..=3usize);
    let n_letters = rng.gen_range(1..=2usize);
    let locations: Vec<String> = (0..n_locs).map(|i| format!("q{i}")).collect();
    let alphabet: Vec<String> = ["a", "b"][..n_letters]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut transitions = Vec::new();
    for q in 0..n_locs {
        for a in &alphabet {
            if rng.gen_bool(0.1) {
                continue; // leave some transitions undefined
            }
            let n_clauses = rng.gen_range(1..=3usize);
            let mut formula: Option<TransitionFormula> = None;
            for _ in 0..n_clauses {
                let mut clause: Option<TransitionFormula> = None;
                let add = |f: TransitionFormula, clause: &mut Option<TransitionFormula>| {
                    *clause = Some(match clause.take() {
                        None => f,
                        Some(c) => TransitionFormula::and(c, f),
                    });
                };
                if rng.gen_bool(0.5) {
                    add(
                        TransitionFormula::Guard(random_interval(rng, 2)),
                        &mut clause,
                    );
                }
                for _ in 0..rng.gen_range(0..=2) {
                    let target = LocId::new(rng.gen_range(0..n_locs) as u32);
                    let atom = TransitionFormula::State(target);
                    let wrapped = match rng.gen_range(0..3) {
                        0 => atom,
                        1 => TransitionFormula::reset(atom),
                        _ => TransitionFormula::deactivate(atom),
                    };
                    add(wrapped, &mut clause);
                }
                let clause = clause.unwrap_or(TransitionFormula::True);
                formula = Some(match formula.take() {
                    None => clause,
                    Some(f) => TransitionFormula::or(f, clause),
                });
            }
            transitions.push((locations[q].clone(), a.clone(), formula.unwrap()));
        }
    }
    let accepting: Vec<String> = locations
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect();
    OneAta::new("random", locations, alphabet, "q0", &accepting, transitions).unwrap()
}

/// A random non-empty node over an automaton's locations: up to four
/// variables, random difference constraints with constants up to four, and a
/// random inactive set.
pub fn random_node(rng: &mut ChaCha8Rng, ata: &OneAta) -> Node {
    let n_locs = ata.num_locations();
    loop {
        let n_vars = rng.gen_range(1..=4usize);
        let mut vars: BTreeSet<AtaVar> = BTreeSet::new();
        for _ in 0..n_vars {
            vars.insert(AtaVar::new(
                LocId::new(rng.gen_range(0..n_locs) as u32),
                rng.gen_range(1..=2),
            ));
        }
        let vars: Vec<AtaVar> = vars.into_iter().collect();
        let mut z = Dbm::universe(vars);
        let dim = z.vars().len() + 1;
        let mut ok = true;
        for _ in 0..rng.gen_range(0..=2 * dim) {
            let i = rng.gen_range(0..dim);
            let j = rng.gen_range(0..dim);
            if i == j {
                continue;
            }
            let k = if j == 0 {
                rng.gen_range(0..=4i64)
            } else {
                rng.gen_range(-4..=4i64)
            };
            ok &= z.constrain(i, j, Bound::new(k, rng.gen_bool(0.3)));
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut inactive = BTreeSet::new();
        for q in 0..n_locs {
            if rng.gen_bool(0.2) {
                inactive.insert(LocId::new(q as u32));
            }
        }
        return Node {
            zone: Some(z),
            inactive,
        };
    }
}

