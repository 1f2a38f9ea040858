//! Soundness and completeness of the symbolic successor against the explicit
//! executor, on randomized automata, nodes and targets:
//!  - forward: stepping a sampled configuration lands inside the symbolic
//!    successor;
//!  - backward: a sampled configuration of the successor is reachable from
//!    some configuration of the source by some delay.
//! Plus canonical-form and variable-hygiene invariants.

mod common;

use ataz_core::config::{discrete_successors, AtaState, Configuration};
use ataz_core::rat::{rat, rat_int, Rat};
use ataz_core::LocId;
use ataz_zones::bound::Bound;
use ataz_zones::explore::propagate_step;
use ataz_zones::node::{enumerate_targets, node_satisfies, successor_traced, AtaVar, Node};
use common::{random_automaton, random_node};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[test]
fn successor_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let delays = [rat_int(0), rat(1, 2), rat_int(1), rat(3, 2)];
    let mut checked = 0;
    let mut skipped_collapse = 0;
    'outer: while checked < 120 {
        let ata = random_automaton(&mut rng);
        let node = random_node(&mut rng, &ata);
        let letter = {
            let k = rng.gen_range(0..ata.letters().count());
            ata.letters().nth(k).unwrap()
        };
        let targets = enumerate_targets(&node, letter, &ata);
        if targets.is_empty() {
            continue;
        }
        let t = &targets[rng.gen_range(0..targets.len())];
        let Some((succ, trace)) = successor_traced(&node, letter, t, &ata) else {
            continue;
        };
        checked += 1;

        // Forward, per the chosen target: elapse a sampled configuration,
        // take each variable through its chosen clause, union the minimal
        // models. Whenever all models exist the union must satisfy the
        // symbolic successor.
        let var_vals: Vec<(AtaVar, Rat)> = match &node.zone {
            None => Vec::new(),
            Some(z) => z.vars().iter().copied().zip(z.sample()).collect(),
        };
        let mut gamma = Configuration::empty();
        for (v, r) in &var_vals {
            gamma.insert(AtaState::active(v.loc, *r));
        }
        for q in &node.inactive {
            gamma.insert(AtaState::inactive(*q));
        }
        assert!(node_satisfies(&gamma, &node, &ata));
        for d in delays {
            let mut union = Configuration::empty();
            let mut feasible = true;
            for (v, k) in &t.choices {
                let clause = &ata.clauses(v.loc, letter).unwrap()[*k];
                let val = if v.index == 0 {
                    ataz_core::config::ClockVal::Inactive
                } else {
                    let r = var_vals.iter().find(|(u, _)| u == v).unwrap().1;
                    ataz_core::config::ClockVal::Active(r + d)
                };
                match ataz_core::config::minimal_model(clause, val) {
                    Some(m) => union = union.union(&m),
                    None => {
                        feasible = false;
                        break;
                    }
                }
            }
            if feasible {
                assert!(
                    node_satisfies(&union, &succ, &ata),
                    "forward escape: {} via {:?} (d={})",
                    union.display(&ata),
                    t,
                    d
                );
            }
        }

        // Graph-level soundness: every explicit step lands in some symbolic
        // successor of the node.
        let all_succs: Vec<Node> = targets
            .iter()
            .filter_map(|t2| successor_traced(&node, letter, t2, &ata).map(|(n, _)| n))
            .collect();
        for d in delays.iter().take(2) {
            for (_, next) in discrete_successors(&gamma.elapse(*d), letter, &ata) {
                assert!(
                    all_succs.iter().any(|s| node_satisfies(&next, s, &ata)),
                    "explicit step escaped every symbolic successor: {}",
                    next.display(&ata)
                );
            }
        }

        // Backward: a sampled successor configuration is reachable from the
        // source node. The pre-image is found by pinning the copied values
        // and solving for a delay; the final check replays the explicit
        // semantics.
        let Some(zone) = &succ.zone else {
            continue;
        };
        let vals: Vec<Rat> = zone.sample();
        let next_vals: Vec<(AtaVar, Rat)> =
            zone.vars().iter().copied().zip(vals.iter().copied()).collect();
        let mut gamma_prime = Configuration::empty();
        for (v, r) in &next_vals {
            gamma_prime.insert(AtaState::active(v.loc, *r));
        }
        for q in &succ.inactive {
            gamma_prime.insert(AtaState::inactive(*q));
        }
        let (prev_vals, d) = propagate_step(
            node.zone.as_ref(),
            trace.guarded.as_ref(),
            &trace.copies,
            &next_vals,
        );
        let mut gamma = Configuration::empty();
        for (v, r) in &prev_vals {
            gamma.insert(AtaState::active(v.loc, *r));
        }
        for q in &node.inactive {
            gamma.insert(AtaState::inactive(*q));
        }
        // two source variables collapsing onto one state cannot follow two
        // different clauses at once; those samples are out of scope
        if gamma.len() + node.inactive.len() < node.active_vars().len() + node.inactive.len() {
            let mut per_state_clauses: std::collections::BTreeMap<AtaState, BTreeSet<usize>> =
                Default::default();
            for (v, r) in &prev_vals {
                let s = AtaState::active(v.loc, *r);
                let k = t
                    .choices
                    .iter()
                    .find(|(tv, _)| tv == v)
                    .map(|(_, k)| *k)
                    .unwrap();
                per_state_clauses.entry(s).or_default().insert(k);
            }
            if per_state_clauses.values().any(|ks| ks.len() > 1) {
                skipped_collapse += 1;
                continue 'outer;
            }
        }
        assert!(node_satisfies(&gamma, &node, &ata), "pre-image left the node");
        let reached = discrete_successors(&gamma.elapse(d), letter, &ata)
            .into_iter()
            .any(|(_, c)| c == gamma_prime);
        assert!(
            reached,
            "backward: {} not reachable from {} with d={}",
            gamma_prime.display(&ata),
            gamma.display(&ata),
            d
        );
    }
    assert!(checked >= 120);
    // collapses should stay rare
    assert!(skipped_collapse < 30, "too many skipped: {skipped_collapse}");
}

#[test]
fn variable_hygiene_after_successor() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let ata = random_automaton(&mut rng);
        let node = random_node(&mut rng, &ata);
        for letter in ata.letters() {
            for t in enumerate_targets(&node, letter, &ata) {
                let Some((succ, _)) = successor_traced(&node, letter, &t, &ata) else {
                    continue;
                };
                // indices per location are contiguous from 1
                let mut by_loc: std::collections::BTreeMap<LocId, Vec<u32>> = Default::default();
                for v in succ.active_vars() {
                    assert!(v.index >= 1);
                    by_loc.entry(v.loc).or_default().push(v.index);
                }
                for (_, mut idxs) in by_loc {
                    idxs.sort();
                    for (i, idx) in idxs.iter().enumerate() {
                        assert_eq!(*idx, i as u32 + 1, "non-contiguous indices {idxs:?}");
                    }
                }
                // inactive entries never overlap active variables by index 0
                for v in succ.active_vars() {
                    assert!(v.index != 0);
                }
            }
        }
    }
}

#[test]
fn canonicalization_is_idempotent_and_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let ata = random_automaton(&mut rng);
        let node = random_node(&mut rng, &ata);
        let z = node.zone.unwrap();
        let mut again = z.clone();
        assert!(again.close());
        assert_eq!(z, again, "closing a canonical matrix must not change it");
        // tightening any entry never loosens any other
        let dim = z.vars().len() + 1;
        let i = rng.gen_range(0..dim);
        let j = rng.gen_range(0..dim);
        if i != j && !z.get(i, j).is_inf() {
            let tighter = Bound::new(z.get(i, j).value() - 1, false);
            let mut t = z.clone();
            if t.constrain(i, j, tighter) {
                for a in 0..dim {
                    for b in 0..dim {
                        assert!(t.get(a, b) <= z.get(a, b));
                    }
                }
            }
        }
    }
}

#[test]
fn accepting_nodes_sample_accepting_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..150 {
        let ata = random_automaton(&mut rng);
        let node = random_node(&mut rng, &ata);
        let cfg = node.sample_configuration();
        assert_eq!(
            node.is_accepting(&ata),
            cfg.is_accepting(&ata),
            "node and sampled configuration disagree on acceptance"
        );
    }
}
