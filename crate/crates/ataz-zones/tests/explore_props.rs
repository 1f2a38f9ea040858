//! Exploration verdicts against a bounded explicit word search, agreement
//! across pruning modes, and sanity of the compound (product) relation.

mod common;

use ataz_core::config::{accepts, TimedWord};
use ataz_core::rat::{rat, rat_int};
use ataz_zones::explore::{explore, ExploreConfig, Pruning, Verdict};
use ataz_zones::product::{compound_entails, parse_ta, product_successor, ProductSystem};
use common::{random_automaton, rng};
use rand::Rng;

/// Exhaustive word search over a small delay grid: a positive verdict here
/// forces the symbolic exploration to be positive too.
fn brute_force_nonempty(ata: &ataz_core::OneAta, max_len: usize) -> bool {
    let delays = [rat_int(0), rat(1, 2), rat_int(1), rat(3, 2)];
    let letters: Vec<String> = ata.letters().map(|a| ata.letter_name(a).to_string()).collect();
    fn go(
        ata: &ataz_core::OneAta,
        delays: &[ataz_core::Rat],
        letters: &[String],
        word: &mut Vec<(ataz_core::Rat, String)>,
        max_len: usize,
    ) -> bool {
        if accepts(ata, &TimedWord::new(word.clone())).unwrap() {
            return true;
        }
        if word.len() == max_len {
            return false;
        }
        for d in delays {
            for l in letters {
                word.push((*d, l.clone()));
                if go(ata, delays, letters, word, max_len) {
                    return true;
                }
                word.pop();
            }
        }
        false
    }
    go(ata, &delays, &letters, &mut Vec::new(), max_len)
}

#[test]
fn explore_catches_every_brute_force_witness() {
    let mut rng = rng(31);
    let cfg = ExploreConfig::new(Pruning::Full, Some(20_000));
    let mut positives = 0;
    for _ in 0..40 {
        let ata = random_automaton(&mut rng);
        if brute_force_nonempty(&ata, 3) {
            positives += 1;
            let out = explore(&ata, &cfg);
            assert!(
                matches!(out.verdict, Verdict::NonEmpty { .. }),
                "brute force found a word but the zone graph did not"
            );
        }
    }
    assert!(positives > 5, "generator produced too few non-empty automata");
}

#[test]
fn pruning_modes_agree_on_verdicts() {
    let mut rng = rng(32);
    for _ in 0..40 {
        let ata = random_automaton(&mut rng);
        let full = explore(&ata, &ExploreConfig::new(Pruning::Full, Some(20_000)));
        let bounded = explore(&ata, &ExploreConfig::new(Pruning::Bounded, Some(20_000)));
        let none = explore(&ata, &ExploreConfig::new(Pruning::None, Some(20_000)));
        let verdicts: Vec<Option<bool>> = [&full.verdict, &bounded.verdict, &none.verdict]
            .iter()
            .map(|v| match v {
                Verdict::NonEmpty { .. } => Some(true),
                Verdict::Empty => Some(false),
                Verdict::Inconclusive(_) => None,
            })
            .collect();
        let definite: Vec<bool> = verdicts.iter().flatten().copied().collect();
        assert!(
            definite.windows(2).all(|w| w[0] == w[1]),
            "pruning modes disagree: {verdicts:?}"
        );
    }
}

#[test]
fn contradictory_edge_guards_have_no_successor() {
    let ta = parse_ta(
        "\
ta T;
clocks y;
alphabet a;
init p0;
accepting p0;
p0 -a-> p0 [y in [0,1], y in [2,3]];
",
    )
    .unwrap();
    let src = "\
ata S;
alphabet a;
init q0;
accepting q0;
q0 -a-> q0;
";
    let ata = ataz_core::parse::parse_ata(src).unwrap();
    let n = ataz_zones::product::CompoundNode::initial(&ta, &ata);
    let a = ata.letter_by_name("a").unwrap();
    let targets = ataz_zones::product::compound_targets(&n, a, &ata);
    assert_eq!(targets.len(), 1);
    assert!(product_successor(&n, a, &ta.edges()[0], &targets[0], &ta, &ata).is_none());
}

#[test]
fn compound_entailment_is_a_preorder_on_reached_nodes() {
    use ataz_zones::explore::ZgSystem;
    let ta = parse_ta(include_str!("../../ataz-cli/tests/data/spaced.ta")).unwrap();
    let ata =
        ataz_core::parse::parse_ata(include_str!("../../ataz-cli/tests/data/a1.ata")).unwrap();
    let sys = ProductSystem {
        ta: &ta,
        ata: &ata,
        max_const: 1,
    };
    // collect a handful of reachable compound nodes
    let mut nodes = vec![sys.initial()];
    let mut frontier = vec![sys.initial()];
    while nodes.len() < 12 && !frontier.is_empty() {
        let n = frontier.remove(0);
        for (_, next) in sys.successors(&n) {
            if !nodes.contains(&next) {
                nodes.push(next.clone());
                frontier.push(next);
            }
        }
    }
    for a in &nodes {
        assert!(compound_entails(a, a, 1), "reflexivity failed");
    }
    let mut rng = rng(33);
    for _ in 0..200 {
        let x = &nodes[rng.gen_range(0..nodes.len())];
        let y = &nodes[rng.gen_range(0..nodes.len())];
        let z = &nodes[rng.gen_range(0..nodes.len())];
        if compound_entails(x, y, 1) && compound_entails(y, z, 1) {
            assert!(compound_entails(x, z, 1), "transitivity failed");
        }
    }
}
