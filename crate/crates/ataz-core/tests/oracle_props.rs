//! Properties of the explicit executor: minimal models really are minimal,
//! DNF preserves satisfaction, and the two worked automata agree with their
//! prose language descriptions on randomized words.

use ataz_core::config::{
    accepts, discrete_successors, minimal_model, AtaState, ClockVal, Configuration, TimedWord,
};
use ataz_core::formula::{dnf_normalize, Clause, TransitionFormula};
use ataz_core::interval::Interval;
use ataz_core::parse::parse_ata;
use ataz_core::rat::{rat, rat_int, Rat};
use ataz_core::{LocId, OneAta};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const A1_SRC: &str = include_str!("../../ataz-cli/tests/data/a1.ata");
const A2_SRC: &str = include_str!("../../ataz-cli/tests/data/a2.ata");

fn a1() -> OneAta {
    parse_ata(A1_SRC).unwrap()
}

fn a2() -> OneAta {
    parse_ata(A2_SRC).unwrap()
}

// -- satisfaction of transition formulas by explicit state sets ------------

fn satisfies(m: &Configuration, v: ClockVal, f: &TransitionFormula) -> bool {
    match f {
        TransitionFormula::True => true,
        TransitionFormula::False => false,
        TransitionFormula::State(q) => m.contains(&AtaState::new(*q, v)),
        TransitionFormula::Guard(i) => match v {
            ClockVal::Inactive => true,
            ClockVal::Active(r) => i.contains(r),
        },
        TransitionFormula::And(a, b) => satisfies(m, v, a) && satisfies(m, v, b),
        TransitionFormula::Or(a, b) => satisfies(m, v, a) || satisfies(m, v, b),
        TransitionFormula::Reset(sub) => satisfies(m, ClockVal::zero(), sub),
        TransitionFormula::Deactivate(sub) => satisfies(m, ClockVal::Inactive, sub),
    }
}

fn satisfies_clause(m: &Configuration, v: ClockVal, c: &Clause) -> bool {
    if c.is_false {
        return false;
    }
    if let ClockVal::Active(r) = v {
        if !c.guard_admits(r) {
            return false;
        }
    }
    c.now.iter().all(|q| m.contains(&AtaState::new(*q, v)))
        && c.reset.iter().all(|q| m.contains(&AtaState::active(*q, Rat::from_integer(0))))
        && c.deactivate.iter().all(|q| m.contains(&AtaState::inactive(*q)))
}

fn arb_interval() -> impl Strategy<Value = Interval> {
    (0u32..3, 0u32..3, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(
        |(a, b, unbounded, lc, hc)| {
            if unbounded {
                Interval::new(a, None, lc, false).unwrap()
            } else {
                let (lo, hi) = (a.min(b), a.max(b));
                Interval::new(lo, Some(hi), lc || lo == hi, hc || lo == hi).unwrap()
            }
        },
    )
}

fn arb_formula() -> impl Strategy<Value = TransitionFormula> {
    let leaf = prop_oneof![
        Just(TransitionFormula::True),
        Just(TransitionFormula::False),
        (0u32..3).prop_map(|q| TransitionFormula::State(LocId::new(q))),
        arb_interval().prop_map(TransitionFormula::Guard),
    ];
    leaf.prop_recursive(5, 64, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TransitionFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| TransitionFormula::or(a, b)),
            inner.clone().prop_map(TransitionFormula::reset),
            inner.prop_map(TransitionFormula::deactivate),
        ]
    })
}

fn arb_val() -> impl Strategy<Value = ClockVal> {
    prop_oneof![
        Just(ClockVal::Inactive),
        (0i64..6, 1i64..4).prop_map(|(n, d)| ClockVal::Active(rat(n, d))),
    ]
}

/// All subsets of the relevant state universe up to a size cap.
fn enumerate_models(f: &TransitionFormula, v: ClockVal) -> Vec<Configuration> {
    let mut locs = std::collections::BTreeSet::new();
    f.locations(&mut locs);
    let mut universe: Vec<AtaState> = Vec::new();
    for q in &locs {
        universe.push(AtaState::new(*q, v));
        universe.push(AtaState::active(*q, rat_int(0)));
        universe.push(AtaState::inactive(*q));
    }
    universe.sort();
    universe.dedup();
    let n = universe.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let cfg = Configuration::from_states(
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| universe[i]),
        );
        out.push(cfg);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    /// Some clause of the DNF has a model on `v` exactly when the formula has
    /// a finite model on `v`, checked by brute-force model search.
    #[test]
    fn dnf_preserves_satisfiability(f in arb_formula(), v in arb_val()) {
        let clauses = dnf_normalize(&f);
        let dnf_has_model = clauses.iter().any(|c| minimal_model(c, v).is_some());
        let formula_has_model = enumerate_models(&f, v)
            .iter()
            .any(|m| satisfies(m, v, &f));
        prop_assert_eq!(dnf_has_model, formula_has_model);
    }

    /// Each clause's minimal model satisfies the clause, and no proper
    /// subset does.
    #[test]
    fn minimal_models_are_minimal(f in arb_formula(), v in arb_val()) {
        for c in dnf_normalize(&f) {
            let Some(m) = minimal_model(&c, v) else { continue };
            prop_assert!(satisfies_clause(&m, v, &c));
            let states: Vec<AtaState> = m.states().copied().collect();
            if states.len() <= 6 {
                for mask in 0..(1u32 << states.len()) {
                    if mask.count_ones() as usize == states.len() {
                        continue;
                    }
                    let sub = Configuration::from_states(
                        (0..states.len())
                            .filter(|i| mask & (1 << i) != 0)
                            .map(|i| states[i]),
                    );
                    prop_assert!(!satisfies_clause(&sub, v, &c));
                }
            }
        }
    }

    /// Every minimal model of a DNF clause is a model of the original
    /// formula.
    #[test]
    fn clause_models_satisfy_the_formula(f in arb_formula(), v in arb_val()) {
        for c in dnf_normalize(&f) {
            if let Some(m) = minimal_model(&c, v) {
                prop_assert!(satisfies(&m, v, &f));
            }
        }
    }
}

// -- set semantics ----------------------------------------------------------

#[test]
fn successors_invariant_under_duplicate_insertion() {
    let ata = a1();
    let q1 = ata.loc_by_name("q1").unwrap();
    let a = ata.letter_by_name("a").unwrap();
    let g = Configuration::from_states([
        AtaState::active(q1, rat(1, 2)),
        AtaState::active(q1, rat(1, 2)),
        AtaState::active(q1, rat(3, 4)),
    ]);
    let h = Configuration::from_states([
        AtaState::active(q1, rat(1, 2)),
        AtaState::active(q1, rat(3, 4)),
    ]);
    assert_eq!(g, h);
    let succ_g: Vec<_> = discrete_successors(&g, a, &ata)
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    let succ_h: Vec<_> = discrete_successors(&h, a, &ata)
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    assert_eq!(succ_g, succ_h);
}

// -- language properties of the worked automata -----------------------------

fn random_word(rng: &mut ChaCha8Rng, letters: &[&str], max_len: usize) -> TimedWord {
    let len = rng.gen_range(0..=max_len);
    let delays = [rat(1, 4), rat(1, 3), rat(1, 2), rat(3, 4), rat_int(1), rat(3, 2)];
    TimedWord::new(
        (0..len)
            .map(|_| {
                (
                    delays[rng.gen_range(0..delays.len())],
                    letters[rng.gen_range(0..letters.len())].to_string(),
                )
            })
            .collect(),
    )
}

/// No two letters at absolute distance exactly one.
fn no_two_at_distance_one(w: &TimedWord) -> bool {
    let mut stamps: Vec<Rat> = Vec::new();
    let mut t = rat_int(0);
    for (d, _) in &w.steps {
        t += *d;
        stamps.push(t);
    }
    for i in 0..stamps.len() {
        for j in i + 1..stamps.len() {
            if stamps[j] - stamps[i] == rat_int(1) {
                return false;
            }
        }
    }
    true
}

#[test]
fn a1_language_is_no_two_letters_one_apart() {
    let ata = a1();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..400 {
        let w = random_word(&mut rng, &["a"], 5);
        assert_eq!(
            accepts(&ata, &w).unwrap(),
            no_two_at_distance_one(&w),
            "word {w}"
        );
    }
}

/// Every `a` is followed by a later `c`, and by a later `b` exactly one time
/// unit after it.
fn a2_prose_property(w: &TimedWord) -> bool {
    let mut stamps: Vec<Rat> = Vec::new();
    let mut t = rat_int(0);
    for (d, _) in &w.steps {
        t += *d;
        stamps.push(t);
    }
    for i in 0..w.steps.len() {
        if w.steps[i].1 != "a" {
            continue;
        }
        let later_c = (i + 1..w.steps.len()).any(|j| w.steps[j].1 == "c");
        let timed_b = (i + 1..w.steps.len())
            .any(|j| w.steps[j].1 == "b" && stamps[j] - stamps[i] == rat_int(1));
        if !(later_c && timed_b) {
            return false;
        }
    }
    true
}

#[test]
fn a2_language_matches_prose_property() {
    let ata = a2();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..400 {
        // strictly positive delays keep simultaneous letters out of scope
        let w = random_word(&mut rng, &["a", "b", "c"], 5);
        assert_eq!(
            accepts(&ata, &w).unwrap(),
            a2_prose_property(&w),
            "word {w}"
        );
    }
}
