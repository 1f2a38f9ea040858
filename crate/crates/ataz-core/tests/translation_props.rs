//! The translated automaton accepts exactly the words satisfying the
//! formula, and one-sided formulas never exceed their width bound.

use ataz_core::config::{accepts, observed_width, TimedWord};
use ataz_core::interval::Interval;
use ataz_core::mtl::mtl_holds;
use ataz_core::rat::{rat, rat_int};
use ataz_core::translate::translate;
use ataz_core::Mtl;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LETTERS: [&str; 3] = ["a", "b", "c"];

fn random_interval(rng: &mut ChaCha8Rng, max_const: u32) -> Interval {
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

fn random_mtl(rng: &mut ChaCha8Rng, depth: usize, max_const: u32) -> Mtl {
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

/// One-sided: until left branches are pure LTL by construction.
fn random_one_sided(rng: &mut ChaCha8Rng, depth: usize, max_const: u32) -> Mtl {
    let pure = |rng: &mut ChaCha8Rng, depth: usize| -> Mtl {
        let mut f = random_mtl(rng, depth, 0);
        // force every interval to [0, inf)
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
        relax(&mut f);
        f
    };
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
        _ => Mtl::until(
            random_interval(rng, max_const),
            pure(rng, depth - 1),
            random_one_sided(rng, depth - 1, max_const),
        ),
    }
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> TimedWord {
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

#[test]
fn translation_preserves_the_language() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let extra: Vec<String> = LETTERS.iter().map(|s| s.to_string()).collect();
    for case in 0..60 {
        let f = random_mtl(&mut rng, 3, 2);
        let t = translate(&f, &extra);
        for _ in 0..40 {
            let w = random_word(&mut rng, 4);
            let direct = mtl_holds(&w, 1, &f);
            let via_automaton = accepts(&t.ata, &w).unwrap();
            assert_eq!(direct, via_automaton, "case {case}: {f} on {w}");
        }
    }
}

#[test]
fn empty_word_never_satisfies_a_translation() {
    // the semantics needs position 1 to exist, and translated automata have
    // no accepting locations
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let extra: Vec<String> = LETTERS.iter().map(|s| s.to_string()).collect();
    for _ in 0..20 {
        let f = random_mtl(&mut rng, 2, 2);
        let t = translate(&f, &extra);
        assert!(!accepts(&t.ata, &TimedWord::default()).unwrap());
    }
}

#[test]
fn observed_width_stays_below_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let extra: Vec<String> = LETTERS.iter().map(|s| s.to_string()).collect();
    let delays = [rat(1, 2), rat_int(1), rat(3, 2)];
    for case in 0..25 {
        let f = random_one_sided(&mut rng, 3, 2);
        assert!(f.is_one_sided(), "generator broke: {f}");
        let bound = f.width_bound().unwrap();
        let t = translate(&f, &extra);
        assert_eq!(t.width_bound, Some(bound));
        let seen = observed_width(&t.ata, 4, &delays);
        assert!(
            seen as u32 <= bound,
            "case {case}: {f} observed {seen} > bound {bound}"
        );
    }
}

#[test]
fn one_sided_example_has_width_one_in_practice() {
    let f = Mtl::until(
        Interval::closed(1, 2),
        Mtl::finally(Interval::full(), "a", Mtl::Atom("a".into())),
        Mtl::Atom("c".into()),
    );
    let t = translate(&f, &["b".to_string()]);
    let seen = observed_width(&t.ata, 4, &[rat(1, 2), rat_int(1)]);
    assert_eq!(seen, 1);
    assert_eq!(t.width_bound, Some(1));
}
