//! MTL to 1-ATA translation with clock deactivation.
//!
//! Obligations for pure LTL subformulas never need the clock value, so the
//! translation deactivates the clock instead of resetting it whenever it
//! spawns such an obligation. For one-sided formulas this caps the number of
//! active states of every reachable configuration.

use crate::automaton::{LetterId, LocId, OneAta};
use crate::formula::{dnf_normalize, TransitionFormula};
use crate::interval::Interval;
use crate::mtl::Mtl;
use std::collections::{BTreeMap, BTreeSet};

/// A control location of the translated automaton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosureLoc {
    /// The fresh initial location.
    Init,
    /// The formula itself or one of its until subformulas.
    Formula(Mtl),
    /// The committed location of a next subformula, entered with the clock
    /// just reset and left once the guard has been checked.
    NextMarker(Interval, Mtl),
}

/// Result of translating an MTL formula.
#[derive(Debug, Clone)]
pub struct TranslationResult {
    pub ata: OneAta,
    pub location_of: BTreeMap<ClosureLoc, LocId>,
    /// `Some(k)` iff the formula is one-sided; `None` marks unbounded width.
    pub width_bound: Option<u32>,
}

fn collect_closure(f: &Mtl, out: &mut BTreeSet<ClosureLoc>) {
    match f {
        Mtl::Atom(_) | Mtl::NegAtom(_) => {}
        Mtl::And(l, r) | Mtl::Or(l, r) => {
            collect_closure(l, out);
            collect_closure(r, out);
        }
        Mtl::Next(i, sub) => {
            out.insert(ClosureLoc::NextMarker(*i, (**sub).clone()));
            collect_closure(sub, out);
        }
        Mtl::Until(i, l, r) => {
            out.insert(ClosureLoc::Formula(Mtl::Until(i.to_owned(), l.clone(), r.clone())));
            collect_closure(l, out);
            collect_closure(r, out);
        }
    }
}

struct Builder<'a> {
    loc_of: &'a BTreeMap<ClosureLoc, LocId>,
}

impl Builder<'_> {
    fn loc(&self, c: &ClosureLoc) -> LocId {
        *self.loc_of.get(c).expect("closure location missing")
    }

    /// Deactivate when spawning a pure LTL obligation, reset otherwise.
    fn spawn(&self, f: &Mtl, inner: TransitionFormula) -> TransitionFormula {
        if f.is_pure_ltl() {
            TransitionFormula::deactivate(inner)
        } else {
            TransitionFormula::reset(inner)
        }
    }

    /// Wrap a conjunct or disjunct in a deactivation when the subformula is
    /// pure LTL; otherwise the running clock copy is shared unchanged.
    fn branch(&self, f: &Mtl, inner: TransitionFormula) -> TransitionFormula {
        if f.is_pure_ltl() {
            TransitionFormula::deactivate(inner)
        } else {
            inner
        }
    }

    /// The transition formula of subformula `f` on letter `a`.
    fn delta(&self, f: &Mtl, a: &str) -> TransitionFormula {
        match f {
            Mtl::Atom(b) => {
                if b == a {
                    TransitionFormula::True
                } else {
                    TransitionFormula::False
                }
            }
            Mtl::NegAtom(b) => {
                if b == a {
                    TransitionFormula::False
                } else {
                    TransitionFormula::True
                }
            }
            Mtl::And(l, r) => TransitionFormula::and(
                self.branch(l, self.delta(l, a)),
                self.branch(r, self.delta(r, a)),
            ),
            Mtl::Or(l, r) => TransitionFormula::or(
                self.branch(l, self.delta(l, a)),
                self.branch(r, self.delta(r, a)),
            ),
            Mtl::Next(i, sub) => {
                let marker =
                    TransitionFormula::State(self.loc(&ClosureLoc::NextMarker(*i, (**sub).clone())));
                // An untimed next needs no clock at its committed location:
                // the guard is vacuous, so the marker is spawned inactive and
                // pure LTL formulas keep spawning zero active obligations.
                if f.is_pure_ltl() {
                    TransitionFormula::deactivate(marker)
                } else {
                    TransitionFormula::reset(marker)
                }
            }
            Mtl::Until(i, l, r) => {
                let until_loc = self.loc(&ClosureLoc::Formula(f.clone()));
                TransitionFormula::or(
                    TransitionFormula::and(
                        self.spawn(r, self.delta(r, a)),
                        TransitionFormula::Guard(*i),
                    ),
                    TransitionFormula::and(
                        self.spawn(l, self.delta(l, a)),
                        TransitionFormula::State(until_loc),
                    ),
                )
            }
        }
    }
}

/// Translates `f` into an equivalent 1-ATA over the letters of `f` plus the
/// extra declared letters. The accepting set is empty: a run accepts only by
/// discharging every obligation, i.e. by reaching the empty configuration.
pub fn translate(f: &Mtl, extra_letters: &[String]) -> TranslationResult {
    let mut letters: BTreeSet<String> = BTreeSet::new();
    f.letters(&mut letters);
    letters.extend(extra_letters.iter().cloned());
    let alphabet: Vec<String> = letters.into_iter().collect();
    assert!(!alphabet.is_empty(), "formula and declared letters are both empty");

    let mut closure: BTreeSet<ClosureLoc> = BTreeSet::new();
    closure.insert(ClosureLoc::Init);
    closure.insert(ClosureLoc::Formula(f.clone()));
    collect_closure(f, &mut closure);

    // Stable readable names: phi_init, phi, then u1.. for the remaining until
    // subformulas and xr1.. for the next markers.
    let mut loc_of: BTreeMap<ClosureLoc, LocId> = BTreeMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut ordered: Vec<(ClosureLoc, String)> = vec![
        (ClosureLoc::Init, "phi_init".to_string()),
        (ClosureLoc::Formula(f.clone()), "phi".to_string()),
    ];
    let mut until_n = 0;
    let mut marker_n = 0;
    for c in &closure {
        if ordered.iter().any(|(seen, _)| seen == c) {
            continue;
        }
        let name = match c {
            ClosureLoc::Formula(_) => {
                until_n += 1;
                format!("u{until_n}")
            }
            ClosureLoc::NextMarker(_, _) => {
                marker_n += 1;
                format!("xr{marker_n}")
            }
            ClosureLoc::Init => unreachable!(),
        };
        ordered.push((c.clone(), name));
    }
    for (c, name) in ordered {
        let id = LocId::new(names.len() as u32);
        names.push(name);
        loc_of.insert(c, id);
    }

    let builder = Builder { loc_of: &loc_of };
    let mut delta = BTreeMap::new();
    for (c, id) in &loc_of {
        for (ai, a) in alphabet.iter().enumerate() {
            let tf = match c {
                ClosureLoc::Init => builder.spawn(f, builder.delta(f, a)),
                ClosureLoc::Formula(g) => builder.delta(g, a),
                ClosureLoc::NextMarker(i, sub) => TransitionFormula::and(
                    TransitionFormula::Guard(*i),
                    builder.spawn(sub, builder.delta(sub, a)),
                ),
            };
            delta.insert((*id, LetterId::new(ai as u32)), dnf_normalize(&tf));
        }
    }

    // the name must stay a plain identifier so the printed form re-parses
    let mut name: String = f
        .to_string()
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { '_' })
        .collect();
    name.truncate(48);
    let ata = OneAta::from_clauses(
        format!("mtl_{name}"),
        names,
        alphabet,
        loc_of[&ClosureLoc::Init],
        BTreeSet::new(),
        delta,
    );
    TranslationResult {
        ata,
        location_of: loc_of,
        width_bound: f.width_bound().ok(),
    }
}
