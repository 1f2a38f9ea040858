//! Positive boolean transition formulas and their disjunctive normal form.

use crate::automaton::LocId;
use crate::interval::Interval;
use std::collections::BTreeSet;
use std::fmt;

/// Transition formula over locations: `true | false | q | I | f & f | f | f |
/// x.f | ~x.f`, where `x.` resets the clock and `~x.` deactivates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransitionFormula {
    True,
    False,
    State(LocId),
    Guard(Interval),
    And(Box<TransitionFormula>, Box<TransitionFormula>),
    Or(Box<TransitionFormula>, Box<TransitionFormula>),
    Reset(Box<TransitionFormula>),
    Deactivate(Box<TransitionFormula>),
}

impl TransitionFormula {
    pub fn and(a: TransitionFormula, b: TransitionFormula) -> Self {
        TransitionFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: TransitionFormula, b: TransitionFormula) -> Self {
        TransitionFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn reset(f: TransitionFormula) -> Self {
        TransitionFormula::Reset(Box::new(f))
    }

    pub fn deactivate(f: TransitionFormula) -> Self {
        TransitionFormula::Deactivate(Box::new(f))
    }

    /// All locations referenced by `State` atoms.
    pub fn locations(&self, out: &mut BTreeSet<LocId>) {
        match self {
            TransitionFormula::State(q) => {
                out.insert(*q);
            }
            TransitionFormula::And(a, b) | TransitionFormula::Or(a, b) => {
                a.locations(out);
                b.locations(out);
            }
            TransitionFormula::Reset(f) | TransitionFormula::Deactivate(f) => f.locations(out),
            _ => {}
        }
    }
}

/// One disjunct of a transition formula in DNF. Guards are pre-intersected
/// into a single effective interval; contradictory guards set `guard_unsat`
/// instead of falsifying the clause, because guards are vacuous on an
/// inactive clock value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub guard: Option<Interval>,
    /// The guards intersect to the empty set: unsatisfiable on every active
    /// value, still vacuous on the inactive one.
    pub guard_unsat: bool,
    pub now: BTreeSet<LocId>,
    pub reset: BTreeSet<LocId>,
    pub deactivate: BTreeSet<LocId>,
    pub is_false: bool,
}

impl Clause {
    /// The clause equivalent to `true`: no guard, no atoms.
    pub fn truth() -> Self {
        Clause {
            guard: None,
            guard_unsat: false,
            now: BTreeSet::new(),
            reset: BTreeSet::new(),
            deactivate: BTreeSet::new(),
            is_false: false,
        }
    }

    /// The clause equivalent to `false`.
    pub fn falsity() -> Self {
        Clause {
            is_false: true,
            ..Clause::truth()
        }
    }

    /// No atoms at all; once guards are dealt with the clause behaves like
    /// `true` (its minimal model is the empty set).
    pub fn is_atomless(&self) -> bool {
        !self.is_false && self.now.is_empty() && self.reset.is_empty() && self.deactivate.is_empty()
    }

    /// Does an active clock value pass the guards?
    pub fn guard_admits(&self, v: crate::rat::Rat) -> bool {
        !self.guard_unsat && self.guard.map_or(true, |g| g.contains(v))
    }

    /// Conjunction of two clauses; `None` only when a side is `false`.
    fn conjoin(&self, other: &Clause) -> Option<Clause> {
        if self.is_false || other.is_false {
            return None;
        }
        let mut guard_unsat = self.guard_unsat || other.guard_unsat;
        let guard = match (&self.guard, &other.guard) {
            _ if guard_unsat => None,
            (None, g) => *g,
            (g, None) => *g,
            (Some(a), Some(b)) => {
                let both = a.intersect(b);
                guard_unsat = both.is_none();
                both
            }
        };
        let mut c = Clause {
            guard,
            guard_unsat,
            now: self.now.clone(),
            reset: self.reset.clone(),
            deactivate: self.deactivate.clone(),
            is_false: false,
        };
        c.now.extend(other.now.iter().copied());
        c.reset.extend(other.reset.iter().copied());
        c.deactivate.extend(other.deactivate.iter().copied());
        Some(c)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_false {
            return write!(f, "false");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.guard_unsat {
            parts.push("[1,1] & (1,2]".to_string());
        } else if let Some(g) = &self.guard {
            parts.push(g.to_string());
        }
        for q in &self.now {
            parts.push(format!("q{}", q.index()));
        }
        for q in &self.reset {
            parts.push(format!("x.q{}", q.index()));
        }
        for q in &self.deactivate {
            parts.push(format!("~x.q{}", q.index()));
        }
        if parts.is_empty() {
            return write!(f, "true");
        }
        write!(f, "{}", parts.join(" & "))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Plain,
    Reset,
    Deactivate,
}

/// Rewrites a transition formula into DNF clauses.
///
/// Reset and deactivate distribute over conjunction and disjunction, the
/// innermost operator wins on nesting, `x.I` constant-folds against clock
/// value 0 and `~x.I` folds to true. False clauses are dropped; if everything
/// is false a single false clause is returned so the result is never empty.
pub fn dnf_normalize(f: &TransitionFormula) -> Vec<Clause> {
    let mut clauses = normalize(f, Mode::Plain);
    clauses.retain(|c| !c.is_false);
    // Deterministic de-duplication, first occurrence wins.
    let mut seen = BTreeSet::new();
    clauses.retain(|c| seen.insert(c.clone()));
    if clauses.is_empty() {
        clauses.push(Clause::falsity());
    }
    clauses
}

fn normalize(f: &TransitionFormula, mode: Mode) -> Vec<Clause> {
    match f {
        TransitionFormula::True => vec![Clause::truth()],
        TransitionFormula::False => vec![],
        TransitionFormula::State(q) => {
            let mut c = Clause::truth();
            match mode {
                Mode::Plain => c.now.insert(*q),
                Mode::Reset => c.reset.insert(*q),
                Mode::Deactivate => c.deactivate.insert(*q),
            };
            vec![c]
        }
        TransitionFormula::Guard(i) => match mode {
            Mode::Plain => vec![Clause {
                guard: Some(*i),
                ..Clause::truth()
            }],
            // Clock value is 0 right after a reset.
            Mode::Reset => {
                if i.contains_zero() {
                    vec![Clause::truth()]
                } else {
                    vec![]
                }
            }
            // Guards are satisfied vacuously on an inactive clock.
            Mode::Deactivate => vec![Clause::truth()],
        },
        TransitionFormula::Or(a, b) => {
            let mut out = normalize(a, mode);
            out.extend(normalize(b, mode));
            out
        }
        TransitionFormula::And(a, b) => {
            let left = normalize(a, mode);
            let right = normalize(b, mode);
            let mut out = Vec::new();
            for l in &left {
                for r in &right {
                    if let Some(c) = l.conjoin(r) {
                        out.push(c);
                    }
                }
            }
            out
        }
        // Innermost operator wins: x.~x.f behaves as ~x.f.
        TransitionFormula::Reset(sub) => normalize(sub, Mode::Reset),
        TransitionFormula::Deactivate(sub) => normalize(sub, Mode::Deactivate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TransitionFormula as F;

    fn q(i: u32) -> LocId {
        LocId::new(i)
    }

    #[test]
    fn conjunction_of_state_and_reset() {
        // q0 & x.q1 becomes a single clause {now q0, reset q1}.
        let f = F::and(F::State(q(0)), F::reset(F::State(q(1))));
        let cs = dnf_normalize(&f);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].guard.is_none());
        assert_eq!(cs[0].now.iter().copied().collect::<Vec<_>>(), vec![q(0)]);
        assert_eq!(cs[0].reset.iter().copied().collect::<Vec<_>>(), vec![q(1)]);
        assert!(cs[0].deactivate.is_empty());
    }

    #[test]
    fn reset_guard_folds_at_zero() {
        // x.([0,1] & q1): 0 is in [0,1], so the guard folds away.
        let f = F::reset(F::and(F::Guard(Interval::closed(0, 1)), F::State(q(1))));
        let cs = dnf_normalize(&f);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].guard.is_none());
        assert_eq!(cs[0].reset.iter().copied().collect::<Vec<_>>(), vec![q(1)]);

        // x.([1,2] & q1): 0 is not in [1,2], the whole clause is false.
        let g = F::reset(F::and(F::Guard(Interval::closed(1, 2)), F::State(q(1))));
        let cs = dnf_normalize(&g);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].is_false);
    }

    #[test]
    fn deactivated_guard_is_vacuous() {
        let f = F::deactivate(F::and(F::Guard(Interval::closed(1, 2)), F::State(q(2))));
        let cs = dnf_normalize(&f);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].guard.is_none());
        assert_eq!(
            cs[0].deactivate.iter().copied().collect::<Vec<_>>(),
            vec![q(2)]
        );
    }

    #[test]
    fn innermost_operator_wins() {
        // x.~x.q is ~x.q
        let f = F::reset(F::deactivate(F::State(q(0))));
        let cs = dnf_normalize(&f);
        assert!(cs[0].reset.is_empty());
        assert_eq!(
            cs[0].deactivate.iter().copied().collect::<Vec<_>>(),
            vec![q(0)]
        );
        // ~x.x.q is x.q
        let g = F::deactivate(F::reset(F::State(q(0))));
        let cs = dnf_normalize(&g);
        assert_eq!(cs[0].reset.iter().copied().collect::<Vec<_>>(), vec![q(0)]);
        assert!(cs[0].deactivate.is_empty());
    }

    #[test]
    fn contradictory_guards_stay_vacuous_on_inactive_values() {
        // the guards cannot both hold on an active value, but an inactive
        // value satisfies every guard, so the clause is not false
        let f = F::and(
            F::and(
                F::Guard(Interval::closed(0, 1)),
                F::Guard(Interval::closed(2, 3)),
            ),
            F::State(q(1)),
        );
        let cs = dnf_normalize(&f);
        assert_eq!(cs.len(), 1);
        assert!(!cs[0].is_false);
        assert!(cs[0].guard_unsat);
        assert!(cs[0].now.contains(&q(1)));
    }

    #[test]
    fn distribution_keeps_order() {
        // (q0 | q1) & q2 -> [{q0,q2}, {q1,q2}]
        let f = F::and(F::or(F::State(q(0)), F::State(q(1))), F::State(q(2)));
        let cs = dnf_normalize(&f);
        assert_eq!(cs.len(), 2);
        assert!(cs[0].now.contains(&q(0)) && cs[0].now.contains(&q(2)));
        assert!(cs[1].now.contains(&q(1)) && cs[1].now.contains(&q(2)));
    }
}
