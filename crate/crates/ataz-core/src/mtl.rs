//! Metric temporal logic over finite timed words, in negation normal form.

use crate::config::TimedWord;
use crate::interval::Interval;
use crate::rat::Rat;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// An MTL formula in NNF: negation occurs on atoms only, by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mtl {
    Atom(String),
    NegAtom(String),
    And(Box<Mtl>, Box<Mtl>),
    Or(Box<Mtl>, Box<Mtl>),
    Next(Interval, Box<Mtl>),
    Until(Interval, Box<Mtl>, Box<Mtl>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MtlError {
    #[error("width bound is only defined for one-sided formulas")]
    NotOneSided,
}

impl Mtl {
    pub fn and(a: Mtl, b: Mtl) -> Self {
        Mtl::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Mtl, b: Mtl) -> Self {
        Mtl::Or(Box::new(a), Box::new(b))
    }

    pub fn next(i: Interval, f: Mtl) -> Self {
        Mtl::Next(i, Box::new(f))
    }

    pub fn until(i: Interval, l: Mtl, r: Mtl) -> Self {
        Mtl::Until(i, Box::new(l), Box::new(r))
    }

    /// `F_I f`, sugar for `(a | !a) U_I f` with `a` a designated letter.
    pub fn finally(i: Interval, designated: &str, f: Mtl) -> Self {
        let truth = Mtl::or(
            Mtl::Atom(designated.to_string()),
            Mtl::NegAtom(designated.to_string()),
        );
        Mtl::until(i, truth, f)
    }

    /// Letters occurring in the formula.
    pub fn letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Mtl::Atom(a) | Mtl::NegAtom(a) => {
                out.insert(a.clone());
            }
            Mtl::And(l, r) | Mtl::Or(l, r) => {
                l.letters(out);
                r.letters(out);
            }
            Mtl::Next(_, f) => f.letters(out),
            Mtl::Until(_, l, r) => {
                l.letters(out);
                r.letters(out);
            }
        }
    }

    /// Pure LTL: every interval is `[0, inf)`.
    pub fn is_pure_ltl(&self) -> bool {
        match self {
            Mtl::Atom(_) | Mtl::NegAtom(_) => true,
            Mtl::And(l, r) | Mtl::Or(l, r) => l.is_pure_ltl() && r.is_pure_ltl(),
            Mtl::Next(i, f) => i.is_full() && f.is_pure_ltl(),
            Mtl::Until(i, l, r) => i.is_full() && l.is_pure_ltl() && r.is_pure_ltl(),
        }
    }

    /// One-sided: the left argument of every until is pure LTL; next is
    /// unrestricted.
    pub fn is_one_sided(&self) -> bool {
        match self {
            Mtl::Atom(_) | Mtl::NegAtom(_) => true,
            Mtl::And(l, r) | Mtl::Or(l, r) => l.is_one_sided() && r.is_one_sided(),
            Mtl::Next(_, f) => f.is_one_sided(),
            Mtl::Until(_, l, r) => l.is_pure_ltl() && l.is_one_sided() && r.is_one_sided(),
        }
    }

    /// Bound on the number of active states in any configuration reachable in
    /// the translated automaton. Defined for one-sided formulas only.
    pub fn width_bound(&self) -> Result<u32, MtlError> {
        if !self.is_one_sided() {
            return Err(MtlError::NotOneSided);
        }
        Ok(self.width_bound_rec())
    }

    fn width_bound_rec(&self) -> u32 {
        if self.is_pure_ltl() {
            return 1;
        }
        match self {
            Mtl::Atom(_) | Mtl::NegAtom(_) => 1,
            Mtl::Or(l, r) => l.width_bound_rec().max(r.width_bound_rec()),
            Mtl::And(l, r) => l.width_bound_rec() + r.width_bound_rec(),
            Mtl::Next(_, f) => f.width_bound_rec(),
            Mtl::Until(_, _, r) => r.width_bound_rec(),
        }
    }
}

impl fmt::Display for Mtl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mtl::Atom(a) => write!(f, "{a}"),
            Mtl::NegAtom(a) => write!(f, "!{a}"),
            Mtl::And(l, r) => write!(f, "({l} & {r})"),
            Mtl::Or(l, r) => write!(f, "({l} | {r})"),
            Mtl::Next(i, x) => write!(f, "X{i} {x}"),
            Mtl::Until(i, l, r) => write!(f, "({l} U{i} {r})"),
        }
    }
}

/// Does `(w, i)` satisfy `f`? Positions are 1-based; `i` must be within the
/// word. `w ⊨ f` means `(w, 1) ⊨ f`.
pub fn mtl_holds(w: &TimedWord, i: usize, f: &Mtl) -> bool {
    debug_assert!(i >= 1 && i <= w.len());
    match f {
        Mtl::Atom(a) => w.steps[i - 1].1 == *a,
        Mtl::NegAtom(a) => w.steps[i - 1].1 != *a,
        Mtl::And(l, r) => mtl_holds(w, i, l) && mtl_holds(w, i, r),
        Mtl::Or(l, r) => mtl_holds(w, i, l) || mtl_holds(w, i, r),
        Mtl::Next(iv, sub) => {
            i + 1 <= w.len() && iv.contains(w.steps[i].0) && mtl_holds(w, i + 1, sub)
        }
        Mtl::Until(iv, l, r) => {
            let mut elapsed = Rat::zero();
            for k in i..=w.len() {
                if k > i {
                    elapsed += w.steps[k - 1].0;
                }
                if iv.contains(elapsed) && mtl_holds(w, k, r) {
                    if (i..k).all(|j| mtl_holds(w, j, l)) {
                        return true;
                    }
                }
            }
            false
        }
    }
}
