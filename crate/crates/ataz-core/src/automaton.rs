//! The 1-ATA structure: locations, alphabet, accepting set and the DNF
//! transition table.

use crate::formula::{dnf_normalize, Clause, TransitionFormula};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Index of a control location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocId(u32);

impl LocId {
    pub fn new(i: u32) -> Self {
        LocId(i)
    }

    pub fn index(&self) -> usize {
        self.0 as usize
    }
}

/// Index of an alphabet letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterId(u32);

impl LetterId {
    pub fn new(i: u32) -> Self {
        LetterId(i)
    }

    pub fn index(&self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtaError {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate location name `{0}`")]
    DuplicateLocation(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("unknown location `{0}`")]
    UnknownLocation(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("transition for `{0}` references an undeclared location")]
    BadTransitionTarget(String),
}

/// A one-clock alternating timed automaton with a deactivation operator.
///
/// `delta` is a partial map: a missing `(location, letter)` entry means no
/// transition exists, so a state at that location blocks on that letter. Each
/// entry is kept in disjunctive normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneAta {
    pub name: String,
    locations: Vec<String>,
    alphabet: Vec<String>,
    initial: LocId,
    accepting: BTreeSet<LocId>,
    delta: BTreeMap<(LocId, LetterId), Vec<Clause>>,
}

impl OneAta {
    /// Builds and validates an automaton, normalizing every transition
    /// formula into DNF.
    pub fn new(
        name: impl Into<String>,
        locations: Vec<String>,
        alphabet: Vec<String>,
        initial: &str,
        accepting: &[String],
        transitions: Vec<(String, String, TransitionFormula)>,
    ) -> Result<Self, AtaError> {
        if alphabet.is_empty() {
            return Err(AtaError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for l in &locations {
            if !seen.insert(l.clone()) {
                return Err(AtaError::DuplicateLocation(l.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &alphabet {
            if !seen.insert(a.clone()) {
                return Err(AtaError::DuplicateLetter(a.clone()));
            }
        }
        let find_loc = |n: &str| -> Result<LocId, AtaError> {
            locations
                .iter()
                .position(|l| l == n)
                .map(|i| LocId(i as u32))
                .ok_or_else(|| AtaError::UnknownLocation(n.to_string()))
        };
        let find_letter = |n: &str| -> Result<LetterId, AtaError> {
            alphabet
                .iter()
                .position(|l| l == n)
                .map(|i| LetterId(i as u32))
                .ok_or_else(|| AtaError::UnknownLetter(n.to_string()))
        };
        let initial = find_loc(initial)?;
        let accepting = accepting
            .iter()
            .map(|a| find_loc(a))
            .collect::<Result<BTreeSet<_>, _>>()?;
        let mut delta = BTreeMap::new();
        for (src, letter, f) in transitions {
            let src_id = find_loc(&src)?;
            let letter_id = find_letter(&letter)?;
            let mut used = BTreeSet::new();
            f.locations(&mut used);
            if used.iter().any(|q| q.index() >= locations.len()) {
                return Err(AtaError::BadTransitionTarget(src));
            }
            delta.insert((src_id, letter_id), dnf_normalize(&f));
        }
        Ok(OneAta {
            name: name.into(),
            locations,
            alphabet,
            initial,
            accepting,
            delta,
        })
    }

    /// Builds an automaton whose transitions are already in DNF; used by the
    /// MTL translation which produces clauses directly.
    pub fn from_clauses(
        name: impl Into<String>,
        locations: Vec<String>,
        alphabet: Vec<String>,
        initial: LocId,
        accepting: BTreeSet<LocId>,
        delta: BTreeMap<(LocId, LetterId), Vec<Clause>>,
    ) -> Self {
        OneAta {
            name: name.into(),
            locations,
            alphabet,
            initial,
            accepting,
            delta,
        }
    }

    pub fn locations(&self) -> impl Iterator<Item = LocId> + '_ {
        (0..self.locations.len()).map(|i| LocId(i as u32))
    }

    pub fn num_locations(&self) -> usize {
        self.locations.len()
    }

    pub fn loc_name(&self, q: LocId) -> &str {
        &self.locations[q.index()]
    }

    pub fn loc_by_name(&self, name: &str) -> Option<LocId> {
        self.locations
            .iter()
            .position(|l| l == name)
            .map(|i| LocId(i as u32))
    }

    pub fn letters(&self) -> impl Iterator<Item = LetterId> + '_ {
        (0..self.alphabet.len()).map(|i| LetterId(i as u32))
    }

    pub fn letter_name(&self, a: LetterId) -> &str {
        &self.alphabet[a.index()]
    }

    pub fn letter_by_name(&self, name: &str) -> Option<LetterId> {
        self.alphabet
            .iter()
            .position(|l| l == name)
            .map(|i| LetterId(i as u32))
    }

    pub fn initial(&self) -> LocId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<LocId> {
        &self.accepting
    }

    pub fn is_accepting_loc(&self, q: LocId) -> bool {
        self.accepting.contains(&q)
    }

    /// DNF clauses of `delta(q, a)`, or `None` when the transition is
    /// undefined.
    pub fn clauses(&self, q: LocId, a: LetterId) -> Option<&[Clause]> {
        self.delta.get(&(q, a)).map(|v| v.as_slice())
    }

    pub fn transitions(&self) -> impl Iterator<Item = (LocId, LetterId, &[Clause])> {
        self.delta.iter().map(|((q, a), cs)| (*q, *a, cs.as_slice()))
    }

    /// Largest constant appearing in any guard; 0 when there are no guards.
    pub fn max_constant(&self) -> u32 {
        self.delta
            .values()
            .flatten()
            .filter_map(|c| c.guard.as_ref())
            .map(|g| g.max_finite_constant())
            .max()
            .unwrap_or(0)
    }
}
