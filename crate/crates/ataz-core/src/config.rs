//! Explicit configurations and the ground-truth executor.
//!
//! A configuration is a finite *set* of `(location, clock value)` states;
//! duplicates collapse. The executor enumerates minimal models and clause
//! combinations straight from the definitions, which keeps it slow but
//! obviously right. The zone engine is validated against it.

use crate::automaton::{AtaError, LetterId, LocId, OneAta};
use crate::formula::Clause;
use crate::rat::{fmt_rat, Rat};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A clock value: a non-negative rational, or inactive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClockVal {
    Active(Rat),
    Inactive,
}

impl ClockVal {
    pub fn zero() -> Self {
        ClockVal::Active(Rat::zero())
    }

    pub fn as_active(&self) -> Option<Rat> {
        match self {
            ClockVal::Active(r) => Some(*r),
            ClockVal::Inactive => None,
        }
    }

    pub fn is_active(&self) -> bool {
        matches!(self, ClockVal::Active(_))
    }
}

impl fmt::Display for ClockVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClockVal::Active(r) => write!(f, "{}", fmt_rat(*r)),
            ClockVal::Inactive => write!(f, "\u{22a5}"),
        }
    }
}

/// A state of the automaton: a location plus a clock value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtaState {
    pub loc: LocId,
    pub val: ClockVal,
}

impl AtaState {
    pub fn new(loc: LocId, val: ClockVal) -> Self {
        AtaState { loc, val }
    }

    pub fn active(loc: LocId, v: Rat) -> Self {
        AtaState {
            loc,
            val: ClockVal::Active(v),
        }
    }

    pub fn inactive(loc: LocId) -> Self {
        AtaState {
            loc,
            val: ClockVal::Inactive,
        }
    }
}

/// A finite set of states. Set semantics: membership is exact equality on
/// `(location, value)` with exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Configuration {
    states: BTreeSet<AtaState>,
}

impl Configuration {
    pub fn empty() -> Self {
        Configuration::default()
    }

    pub fn from_states(states: impl IntoIterator<Item = AtaState>) -> Self {
        Configuration {
            states: states.into_iter().collect(),
        }
    }

    /// `{(q0, 0)}`.
    pub fn initial(ata: &OneAta) -> Self {
        Configuration::from_states([AtaState::active(ata.initial(), Rat::zero())])
    }

    pub fn states(&self) -> impl Iterator<Item = &AtaState> {
        self.states.iter()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn insert(&mut self, s: AtaState) {
        self.states.insert(s);
    }

    pub fn contains(&self, s: &AtaState) -> bool {
        self.states.contains(s)
    }

    pub fn union(&self, other: &Configuration) -> Configuration {
        let mut out = self.clone();
        out.states.extend(other.states.iter().copied());
        out
    }

    pub fn is_subset(&self, other: &Configuration) -> bool {
        self.states.is_subset(&other.states)
    }

    /// Number of active states.
    pub fn width(&self) -> usize {
        self.states.iter().filter(|s| s.val.is_active()).count()
    }

    /// Accepting iff every state sits on an accepting location; the empty
    /// configuration is accepting.
    pub fn is_accepting(&self, ata: &OneAta) -> bool {
        self.states.iter().all(|s| ata.is_accepting_loc(s.loc))
    }

    /// Timed transition: shifts active values by `d`, inactive states are
    /// frozen.
    pub fn elapse(&self, d: Rat) -> Configuration {
        Configuration {
            states: self
                .states
                .iter()
                .map(|s| match s.val {
                    ClockVal::Active(v) => AtaState::active(s.loc, v + d),
                    ClockVal::Inactive => *s,
                })
                .collect(),
        }
    }

    pub fn display(&self, ata: &OneAta) -> String {
        let parts: Vec<String> = self
            .states
            .iter()
            .map(|s| format!("({},{})", ata.loc_name(s.loc), s.val))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Minimal model of a clause on clock value `v`: `None` when an active value
/// falls outside the clause guard. Guards are vacuous on inactive values.
pub fn minimal_model(clause: &Clause, v: ClockVal) -> Option<Configuration> {
    if clause.is_false {
        return None;
    }
    if let ClockVal::Active(r) = v {
        if !clause.guard_admits(r) {
            return None;
        }
    }
    let mut cfg = Configuration::empty();
    for q in &clause.now {
        cfg.insert(AtaState::new(*q, v));
    }
    for q in &clause.reset {
        cfg.insert(AtaState::active(*q, Rat::zero()));
    }
    for q in &clause.deactivate {
        cfg.insert(AtaState::inactive(*q));
    }
    Some(cfg)
}

/// A clause choice per state of the source configuration.
pub type ClauseChoice = Vec<(AtaState, usize)>;

/// All discrete successors of `cfg` on `a`: one clause per state, keep the
/// combinations where every minimal model exists. A state whose location has
/// no transition on `a` kills every combination through it.
pub fn discrete_successors(
    cfg: &Configuration,
    a: LetterId,
    ata: &OneAta,
) -> Vec<(ClauseChoice, Configuration)> {
    let states: Vec<AtaState> = cfg.states().copied().collect();
    let mut per_state: Vec<Vec<(usize, Configuration)>> = Vec::with_capacity(states.len());
    for s in &states {
        let Some(clauses) = ata.clauses(s.loc, a) else {
            return Vec::new();
        };
        let opts: Vec<(usize, Configuration)> = clauses
            .iter()
            .enumerate()
            .filter_map(|(i, c)| minimal_model(c, s.val).map(|m| (i, m)))
            .collect();
        if opts.is_empty() {
            return Vec::new();
        }
        per_state.push(opts);
    }
    let mut out: BTreeSet<(ClauseChoice, Configuration)> = BTreeSet::new();
    let mut choice: Vec<usize> = vec![0; states.len()];
    loop {
        let mut target = ClauseChoice::new();
        let mut next = Configuration::empty();
        for (k, s) in states.iter().enumerate() {
            let (clause_idx, model) = &per_state[k][choice[k]];
            target.push((*s, *clause_idx));
            next = next.union(model);
        }
        out.insert((target, next));
        // advance the odometer
        let mut k = 0;
        loop {
            if k == states.len() {
                return out.into_iter().collect();
            }
            choice[k] += 1;
            if choice[k] < per_state[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// A finite timed word: delays are exact non-negative rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TimedWord {
    pub steps: Vec<(Rat, String)>,
}

impl TimedWord {
    pub fn new(steps: Vec<(Rat, String)>) -> Self {
        TimedWord { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, a) in &self.steps {
            write!(f, "({},{})", fmt_rat(*d), a)?;
        }
        Ok(())
    }
}

/// Per-state acceptance with memoization. Acceptance of a configuration
/// decomposes into acceptance of each of its states because minimal models
/// are computed per state and branches are joined by union.
struct Acceptor<'a> {
    ata: &'a OneAta,
    letters: Vec<LetterId>,
    delays: Vec<Rat>,
    memo: BTreeMap<(AtaState, usize), bool>,
}

impl<'a> Acceptor<'a> {
    fn state_accepts(&mut self, s: AtaState, i: usize) -> bool {
        if i == self.letters.len() {
            return self.ata.is_accepting_loc(s.loc);
        }
        if let Some(&r) = self.memo.get(&(s, i)) {
            return r;
        }
        let elapsed = match s.val {
            ClockVal::Active(v) => ClockVal::Active(v + self.delays[i]),
            ClockVal::Inactive => ClockVal::Inactive,
        };
        let mut result = false;
        if let Some(clauses) = self.ata.clauses(s.loc, self.letters[i]) {
            'clauses: for c in clauses {
                if let Some(model) = minimal_model(c, elapsed) {
                    for t in model.states() {
                        if !self.state_accepts(*t, i + 1) {
                            continue 'clauses;
                        }
                    }
                    result = true;
                    break;
                }
            }
        }
        self.memo.insert((s, i), result);
        result
    }

    /// Picks, for an accepting state, the first clause whose minimal model is
    /// all-accepting; used to reconstruct one accepting run.
    fn pick_clause(&mut self, s: AtaState, i: usize) -> Option<(usize, Configuration)> {
        let elapsed = match s.val {
            ClockVal::Active(v) => ClockVal::Active(v + self.delays[i]),
            ClockVal::Inactive => ClockVal::Inactive,
        };
        let clauses = self.ata.clauses(s.loc, self.letters[i])?;
        'clauses: for (k, c) in clauses.iter().enumerate() {
            if let Some(model) = minimal_model(c, elapsed) {
                for t in model.states() {
                    if !self.state_accepts(*t, i + 1) {
                        continue 'clauses;
                    }
                }
                return Some((k, model));
            }
        }
        None
    }
}

fn acceptor<'a>(ata: &'a OneAta, w: &TimedWord) -> Result<Acceptor<'a>, AtaError> {
    let letters = w
        .steps
        .iter()
        .map(|(_, a)| {
            ata.letter_by_name(a)
                .ok_or_else(|| AtaError::UnknownLetter(a.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Acceptor {
        ata,
        letters,
        delays: w.steps.iter().map(|(d, _)| *d).collect(),
        memo: BTreeMap::new(),
    })
}

/// Language membership: is there an accepting run of `ata` on `w`?
/// The empty word is accepted iff the initial configuration is accepting.
pub fn accepts(ata: &OneAta, w: &TimedWord) -> Result<bool, AtaError> {
    let mut acc = acceptor(ata, w)?;
    Ok(acc.state_accepts(AtaState::active(ata.initial(), Rat::zero()), 0))
}

/// One accepting run as the configuration sequence
/// `γ0, γ0+d1, γ1, γ1+d2, γ2, …`, or `None` when the word is rejected.
/// Clause choices are deterministic: the first accepting clause wins.
pub fn accepting_run(ata: &OneAta, w: &TimedWord) -> Result<Option<Vec<Configuration>>, AtaError> {
    let mut acc = acceptor(ata, w)?;
    let init = Configuration::initial(ata);
    if !acc.state_accepts(AtaState::active(ata.initial(), Rat::zero()), 0) {
        return Ok(None);
    }
    let mut trace = vec![init.clone()];
    let mut current = init;
    for (i, (d, _)) in w.steps.iter().enumerate() {
        let elapsed = current.elapse(*d);
        trace.push(elapsed.clone());
        let mut next = Configuration::empty();
        for s in current.states() {
            let (_, model) = acc
                .pick_clause(*s, i)
                .expect("accepting run must extend every state");
            next = next.union(&model);
        }
        trace.push(next.clone());
        current = next;
    }
    Ok(Some(trace))
}

/// Maximum width over all configurations reachable within `max_depth`
/// discrete steps, trying every supplied delay before each step.
pub fn observed_width(ata: &OneAta, max_depth: usize, delays: &[Rat]) -> usize {
    let mut frontier: BTreeSet<Configuration> = BTreeSet::new();
    frontier.insert(Configuration::initial(ata));
    let mut max_width = 1;
    for _ in 0..max_depth {
        let mut next: BTreeSet<Configuration> = BTreeSet::new();
        for cfg in &frontier {
            for d in delays {
                let elapsed = cfg.elapse(*d);
                for a in ata.letters() {
                    for (_, succ) in discrete_successors(&elapsed, a, ata) {
                        max_width = max_width.max(succ.width());
                        next.insert(succ);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    max_width
}
