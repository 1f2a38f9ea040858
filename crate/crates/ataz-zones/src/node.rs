//! Zone-graph nodes for 1-ATA: a zone over dynamically allocated variables
//! `loc.index` plus a set of inactive locations, and the four-step successor
//! computation (time elapse, guard intersection, reset/move, projection).

use crate::bound::Bound;
use crate::dbm::Dbm;
use ataz_core::config::{AtaState, Configuration};
use ataz_core::formula::Clause;
use ataz_core::{LetterId, LocId, OneAta, Rat};
use std::collections::BTreeSet;
use std::fmt::Debug;

/// A zone variable `x_{q,i}`. Index 0 is reserved for the inactive marker
/// and never appears inside a zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtaVar {
    pub loc: LocId,
    pub index: u32,
}

impl AtaVar {
    pub fn new(loc: LocId, index: u32) -> Self {
        AtaVar { loc, index }
    }
}

/// A node `(Z, IA)`. `zone: None` is the distinguished variable-free zone:
/// the node then denotes exactly the configurations made of the inactive
/// states of `IA` (the empty configuration when `IA` is empty too).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub zone: Option<Dbm<AtaVar>>,
    pub inactive: BTreeSet<LocId>,
}

impl Node {
    /// `(x_{q0,1} = 0, {})`.
    pub fn initial(ata: &OneAta) -> Node {
        let v = AtaVar::new(ata.initial(), 1);
        let mut z = Dbm::universe(vec![v]);
        assert!(z.constrain_upper(&v, Bound::weak(0)));
        Node {
            zone: Some(z),
            inactive: BTreeSet::new(),
        }
    }

    /// The node denoting only the empty configuration.
    pub fn empty_configuration() -> Node {
        Node {
            zone: None,
            inactive: BTreeSet::new(),
        }
    }

    pub fn active_vars(&self) -> &[AtaVar] {
        self.zone.as_ref().map(|z| z.vars()).unwrap_or(&[])
    }

    /// Accepting iff every location mentioned by the node is accepting.
    pub fn is_accepting(&self, ata: &OneAta) -> bool {
        self.active_vars()
            .iter()
            .map(|v| v.loc)
            .chain(self.inactive.iter().copied())
            .all(|q| ata.is_accepting_loc(q))
    }

    /// Multiset of locations over active variables and the inactive set.
    pub fn loc_signature(&self) -> Vec<LocId> {
        let mut sig: Vec<LocId> = self.active_vars().iter().map(|v| v.loc).collect();
        sig.extend(self.inactive.iter().copied());
        sig.sort();
        sig
    }

    /// Time elapse: relaxes every upper bound while keeping differences; the
    /// inactive set is untouched.
    pub fn elapse(&self) -> Node {
        let zone = self.zone.as_ref().map(|z| {
            let mut z = z.clone();
            z.up();
            z
        });
        Node {
            zone,
            inactive: self.inactive.clone(),
        }
    }

    /// One configuration satisfying this node: a valuation of the zone (two
    /// variables may share a state when the zone allows equal values) plus
    /// one inactive state per inactive location.
    pub fn sample_configuration(&self) -> Configuration {
        let mut cfg = Configuration::empty();
        if let Some(z) = &self.zone {
            let vals = z.sample();
            for (v, r) in z.vars().iter().zip(vals) {
                cfg.insert(AtaState::active(v.loc, r));
            }
        }
        for q in &self.inactive {
            cfg.insert(AtaState::inactive(*q));
        }
        cfg
    }
}

/// Does `cfg` satisfy the node? Decided by searching for a location
/// preserving surjection from the node's variables onto the configuration
/// that maps inactive markers to inactive states and realizes the zone.
/// Oracle-scale only.
pub fn node_satisfies(cfg: &Configuration, node: &Node, _ata: &OneAta) -> bool {
    let states: Vec<AtaState> = cfg.states().copied().collect();
    // Inactive markers must map onto exactly the inactive states.
    let bot_locs: BTreeSet<LocId> = states
        .iter()
        .filter(|s| !s.val.is_active())
        .map(|s| s.loc)
        .collect();
    if bot_locs != node.inactive {
        return false;
    }
    let active: Vec<(LocId, Rat)> = states
        .iter()
        .filter_map(|s| s.val.as_active().map(|r| (s.loc, r)))
        .collect();
    let Some(zone) = &node.zone else {
        return active.is_empty();
    };
    let vars = zone.vars();
    // assignment[i] = index into `active` for vars[i]
    fn search(
        zone: &Dbm<AtaVar>,
        vars: &[AtaVar],
        active: &[(LocId, Rat)],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = assignment.len();
        if i == vars.len() {
            if !used.iter().all(|u| *u) {
                return false; // not surjective
            }
            let vals: Vec<Rat> = assignment.iter().map(|&k| active[k].1).collect();
            return zone.admits_valuation(&vals);
        }
        for (k, (loc, _)) in active.iter().enumerate() {
            if *loc != vars[i].loc {
                continue;
            }
            assignment.push(k);
            let was_used = used[k];
            used[k] = true;
            if search(zone, vars, active, assignment, used) {
                return true;
            }
            used[k] = was_used;
            assignment.pop();
        }
        false
    }
    let mut assignment = Vec::new();
    let mut used = vec![false; active.len()];
    search(zone, vars, &active, &mut assignment, &mut used)
}

/// One clause choice per variable of the source node, actives first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Target {
    /// `(variable, clause index into delta(loc(variable), letter))`; inactive
    /// markers appear with index 0.
    pub choices: Vec<(AtaVar, usize)>,
}

/// Every clause-per-variable combination for `node` on `a`. Combinations
/// through false clauses are dropped; a variable whose location has no
/// transition on `a` kills all of them.
pub fn enumerate_targets(node: &Node, a: LetterId, ata: &OneAta) -> Vec<Target> {
    let mut vars: Vec<AtaVar> = node.active_vars().to_vec();
    vars.extend(node.inactive.iter().map(|q| AtaVar::new(*q, 0)));
    let mut per_var: Vec<Vec<usize>> = Vec::with_capacity(vars.len());
    for v in &vars {
        let Some(clauses) = ata.clauses(v.loc, a) else {
            return Vec::new();
        };
        let choices: Vec<usize> = clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_false)
            .map(|(i, _)| i)
            .collect();
        if choices.is_empty() {
            return Vec::new();
        }
        per_var.push(choices);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; vars.len()];
    loop {
        out.push(Target {
            choices: vars
                .iter()
                .enumerate()
                .map(|(i, v)| (*v, per_var[i][pick[i]]))
                .collect(),
        });
        let mut i = 0;
        loop {
            if i == vars.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < per_var[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Internals of one successor computation, kept for witness extraction: the
/// canonical zone after elapse and guard intersection, and how each new
/// variable was produced.
#[derive(Debug, Clone)]
pub struct SuccTrace {
    /// Zone over the old variables after time elapse and guard intersection.
    pub guarded: Option<Dbm<AtaVar>>,
    /// New variables copied from old ones (kept states).
    pub copies: Vec<(AtaVar, AtaVar)>,
    /// New variables pinned to 0 (resets).
    pub resets: Vec<AtaVar>,
}

pub fn successor(node: &Node, a: LetterId, t: &Target, ata: &OneAta) -> Option<Node> {
    successor_traced(node, a, t, ata).map(|(n, _)| n)
}

/// The four-step successor: elapse, guard intersection (`None` when the
/// guards empty the zone), reset/move to new variables, projection.
pub fn successor_traced(
    node: &Node,
    a: LetterId,
    t: &Target,
    ata: &OneAta,
) -> Option<(Node, SuccTrace)> {
    let resolved: Vec<(AtaVar, &Clause)> = t
        .choices
        .iter()
        .map(|(v, k)| (*v, &ata.clauses(v.loc, a).expect("target over defined delta")[*k]))
        .collect();
    debug_assert!(resolved.iter().all(|(_, c)| !c.is_false));

    // Step 1: time elapse.
    let elapsed = node.elapse();

    // Step 2: guard intersection on active variables (vacuous on inactive).
    let guarded: Option<Dbm<AtaVar>> = match elapsed.zone {
        None => None,
        Some(mut z) => {
            for (v, clause) in &resolved {
                if v.index == 0 {
                    continue;
                }
                if clause.guard_unsat {
                    return None;
                }
                if let Some(g) = &clause.guard {
                    if !z.constrain_lower(v, g.lo() as i64, !g.lo_closed()) {
                        return None;
                    }
                    if let Some(hi) = g.hi() {
                        if !z.constrain_upper(v, Bound::new(hi as i64, !g.hi_closed())) {
                            return None;
                        }
                    }
                }
            }
            Some(z)
        }
    };

    // Step 3: reset and move to new variables.
    // Index 1 of a location is reserved for resets whenever the target
    // resets that location; kept states take the smallest free index.
    let reset_locs: BTreeSet<LocId> = resolved
        .iter()
        .flat_map(|(_, c)| c.reset.iter().copied())
        .collect();
    let mut used_indices: std::collections::BTreeMap<LocId, BTreeSet<u32>> = Default::default();
    for q in &reset_locs {
        used_indices.entry(*q).or_default().insert(1);
    }
    let mut copies: Vec<(AtaVar, AtaVar)> = Vec::new();
    let mut new_inactive: BTreeSet<LocId> = BTreeSet::new();
    for (v, clause) in &resolved {
        for q in &clause.now {
            if v.index == 0 {
                // a kept state of an inactive source stays inactive
                new_inactive.insert(*q);
            } else {
                let used = used_indices.entry(*q).or_default();
                let mut idx = 1;
                while used.contains(&idx) {
                    idx += 1;
                }
                used.insert(idx);
                copies.push((AtaVar::new(*q, idx), *v));
            }
        }
        for q in &clause.deactivate {
            new_inactive.insert(*q);
        }
    }
    let resets: Vec<AtaVar> = reset_locs.iter().map(|q| AtaVar::new(*q, 1)).collect();

    // Step 4: build the new zone from the guarded one and drop old variables.
    let trace = SuccTrace {
        guarded: guarded.clone(),
        copies: copies.clone(),
        resets: resets.clone(),
    };
    if copies.is_empty() && resets.is_empty() {
        return Some((
            Node {
                zone: None,
                inactive: new_inactive,
            },
            trace,
        ));
    }
    let mut new_vars: Vec<(AtaVar, Option<AtaVar>)> =
        copies.iter().map(|(nv, old)| (*nv, Some(*old))).collect();
    new_vars.extend(resets.iter().map(|r| (*r, None)));
    let base;
    let guarded_ref = match &guarded {
        Some(z) => z,
        None => {
            // sources were all inactive; resets build on a fresh zero zone
            base = Dbm::universe(Vec::new());
            &base
        }
    };
    let zone = guarded_ref.rebuild(&new_vars);
    Some((
        Node {
            zone: Some(zone),
            inactive: new_inactive,
        },
        trace,
    ))
}
