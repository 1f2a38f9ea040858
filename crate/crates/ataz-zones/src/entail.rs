//! The entailment check between zone-graph nodes.
//!
//! `(Z, IA)` is entailed by `(Z', IA')` when `IA ⊆ IA'` and every valuation
//! of `Z'` has, through some location-preserving injection from the variables
//! of `Z`, a restriction that is region-equivalent to a valuation of `Z`.
//! Non-entailment is characterized by the non-emptiness of an intersection,
//! over all injections `r`, of "no-witness" sets `N'_r`, each of which is a
//! finite union of zones obtained from two-variable checks against the
//! canonical source zone.
//!
//! [`brute_force_node_entails`] re-decides the same relation by enumerating
//! region classes outright; it is the oracle the zone algebra is tested
//! against.

use crate::bound::Bound;
use crate::dbm::Dbm;
use crate::node::Node;
use crate::region::{region_class_representatives, valuation_signature, ValKind};
use ataz_core::rat::Rat;
use std::collections::{BTreeMap, HashSet};
use std::fmt::Debug;

/// A finite union of canonical, non-empty zones over a common variable list.
/// The empty list denotes the empty set.
#[derive(Debug, Clone)]
pub struct ZoneUnion<V> {
    pub members: Vec<Dbm<V>>,
}

impl<V: Ord + Clone + Debug> ZoneUnion<V> {
    pub fn empty() -> Self {
        ZoneUnion { members: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn push(&mut self, z: Dbm<V>) {
        // subsumption both ways keeps the union small
        if self.members.iter().any(|w| z.subset_of(w)) {
            return;
        }
        self.members.retain(|w| !w.subset_of(&z));
        self.members.push(z);
    }

    /// Intersects the union with another union, pruning empty and subsumed
    /// members.
    pub fn intersect(&self, other: &ZoneUnion<V>) -> ZoneUnion<V> {
        let mut out = ZoneUnion::empty();
        for a in &self.members {
            for b in &other.members {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        out
    }
}

/// Emits the "no region-equivalent source valuation" zones for one mapping,
/// as constraint recipes applied to the target zone. Each surviving zone is
/// canonical, non-empty and intersected with the target.
///
/// For an ordered pair `(a, b)` with canonical source bound `c` on
/// `v(b) - v(a)`:
///  - both endpoints mapped low: region equivalence transports the
///    constraint-violation status verbatim, so the bad set is
///    `{v' : v'(to) - v'(from) violates c, both <= M}`;
///  - mapped `b` above the constant while the source forces `v(b)` within
///    `v(a) + c`: bad when `ceil(v'(a)) <= M - c`, i.e. `v'(a) <= M - c`.
fn bad_zones_for_mapping<V: Ord + Clone + Debug>(
    zs: &Dbm<V>,
    // matrix-index map: source index -> target index (0 -> 0)
    map: &[usize],
    zt: &Dbm<V>,
    m: u32,
) -> Vec<Dbm<V>> {
    let mi = m as i64;
    let mut out: Vec<Dbm<V>> = Vec::new();
    let mut push = |z: Dbm<V>| {
        if !out.iter().any(|w: &Dbm<V>| z.subset_of(w)) {
            out.retain(|w| !w.subset_of(&z));
            out.push(z);
        }
    };
    let n = zs.dim();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let c = zs.get(b, a);
            if c.is_inf() {
                continue;
            }
            let (tgt_from, tgt_to) = (map[a], map[b]);
            // low/low violation zone
            {
                let mut z = zt.clone();
                let mut ok = true;
                if tgt_from != 0 {
                    ok &= z.constrain(tgt_from, 0, Bound::weak(mi));
                }
                if ok && tgt_to != 0 {
                    ok &= z.constrain(tgt_to, 0, Bound::weak(mi));
                }
                // violate `v'(to) - v'(from) ⊴ c`
                if ok && z.constrain(tgt_from, tgt_to, c.negate()) {
                    push(z);
                }
            }
            // mapped-high case: target of the edge above the constant
            if tgt_to != 0 && c.value() <= mi {
                let mut z = zt.clone();
                let mut ok = z.constrain(0, tgt_to, Bound::strict(-mi));
                if ok && tgt_from != 0 {
                    ok &= z.constrain(tgt_from, 0, Bound::weak(mi.min(mi - c.value())));
                }
                if ok {
                    push(z);
                }
            }
        }
    }
    out
}

/// The set of target-zone valuations with no region-equivalent source
/// valuation under the variable correspondence given by position: both zones
/// must carry the same variable list (already renamed). Returned as a union
/// of canonical zones intersected with `zr_prime`.
pub fn compute_nr<V: Ord + Clone + Debug>(
    zr: &Dbm<V>,
    zr_prime: &Dbm<V>,
    m: u32,
) -> ZoneUnion<V> {
    assert_eq!(
        zr.vars(),
        zr_prime.vars(),
        "compute_nr expects identical variable lists"
    );
    let map: Vec<usize> = (0..zr.dim()).collect();
    ZoneUnion {
        members: bad_zones_for_mapping(zr, &map, zr_prime, m),
    }
}

/// Generic entailment core over zones whose variables carry equivalence
/// classes; `pinned` variables must be present on both sides and map to
/// themselves. Returns the final intersection: empty means entailed.
fn entail_intersection<V: Ord + Clone + Debug>(
    zs: &Dbm<V>,
    zt: &Dbm<V>,
    class: &dyn Fn(&V) -> u64,
    pinned: &dyn Fn(&V) -> bool,
    m: u32,
) -> ZoneUnion<V> {
    let svars = zs.vars();
    let tvars = zt.vars();
    // class multiset feasibility
    let mut scount: BTreeMap<u64, usize> = BTreeMap::new();
    let mut tcount: BTreeMap<u64, usize> = BTreeMap::new();
    for v in svars {
        *scount.entry(class(v)).or_default() += 1;
    }
    for v in tvars {
        *tcount.entry(class(v)).or_default() += 1;
    }
    for (cl, n) in &scount {
        if tcount.get(cl).copied().unwrap_or(0) < *n {
            // no injection at all: the whole target remains a witness set
            return ZoneUnion {
                members: vec![zt.clone()],
            };
        }
    }
    for v in svars {
        if pinned(v) {
            assert!(
                zt.idx(v).is_some(),
                "pinned variable missing from the target zone"
            );
        }
    }

    let mlim = m as i64;
    let forced_low: Vec<bool> = std::iter::once(true)
        .chain((1..zt.dim()).map(|i| zt.get(i, 0) <= Bound::weak(mlim)))
        .collect();

    struct Search<'a, V: Ord + Clone + Debug> {
        zs: &'a Dbm<V>,
        zt: &'a Dbm<V>,
        class: &'a dyn Fn(&V) -> u64,
        pinned: &'a dyn Fn(&V) -> bool,
        forced_low: &'a [bool],
        m: u32,
        acc: ZoneUnion<V>,
        done: bool,
    }

    impl<V: Ord + Clone + Debug> Search<'_, V> {
        /// `map[i]` = target matrix index of source matrix index `i`;
        /// `relaxed` over-approximates the target valuations that could
        /// still have a region-equivalent source valuation on the mapped
        /// prefix; when it dies the subtree contributes nothing.
        fn go(&mut self, i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, relaxed: &Dbm<V>) {
            if self.done {
                return;
            }
            let n = self.zs.dim();
            if i == n {
                let bads = bad_zones_for_mapping(self.zs, map, self.zt, self.m);
                let union = ZoneUnion { members: bads };
                self.acc = self.acc.intersect(&union);
                if self.acc.is_empty() {
                    self.done = true;
                }
                return;
            }
            let sv = &self.zs.vars()[i - 1];
            let want_pin = (self.pinned)(sv);
            for t in 1..self.zt.dim() {
                if used[t] {
                    continue;
                }
                let tv = &self.zt.vars()[t - 1];
                if want_pin {
                    if tv != sv {
                        continue;
                    }
                } else if (self.pinned)(tv) || (self.class)(tv) != (self.class)(sv) {
                    continue;
                }
                // relaxed compatibility against already-mapped variables
                let mut rz = relaxed.clone();
                let mut alive = true;
                if self.forced_low[t] {
                    for j in 0..i {
                        let tj = map[j];
                        if tj != 0 && !self.forced_low[tj] {
                            continue;
                        }
                        let c = self.zs.get(i, j);
                        if !c.is_inf() && alive {
                            alive &= rz.constrain(t, tj, Bound::strict(c.value() + 1));
                        }
                        let c = self.zs.get(j, i);
                        if !c.is_inf() && alive {
                            alive &= rz.constrain(tj, t, Bound::strict(c.value() + 1));
                        }
                    }
                }
                if !alive {
                    continue;
                }
                map.push(t);
                used[t] = true;
                self.go(i + 1, map, used, &rz);
                used[t] = false;
                map.pop();
                if self.done {
                    return;
                }
            }
        }
    }

    let mut search = Search {
        zs,
        zt,
        class,
        pinned,
        forced_low: &forced_low,
        m,
        acc: ZoneUnion {
            members: vec![zt.clone()],
        },
        done: false,
    };
    let mut map = vec![0usize];
    let mut used = vec![false; zt.dim()];
    used[0] = true;
    let relaxed = zt.clone();
    search.go(1, &mut map, &mut used, &relaxed);
    search.acc
}

/// Entailment between nodes: `IA ⊆ IA'` and the intersection of the
/// no-witness sets over every location-preserving injection is empty.
/// The node without active variables is entailed by everything (its only
/// configuration is made of inactive states, and the empty subset matches);
/// nothing with active variables is entailed by a variable-free node.
pub fn node_entails(n1: &Node, n2: &Node, m: u32) -> bool {
    node_entails_witness(n1, n2, m).is_none()
}

/// Like [`node_entails`] but returns a witness valuation of the target zone
/// (in target variable order) when the entailment fails. A `Some(vec![])`
/// witness marks failures without any target valuation to show (inactive
/// mismatch or a variable-free target).
pub fn node_entails_witness(n1: &Node, n2: &Node, m: u32) -> Option<Vec<Rat>> {
    if !n1.inactive.is_subset(&n2.inactive) {
        return Some(Vec::new());
    }
    let Some(z1) = &n1.zone else {
        return None;
    };
    let Some(z2) = &n2.zone else {
        return Some(Vec::new());
    };
    let inter = entail_intersection(z1, z2, &|v| v.loc.index() as u64, &|_| false, m);
    inter.members.first().map(|z| z.sample())
}

/// Bounded-width entailment: identical variable sets, identity mapping.
/// Quadratically many pair checks; sound but incomplete for the general
/// relation.
pub fn node_entails_bounded(n1: &Node, n2: &Node, m: u32) -> bool {
    if !n1.inactive.is_subset(&n2.inactive) {
        return false;
    }
    match (&n1.zone, &n2.zone) {
        (None, None) => true,
        (None, Some(_)) | (Some(_), None) => false,
        (Some(z1), Some(z2)) => {
            if z1.vars() != z2.vars() {
                return false;
            }
            compute_nr(z1, z2, m).is_empty()
        }
    }
}

/// Region-class enumeration oracle for the same relation: every class of the
/// target zone must have, under some injection, a restriction signature
/// realized inside the source zone.
pub fn brute_force_node_entails(n1: &Node, n2: &Node, m: u32) -> bool {
    if !n1.inactive.is_subset(&n2.inactive) {
        return false;
    }
    let Some(z1) = &n1.zone else {
        return true;
    };
    let Some(z2) = &n2.zone else {
        return false;
    };
    // realized signatures of the source zone
    let source_sigs: HashSet<Vec<ValKind>> = region_class_representatives(z1, m)
        .into_iter()
        .map(|vals| valuation_signature(&vals.into_iter().map(Some).collect::<Vec<_>>(), m))
        .collect();
    // all location-preserving injections, as target index choices per source var
    let svars = z1.vars();
    let tvars = z2.vars();
    let mut injections: Vec<Vec<usize>> = Vec::new();
    fn build(
        i: usize,
        svars: &[crate::node::AtaVar],
        tvars: &[crate::node::AtaVar],
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == svars.len() {
            out.push(cur.clone());
            return;
        }
        for (k, tv) in tvars.iter().enumerate() {
            if used[k] || tv.loc != svars[i].loc {
                continue;
            }
            used[k] = true;
            cur.push(k);
            build(i + 1, svars, tvars, cur, used, out);
            cur.pop();
            used[k] = false;
        }
    }
    build(
        0,
        svars,
        tvars,
        &mut Vec::new(),
        &mut vec![false; tvars.len()],
        &mut injections,
    );
    if injections.is_empty() {
        return false;
    }
    for rep in region_class_representatives(z2, m) {
        let covered = injections.iter().any(|inj| {
            let restricted: Vec<Option<Rat>> = inj.iter().map(|&k| Some(rep[k])).collect();
            source_sigs.contains(&valuation_signature(&restricted, m))
        });
        if !covered {
            return false;
        }
    }
    true
}

/// Entailment on zones with some variables pinned to themselves (used by the
/// product construction, where automaton clocks are never renamed).
pub fn zone_entails_with_pins<V: Ord + Clone + Debug>(
    zs: &Dbm<V>,
    zt: &Dbm<V>,
    class: &dyn Fn(&V) -> u64,
    pinned: &dyn Fn(&V) -> bool,
    m: u32,
) -> bool {
    entail_intersection(zs, zt, class, pinned, m).is_empty()
}
