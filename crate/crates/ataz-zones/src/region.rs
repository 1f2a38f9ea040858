//! Region equivalence on configurations and valuations, and region-class
//! enumeration over zones. This module is deliberately brute-force: it is the
//! oracle side of every entailment check.

use crate::bound::Bound;
use crate::dbm::Dbm;
use ataz_core::config::Configuration;
use ataz_core::rat::{fract, rat_int, Rat};
use ataz_core::LocId;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt::Debug;

/// The region class of one value relative to the maximum constant:
/// inactive, above the constant, or an integer part with a fractional rank.
/// Rank 0 is a zero fraction; ranks `1..` order the distinct non-zero
/// fractions within the owning tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValKind {
    Inactive,
    High,
    Low { int: u64, frac_rank: u32 },
}

/// Joint signature of a tuple of values: equal signatures mean the identity
/// correspondence is a region equivalence.
pub fn valuation_signature(vals: &[Option<Rat>], max_const: u32) -> Vec<ValKind> {
    let m = rat_int(max_const as i64);
    let mut fracs: Vec<Rat> = vals
        .iter()
        .filter_map(|v| *v)
        .filter(|v| *v <= m)
        .map(fract)
        .filter(|f| !f.is_zero())
        .collect();
    fracs.sort();
    fracs.dedup();
    vals.iter()
        .map(|v| match v {
            None => ValKind::Inactive,
            Some(v) if *v > m => ValKind::High,
            Some(v) => {
                let f = fract(*v);
                let rank = if f.is_zero() {
                    0
                } else {
                    fracs.iter().position(|x| *x == f).unwrap() as u32 + 1
                };
                ValKind::Low {
                    int: ataz_core::rat::floor_u64(*v),
                    frac_rank: rank,
                }
            }
        })
        .collect()
}

/// Multiset signature of a configuration under the same equivalence.
pub fn config_signature(cfg: &Configuration, max_const: u32) -> Vec<(LocId, ValKind)> {
    let vals: Vec<Option<Rat>> = cfg.states().map(|s| s.val.as_active()).collect();
    let kinds = valuation_signature(&vals, max_const);
    let mut sig: Vec<(LocId, ValKind)> = cfg
        .states()
        .zip(kinds)
        .map(|(s, k)| (s.loc, k))
        .collect();
    sig.sort();
    sig
}

/// Region equivalence decided by exhaustive bijection search: locations are
/// preserved, inactivity and the above-constant class are preserved, integer
/// parts and zero fractions agree below the constant, and the order of
/// fractions below the constant is preserved.
pub fn region_equivalent(g1: &Configuration, g2: &Configuration, max_const: u32) -> bool {
    if g1.len() != g2.len() {
        return false;
    }
    let s1: Vec<_> = g1.states().copied().collect();
    let s2: Vec<_> = g2.states().copied().collect();
    let m = rat_int(max_const as i64);
    let compatible = |a: &ataz_core::AtaState, b: &ataz_core::AtaState| -> bool {
        if a.loc != b.loc {
            return false;
        }
        match (a.val.as_active(), b.val.as_active()) {
            (None, None) => true,
            (Some(x), Some(y)) => {
                let (lx, ly) = (x <= m, y <= m);
                if lx != ly {
                    return false;
                }
                if !lx {
                    return true;
                }
                x.floor() == y.floor() && (fract(x).is_zero() == fract(y).is_zero())
            }
            _ => false,
        }
    };
    fn search(
        s1: &[ataz_core::AtaState],
        s2: &[ataz_core::AtaState],
        m: Rat,
        compatible: &dyn Fn(&ataz_core::AtaState, &ataz_core::AtaState) -> bool,
        pick: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = pick.len();
        if i == s1.len() {
            // fraction order must agree across all low active pairs
            for a in 0..s1.len() {
                for b in 0..s1.len() {
                    let (Some(x1), Some(x2)) = (s1[a].val.as_active(), s1[b].val.as_active())
                    else {
                        continue;
                    };
                    if x1 > m || x2 > m {
                        continue;
                    }
                    let (Some(y1), Some(y2)) = (
                        s2[pick[a]].val.as_active(),
                        s2[pick[b]].val.as_active(),
                    ) else {
                        continue;
                    };
                    if (fract(x1) <= fract(x2)) != (fract(y1) <= fract(y2)) {
                        return false;
                    }
                }
            }
            return true;
        }
        for j in 0..s2.len() {
            if used[j] || !compatible(&s1[i], &s2[j]) {
                continue;
            }
            used[j] = true;
            pick.push(j);
            if search(s1, s2, m, compatible, pick, used) {
                return true;
            }
            pick.pop();
            used[j] = false;
        }
        false
    }
    let mut pick = Vec::new();
    let mut used = vec![false; s2.len()];
    search(&s1, &s2, m, &compatible, &mut pick, &mut used)
}

/// `g1 ⊑ g2`: some subset of `g2` is region-equivalent to `g1`. Exhaustive
/// subset search, oracle scale.
pub fn config_entails(g1: &Configuration, g2: &Configuration, max_const: u32) -> bool {
    let s2: Vec<_> = g2.states().copied().collect();
    if g1.len() > s2.len() {
        return false;
    }
    let n = s2.len();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != g1.len() {
            continue;
        }
        let subset =
            Configuration::from_states((0..n).filter(|i| mask & (1 << i) != 0).map(|i| s2[i]));
        if subset.len() == g1.len() && region_equivalent(g1, &subset, max_const) {
            return true;
        }
    }
    false
}

/// Enumerates the region classes that intersect a zone, yielding one sampled
/// representative valuation per class. Classes fix, per variable, either an
/// exact integer value, an open unit box, or "above the constant", plus a
/// weak ordering of the fractional parts of the boxed variables.
pub fn region_class_representatives<V: Ord + Clone + Debug>(
    zone: &Dbm<V>,
    max_const: u32,
) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    let n = zone.vars().len();
    // groups: fractional-order groups of boxed variable indices (ascending)
    let mut groups: Vec<Vec<usize>> = Vec::new();
    enumerate(zone.clone(), 0, n, max_const, &mut groups, &mut out);
    out
}

fn enumerate<V: Ord + Clone + Debug>(
    z: Dbm<V>,
    i: usize,
    n: usize,
    max_const: u32,
    groups: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Rat>>,
) {
    if i == n {
        out.push(z.sample());
        return;
    }
    let vi = i + 1; // matrix index
    let m = max_const as i64;
    // exact integer values
    for k in 0..=m {
        let mut zz = z.clone();
        if zz.constrain(vi, 0, Bound::weak(k)) && zz.constrain(0, vi, Bound::weak(-k)) {
            enumerate(zz, i + 1, n, max_const, groups, out);
        }
    }
    // above the maximum constant
    {
        let mut zz = z.clone();
        if zz.constrain(0, vi, Bound::strict(-m)) {
            enumerate(zz, i + 1, n, max_const, groups, out);
        }
    }
    // open unit boxes, with every placement in the fraction order
    for k in 0..m {
        let mut boxed = z.clone();
        if !boxed.constrain(0, vi, Bound::strict(-k)) || !boxed.constrain(vi, 0, Bound::strict(k + 1))
        {
            continue;
        }
        // positions: 2g+1 placements for g existing groups
        for pos in 0..(2 * groups.len() + 1) {
            let mut zz = boxed.clone();
            let mut ok = true;
            for (gi, group) in groups.iter().enumerate() {
                let rep = group[0];
                let rep_mi = rep + 1;
                // integer part of the representative's box
                let rep_k = -(zz.get(0, rep_mi).value()); // strict(-rep_k)
                let diff = k - rep_k;
                // fract(v_i) vs fract(v_rep): encoded on v_i - v_rep
                let cmp = if pos == 2 * gi + 1 {
                    0 // same group: equal fractions
                } else if pos <= 2 * gi {
                    -1 // earlier: smaller fraction
                } else {
                    1
                };
                let fine = match cmp {
                    0 => {
                        zz.constrain(vi, rep_mi, Bound::weak(diff))
                            && zz.constrain(rep_mi, vi, Bound::weak(-diff))
                    }
                    -1 => zz.constrain(vi, rep_mi, Bound::strict(diff)),
                    _ => zz.constrain(rep_mi, vi, Bound::strict(-diff)),
                };
                if !fine {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            // update the group structure for the recursion
            let mut new_groups = groups.clone();
            if pos % 2 == 1 {
                new_groups[(pos - 1) / 2].push(i);
            } else {
                new_groups.insert(pos / 2, vec![i]);
            }
            std::mem::swap(groups, &mut new_groups);
            enumerate(zz, i + 1, n, max_const, groups, out);
            std::mem::swap(groups, &mut new_groups);
        }
    }
}

/// All locations of a configuration set, for quick signature comparisons.
pub fn loc_multiset(cfg: &Configuration) -> Vec<LocId> {
    let mut v: Vec<LocId> = cfg.states().map(|s| s.loc).collect();
    v.sort();
    v
}

/// The set of location multisets is tiny; expose a helper for tests.
pub fn distinct_locs(cfg: &Configuration) -> BTreeSet<LocId> {
    cfg.states().map(|s| s.loc).collect()
}
