//! Difference bound matrices over an arbitrary ordered variable type.
//!
//! Entry `(i, j)` bounds `v_i - v_j`; index 0 is the constant-zero reference,
//! so `(i, 0)` is an upper bound on `v_i` and `(0, i)` a (negated) lower
//! bound. Every publicly reachable matrix is canonical (all-pairs tightest)
//! and non-empty; operations that can empty a zone return `Option`.

use crate::bound::Bound;
use ataz_core::rat::{rat_int, Rat};
use num_traits::Zero;
use std::fmt::Debug;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dbm<V> {
    vars: Vec<V>,
    m: Vec<Bound>,
}

impl<V: Ord + Clone + Debug> Dbm<V> {
    /// The zone `v >= 0` for every variable. Variables must be distinct;
    /// they are kept sorted so equal zones compare equal.
    pub fn universe(mut vars: Vec<V>) -> Dbm<V> {
        vars.sort();
        vars.dedup();
        let n = vars.len() + 1;
        let mut m = vec![Bound::INF; n * n];
        for i in 0..n {
            m[i * n + i] = Bound::LE_ZERO;
            // 0 - v_i <= 0
            m[i] = Bound::LE_ZERO;
        }
        Dbm { vars, m }
    }

    pub fn vars(&self) -> &[V] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len() + 1
    }

    /// Matrix index of a variable (1-based; 0 is the zero reference).
    pub fn idx(&self, v: &V) -> Option<usize> {
        self.vars.iter().position(|x| x == v).map(|i| i + 1)
    }

    pub fn var_at(&self, i: usize) -> Option<&V> {
        if i == 0 {
            None
        } else {
            self.vars.get(i - 1)
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Bound {
        self.m[i * self.dim() + j]
    }

    fn set(&mut self, i: usize, j: usize, b: Bound) {
        let n = self.dim();
        self.m[i * n + j] = b;
    }

    /// Full Floyd-Warshall closure; `false` when a negative cycle shows up.
    pub fn close(&mut self) -> bool {
        let n = self.dim();
        for k in 0..n {
            for i in 0..n {
                let ik = self.get(i, k);
                if ik.is_inf() {
                    continue;
                }
                for j in 0..n {
                    let through = ik.add(self.get(k, j));
                    if through < self.get(i, j) {
                        self.set(i, j, through);
                    }
                }
            }
        }
        (0..n).all(|i| self.get(i, i) >= Bound::LE_ZERO)
    }

    /// Tightens `v_i - v_j ⊴ b` and restores canonicity incrementally;
    /// `false` when the zone empties.
    pub fn constrain(&mut self, i: usize, j: usize, b: Bound) -> bool {
        if b >= self.get(i, j) {
            return true;
        }
        if i == j {
            return b >= Bound::LE_ZERO;
        }
        self.set(i, j, b);
        if self.get(j, i).add(b) < Bound::LE_ZERO {
            return false;
        }
        let n = self.dim();
        for x in 0..n {
            let xi = self.get(x, i);
            if xi.is_inf() {
                continue;
            }
            for y in 0..n {
                let through = xi.add(b).add(self.get(j, y));
                if through < self.get(x, y) {
                    self.set(x, y, through);
                }
            }
        }
        (0..n).all(|d| self.get(d, d) >= Bound::LE_ZERO)
    }

    /// Upper bound on a variable: `v ⊴ k`.
    pub fn constrain_upper(&mut self, v: &V, b: Bound) -> bool {
        let i = self.idx(v).expect("unknown variable");
        self.constrain(i, 0, b)
    }

    /// Lower bound on a variable: `v ⊵ k`, stored as `0 - v ⊴ -k`.
    pub fn constrain_lower(&mut self, v: &V, k: i64, strict: bool) -> bool {
        let i = self.idx(v).expect("unknown variable");
        self.constrain(0, i, Bound::new(-k, strict))
    }

    /// Time elapse: drops every upper bound against the reference variable.
    /// Canonicity is preserved.
    pub fn up(&mut self) {
        let n = self.dim();
        for i in 1..n {
            self.set(i, 0, Bound::INF);
        }
    }

    /// Keeps only the given variables. Projection of a canonical matrix is
    /// canonical.
    pub fn project(&self, keep: &[V]) -> Dbm<V> {
        let mut kept: Vec<(usize, V)> = keep
            .iter()
            .filter_map(|v| self.idx(v).map(|i| (i, v.clone())))
            .collect();
        kept.sort_by(|a, b| a.1.cmp(&b.1));
        let vars: Vec<V> = kept.iter().map(|(_, v)| v.clone()).collect();
        let old: Vec<usize> = std::iter::once(0).chain(kept.iter().map(|(i, _)| *i)).collect();
        let n = vars.len() + 1;
        let mut m = vec![Bound::INF; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = self.get(old[a], old[b]);
            }
        }
        Dbm { vars, m }
    }

    /// Renames variables through `f`; the result is re-sorted. `f` must be
    /// injective on this matrix's variables.
    pub fn rename<W: Ord + Clone + Debug>(&self, f: impl Fn(&V) -> W) -> Dbm<W> {
        let mut order: Vec<(W, usize)> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (f(v), i + 1))
            .collect();
        order.sort_by(|a, b| a.0.cmp(&b.0));
        let vars: Vec<W> = order.iter().map(|(w, _)| w.clone()).collect();
        assert!(
            vars.windows(2).all(|w| w[0] != w[1]),
            "renaming must be injective"
        );
        let old: Vec<usize> = std::iter::once(0).chain(order.iter().map(|(_, i)| *i)).collect();
        let n = vars.len() + 1;
        let mut m = vec![Bound::INF; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = self.get(old[a], old[b]);
            }
        }
        Dbm { vars, m }
    }

    /// Intersection of two zones over the same variable set.
    pub fn intersect(&self, other: &Dbm<V>) -> Option<Dbm<V>> {
        assert_eq!(self.vars, other.vars, "intersect requires equal variables");
        let mut out = self.clone();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let b = other.get(i, j);
                if b < out.get(i, j) {
                    out.set(i, j, b);
                }
            }
        }
        if out.close() {
            Some(out)
        } else {
            None
        }
    }

    /// For canonical non-empty matrices, inclusion is entrywise.
    pub fn subset_of(&self, other: &Dbm<V>) -> bool {
        debug_assert_eq!(self.vars, other.vars);
        (0..self.m.len()).all(|k| self.m[k] <= other.m[k])
    }

    /// Does a full valuation (same order as `vars`) satisfy every constraint?
    pub fn admits_valuation(&self, vals: &[Rat]) -> bool {
        debug_assert_eq!(vals.len(), self.vars.len());
        let val = |i: usize| -> Rat {
            if i == 0 {
                Rat::zero()
            } else {
                vals[i - 1]
            }
        };
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if !self.get(i, j).admits(val(i) - val(j)) {
                    return false;
                }
            }
        }
        true
    }

    /// One rational point of a non-empty canonical zone. Prefers closed
    /// bounds; falls back to midpoints of open intervals. A canonical matrix
    /// guarantees every greedy partial assignment extends.
    pub fn sample(&self) -> Vec<Rat> {
        let n = self.dim();
        let mut vals: Vec<Option<Rat>> = vec![None; n];
        vals[0] = Some(Rat::zero());
        for i in 1..n {
            // interval for v_i implied by already-fixed variables
            let mut lo = Rat::zero() - rat_int(1);
            let mut lo_strict = false;
            let mut hi: Option<Rat> = None;
            let mut hi_strict = false;
            for j in 0..n {
                let Some(vj) = vals[j] else { continue };
                let up = self.get(i, j);
                if !up.is_inf() {
                    let cand = vj + rat_int(up.value());
                    let tighter = match hi {
                        None => true,
                        Some(h) => cand < h || (cand == h && up.is_strict() && !hi_strict),
                    };
                    if tighter {
                        hi = Some(cand);
                        hi_strict = up.is_strict();
                    }
                }
                let down = self.get(j, i);
                if !down.is_inf() {
                    let cand = vj - rat_int(down.value());
                    if cand > lo || (cand == lo && down.is_strict() && !lo_strict) {
                        lo = cand;
                        lo_strict = down.is_strict();
                    }
                }
            }
            let v = if !lo_strict {
                lo
            } else {
                match hi {
                    Some(h) if hi_strict || h > lo => (lo + h) / rat_int(2),
                    Some(h) => h,
                    None => lo + rat_int(1),
                }
            };
            vals[i] = Some(v);
        }
        let out: Vec<Rat> = vals[1..].iter().map(|v| v.unwrap()).collect();
        debug_assert!(
            self.admits_valuation(&out),
            "sampled point must satisfy the zone"
        );
        out
    }

    /// Builds a zone over fresh variables, each either a copy of one of this
    /// zone's variables or pinned to zero. Copying rows and columns of a
    /// canonical matrix keeps it canonical; the zero-pinned entries are
    /// exact, so the result only needs the cheap final close.
    pub fn rebuild<W: Ord + Clone + Debug>(&self, new: &[(W, Option<V>)]) -> Dbm<W> {
        let mut sources: Vec<(W, Option<usize>)> = new
            .iter()
            .map(|(w, src)| {
                (
                    w.clone(),
                    src.as_ref().map(|v| self.idx(v).expect("unknown source")),
                )
            })
            .collect();
        sources.sort_by(|a, b| a.0.cmp(&b.0));
        assert!(
            sources.windows(2).all(|w| w[0].0 != w[1].0),
            "new variables must be distinct"
        );
        let n = sources.len() + 1;
        let entry = |i: Option<usize>, j: Option<usize>| -> Bound {
            match (i, j) {
                (Some(a), Some(b)) => self.get(a, b),
                (Some(a), None) => self.get(a, 0),
                (None, Some(b)) => self.get(0, b),
                (None, None) => Bound::LE_ZERO,
            }
        };
        let src_of = |k: usize| -> Option<usize> {
            if k == 0 {
                None
            } else {
                sources[k - 1].1
            }
        };
        let mut m = vec![Bound::INF; n * n];
        for a in 0..n {
            for b in 0..n {
                m[a * n + b] = entry(src_of(a), src_of(b));
            }
        }
        let mut out = Dbm {
            vars: sources.into_iter().map(|(w, _)| w).collect(),
            m,
        };
        let nonempty = out.close();
        debug_assert!(nonempty, "rebuilding a non-empty zone cannot empty it");
        out
    }

    /// Samples a point after pinning some variables to exact rationals.
    /// Returns `None` when the pins contradict the zone. Internally the zone
    /// is scaled so the pins become integers; the DBM stays exact.
    pub fn sample_with_pins(&self, pins: &[(V, Rat)]) -> Option<Vec<Rat>> {
        let mut scale: i64 = 1;
        for (_, r) in pins {
            scale = lcm(scale, *r.denom());
        }
        let mut scaled = self.clone();
        for k in 0..scaled.m.len() {
            let b = scaled.m[k];
            if !b.is_inf() {
                scaled.m[k] = Bound::new(b.value() * scale, b.is_strict());
            }
        }
        for (v, r) in pins {
            let i = scaled.idx(v).expect("unknown pinned variable");
            let num = (*r * rat_int(scale)).to_integer();
            if !scaled.constrain(i, 0, Bound::weak(num)) {
                return None;
            }
            if !scaled.constrain(0, i, Bound::weak(-num)) {
                return None;
            }
        }
        let scaled_vals = scaled.sample();
        Some(scaled_vals.into_iter().map(|v| v / rat_int(scale)).collect())
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
