//! DBM entries: `(<, k)` or `(<=, k)` packed into one integer, infinity as a
//! sentinel. The packing puts strictness in the low bit so that the natural
//! integer order is exactly the bound order: `(<,k) < (<=,k) < (<,k+1)`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bound(i64);

const INF_REPR: i64 = i64::MAX;

impl Bound {
    pub const INF: Bound = Bound(INF_REPR);

    /// `(<=, 0)`, the diagonal entry.
    pub const LE_ZERO: Bound = Bound(1);

    /// `(<, 0)`.
    pub const LT_ZERO: Bound = Bound(0);

    pub fn weak(k: i64) -> Bound {
        Bound((k << 1) | 1)
    }

    pub fn strict(k: i64) -> Bound {
        Bound(k << 1)
    }

    pub fn new(k: i64, strict: bool) -> Bound {
        if strict {
            Bound::strict(k)
        } else {
            Bound::weak(k)
        }
    }

    pub fn is_inf(&self) -> bool {
        self.0 == INF_REPR
    }

    pub fn value(&self) -> i64 {
        debug_assert!(!self.is_inf());
        self.0 >> 1
    }

    pub fn is_strict(&self) -> bool {
        !self.is_inf() && self.0 & 1 == 0
    }

    /// Min-plus addition: constants add, the sum is weak only when both
    /// summands are.
    pub fn add(self, other: Bound) -> Bound {
        if self.is_inf() || other.is_inf() {
            return Bound::INF;
        }
        Bound::new(
            self.value() + other.value(),
            self.is_strict() || other.is_strict(),
        )
    }

    /// Negation for constraint complements: the values `t` with NOT
    /// `t ⊴ k` are exactly those with `-t ⊴' -k` for the flipped
    /// strictness.
    pub fn negate(self) -> Bound {
        debug_assert!(!self.is_inf());
        Bound::new(-self.value(), !self.is_strict())
    }

    /// Does a rational satisfy `t ⊴ k`?
    pub fn admits(&self, t: ataz_core::Rat) -> bool {
        if self.is_inf() {
            return true;
        }
        let k = ataz_core::rat::rat_int(self.value());
        if self.is_strict() {
            t < k
        } else {
            t <= k
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "<inf")
        } else if self.is_strict() {
            write!(f, "<{}", self.value())
        } else {
            write!(f, "<={}", self.value())
        }
    }
}
