//! Clock guard intervals with natural-number endpoints.

use crate::rat::{rat_int, Rat};
use std::fmt;
use thiserror::Error;

/// A non-empty interval over the non-negative reals with natural endpoints.
/// The upper endpoint may be infinite, in which case it is open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: u32,
    /// `None` means +infinity.
    hi: Option<u32>,
    lo_closed: bool,
    hi_closed: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("empty interval: lower bound {0} exceeds upper bound {1}")]
    Inverted(u32, u32),
    #[error("empty interval: degenerate bounds must both be closed")]
    EmptyPoint,
    #[error("an infinite upper bound must be open")]
    ClosedInfinity,
}

impl Interval {
    pub fn new(
        lo: u32,
        hi: Option<u32>,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Result<Self, IntervalError> {
        match hi {
            Some(h) if h < lo => return Err(IntervalError::Inverted(lo, h)),
            Some(h) if h == lo && !(lo_closed && hi_closed) => {
                return Err(IntervalError::EmptyPoint)
            }
            None if hi_closed => return Err(IntervalError::ClosedInfinity),
            _ => {}
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    /// `[lo, hi]`.
    pub fn closed(lo: u32, hi: u32) -> Self {
        Interval::new(lo, Some(hi), true, true).unwrap()
    }

    /// `[lo, inf)`.
    pub fn at_least(lo: u32) -> Self {
        Interval::new(lo, None, true, false).unwrap()
    }

    /// `[0, inf)`, satisfied by every clock value.
    pub fn full() -> Self {
        Interval::at_least(0)
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> Option<u32> {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_full(&self) -> bool {
        self.lo == 0 && self.lo_closed && self.hi.is_none()
    }

    pub fn contains(&self, v: Rat) -> bool {
        let lo = rat_int(self.lo as i64);
        let above = if self.lo_closed { v >= lo } else { v > lo };
        if !above {
            return false;
        }
        match self.hi {
            None => true,
            Some(h) => {
                let hi = rat_int(h as i64);
                if self.hi_closed {
                    v <= hi
                } else {
                    v < hi
                }
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo == 0 && self.lo_closed
    }

    /// Intersection, `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Less => (other.lo, other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match (self.hi, other.hi) {
            (None, None) => (None, false),
            (Some(h), None) => (Some(h), self.hi_closed),
            (None, Some(h)) => (Some(h), other.hi_closed),
            (Some(a), Some(b)) => match a.cmp(&b) {
                std::cmp::Ordering::Less => (Some(a), self.hi_closed),
                std::cmp::Ordering::Greater => (Some(b), other.hi_closed),
                std::cmp::Ordering::Equal => (Some(a), self.hi_closed && other.hi_closed),
            },
        };
        Interval::new(lo, hi, lo_closed, hi_closed).ok()
    }

    /// Largest finite endpoint appearing in the interval.
    pub fn max_finite_constant(&self) -> u32 {
        self.hi.unwrap_or(0).max(self.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{},", if self.lo_closed { '[' } else { '(' }, self.lo)?;
        match self.hi {
            None => write!(f, "inf)"),
            Some(h) => write!(f, "{}{}", h, if self.hi_closed { ']' } else { ')' }),
        }
    }
}
