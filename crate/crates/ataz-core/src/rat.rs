//! Exact rational arithmetic helpers.

use num_rational::Rational64;
use num_traits::Signed;
use std::fmt::Write as _;

/// Exact rational. Clock values and delays never touch floating point.
pub type Rat = Rational64;

/// Rational from numerator/denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Floor of a non-negative rational as u64.
pub fn floor_u64(r: Rat) -> u64 {
    debug_assert!(!r.is_negative());
    (*r.floor().numer()) as u64
}

/// Fractional part, in [0, 1).
pub fn fract(r: Rat) -> Rat {
    r - r.floor()
}

/// Prints a rational as a terminating decimal when the denominator is of the
/// form 2^a * 5^b, otherwise as `p/q`. Integers print without a point.
pub fn fmt_rat(r: Rat) -> String {
    let num = *r.numer();
    let den = *r.denom();
    if den == 1 {
        return num.to_string();
    }
    let mut d = den;
    let mut twos = 0u32;
    let mut fives = 0u32;
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format!("{num}/{den}");
    }
    // Scale to 10^k with k = max(twos, fives).
    let k = twos.max(fives);
    let mut scaled = num.unsigned_abs() as u128 * 10u128.pow(k) / den as u128;
    let mut out = String::new();
    if num < 0 {
        out.push('-');
    }
    let pow = 10u128.pow(k);
    let _ = write!(out, "{}", scaled / pow);
    scaled %= pow;
    let mut digits = format!("{scaled:0width$}", width = k as usize);
    while digits.ends_with('0') {
        digits.pop();
    }
    out.push('.');
    out.push_str(&digits);
    out
}
