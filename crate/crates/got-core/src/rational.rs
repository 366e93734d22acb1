//! Exact rational scalars and the combinatorial helpers built on them.
//!
//! Every coefficient in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. No floating
//! point appears anywhere; all identities handled here are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact rational number.
///
/// `num_rational::BigRational` already maintains the invariants we need:
/// always reduced, denominator positive, zero stored as `0/1`.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient `C(n, k)` for non-negative `n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Generalized binomial coefficient `C(v, k) = v(v-1)...(v-k+1)/k!` for any
/// integer `v`, including negative values.
///
/// This is the Pochhammer-consistent extension: for `v >= 0` it agrees with
/// the ordinary binomial, and for negative `v` it is the (nonzero) value that
/// makes the negative-binomial series `sum_n C(m+n, n) (-x)^n = (1+x)^-(m+1)`
/// hold coefficient-wise.
pub fn gen_binomial(v: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..k {
        num *= v - BigInt::from(j);
    }
    num / factorial(k)
}

/// Falling factorial `v (v-1) ... (v-n+1)` of a rational argument.
pub fn falling_factorial(v: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..n {
        acc *= v - rat(j as i64);
    }
    acc
}

/// `r^k` for a non-negative integer exponent.
pub fn pow_u(r: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = r.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

/// Parses a rational from `p`, `-p`, `p/q` or `-p/q` decimal strings.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats a rational as `p` or `p/q` (the same shape `parse_rational` reads).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// True if the rational is a negative number.
pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
