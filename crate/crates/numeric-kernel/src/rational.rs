//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps values reduced with a positive denominator,
//! so equality is structural. This module only adds constructors and a
//! strict parser for the `p/q` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::SeriesError;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Parses `n`, `-n`, `p/q` or `-p/q`. Whitespace is not accepted inside.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let bad = || SeriesError::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let ok_digits = |t: &str, signed: bool| {
        let body = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok_digits(num, true) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if ok_digits(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(SeriesError::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical text: `p/q` with q > 1, or `p`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![zero(); n + 1];
    b[0] = one();
    for m in 1..=n {
        let mut s = zero();
        for (k, bk) in b.iter().enumerate().take(m) {
            s += binomial(m as u64 + 1, k as u64) * bk;
        }
        b[m] = -s / int(m as i64 + 1);
    }
    b
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}
