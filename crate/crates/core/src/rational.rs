//! Rational scalars and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps the numerator and denominator
/// coprime with a positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_zero() -> Q {
    Q::zero()
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(src: &str) -> Result<Q, Error> {
    let s = src.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational number: {src:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Canonical `p/q` rendering (`p` when the denominator is one).
pub fn fmt_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

/// Floor of a rational as an integer.
pub fn floor_int(x: &Q) -> i64 {
    use num_traits::ToPrimitive;
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

/// Ceiling of a rational as an integer.
pub fn ceil_int(x: &Q) -> i64 {
    use num_traits::ToPrimitive;
    x.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}
