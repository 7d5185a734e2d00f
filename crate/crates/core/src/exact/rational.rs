//! Helpers around [`num_rational::BigRational`], which is always kept in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` as a big integer.
pub fn pow_big(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn pow_rat(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().map(big).map_err(|_| bad()),
    }
}

/// Exact `"num/den"` rendering; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering with `digits` fractional digits, rounding half to even.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let (mut q, rem) = scaled.numer().abs().div_rem(scaled.denom());
    let twice = &rem * 2u32;
    let den = scaled.denom();
    if twice > *den || (twice == *den && q.is_odd()) {
        q += 1u32;
    }
    let neg = scaled.is_negative() && !q.is_zero();
    let digits_str = q.to_string();
    let body = if digits == 0 {
        digits_str
    } else {
        let padded = format!("{:0>width$}", digits_str, width = digits + 1);
        let (ip, fp) = padded.split_at(padded.len() - digits);
        format!("{ip}.{fp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Converts a rational that must be an integer, failing with `what` otherwise.
pub fn expect_integer(r: &Rational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Internal(format!("{what} is not an integer: {r}")))
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
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

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "15/124", "-182139/40118308"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4095/2476098").unwrap(), rat(455, 275122));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn decimal_rounds_half_to_even() {
        assert_eq!(format_decimal(&rat(1, 8), 2), "0.12");
        assert_eq!(format_decimal(&rat(3, 8), 2), "0.38");
        assert_eq!(format_decimal(&rat(5, 2), 0), "2");
        assert_eq!(format_decimal(&rat(7, 2), 0), "4");
        assert_eq!(format_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(format_decimal(&rat(-1, 1000), 2), "0.00");
        assert_eq!(format_decimal(&int(12), 3), "12.000");
        assert_eq!(format_decimal(&rat(15, 124), 6), "0.120968");
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
