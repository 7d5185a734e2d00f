//! Exact values of `φ_{f,p}(a/p^e) = p^{-ne} dim A/(x_i^{p^e}, f^a)` and the
//! invariants read off from them.

mod generic;
mod table;

pub use generic::{colength_generic, phi_generic, phi_generic_table, GenericPolynomial};
pub use table::PhiTable;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{big, pow_big, Rational};
use crate::guard::check_size;
use crate::primes::require_prime;
use crate::repring::GammaElement;

/// A point `a/p^e` of `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicPoint {
    pub p: u64,
    pub a: u64,
    pub e: u32,
}

impl DyadicPoint {
    pub fn new(p: u64, a: u64, e: u32) -> Result<Self> {
        require_prime(p)?;
        let q = checked_pow(p, e)?;
        if a > q {
            return Err(Error::InvalidInput(format!("a = {a} exceeds p^e = {q}")));
        }
        Ok(DyadicPoint { p, a, e })
    }

    /// `p^e`
    pub fn denominator(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.a), BigInt::from(self.denominator()))
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}^{}", self.a, self.p, self.e)
    }
}

pub(crate) fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or_else(|| Error::TooLarge {
        what: format!("{p}^{e}"),
        size: u128::MAX,
        limit: u64::MAX as u128,
    })
}

/// `x_1^{d_1} + ⋯ + x_n^{d_n}` with `n ≥ 2`, degrees sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalHypersurface {
    degrees: Vec<u64>,
}

impl DiagonalHypersurface {
    pub fn new(mut degrees: Vec<u64>) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(Error::InvalidInput("a diagonal hypersurface needs n ≥ 2".into()));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(format!("degrees must be ≥ 2, got {d}")));
        }
        degrees.sort_unstable();
        Ok(DiagonalHypersurface { degrees })
    }

    /// The Fermat hypersurface of degree `d` in `n` variables.
    pub fn fermat(d: u64, n: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    /// Parses a comma-separated degree list such as `"2,3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let degrees = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad degree {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(degrees)
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// `d = d_1 ⋯ d_n`
    pub fn degree_product(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }

    /// `Σ 1/d_i`
    pub fn reciprocal_sum(&self) -> Rational {
        self.degrees
            .iter()
            .map(|&d| Rational::new(BigInt::one(), BigInt::from(d)))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for DiagonalHypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const VARS: [&str; 4] = ["x", "y", "z", "w"];
        let named = self.n() <= VARS.len();
        let parts: Vec<String> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, d)| {
                if named {
                    format!("{}^{d}", VARS[i])
                } else {
                    format!("x{}^{d}", i + 1)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Prefix data for all `φ(a/p^e)` at one level: `colength[a] = α_a(∏ classes)`.
#[derive(Clone, Debug)]
pub struct ColengthProfile {
    p: u64,
    e: u32,
    n: usize,
    colength: Vec<BigInt>,
}

impl ColengthProfile {
    /// Multiplies the Jordan classes of `x_i^{d_i}` on `𝕂[x_i]/(x_i^{p^e})`.
    pub fn new(f: &DiagonalHypersurface, p: u64, e: u32) -> Result<Self> {
        require_prime(p)?;
        let q = checked_pow(p, e)?;
        check_size("representation-ring level p^e", q as u128)?;
        let prod = f.degrees.iter().fold(GammaElement::one(p), |acc, &d| {
            &acc * &GammaElement::cyclic_class(p, q, d)
        });
        Ok(Self::from_product(&prod, p, e, f.n()))
    }

    fn from_product(prod: &GammaElement, p: u64, e: u32, n: usize) -> Self {
        let q = p.pow(e) as usize;
        let mut colength = Vec::with_capacity(q + 1);
        let mut run = BigInt::zero();
        colength.push(run.clone());
        for i in 0..q {
            let c = prod.coeff(i);
            debug_assert!(c.is_integer());
            if i % 2 == 0 {
                run += c.to_integer();
            } else {
                run -= c.to_integer();
            }
            colength.push(run.clone());
        }
        ColengthProfile { p, e, n, colength }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// `dim A/(x_i^{p^e}, f^a)`
    pub fn colength(&self, a: u64) -> &BigInt {
        &self.colength[a as usize]
    }

    /// `p^{ne}`
    pub fn total(&self) -> BigInt {
        pow_big(self.p, self.e * self.n as u32)
    }

    pub fn phi(&self, a: u64) -> Rational {
        Rational::new(self.colength(a).clone(), self.total())
    }

    pub fn table(&self) -> PhiTable {
        let total = self.total();
        PhiTable::from_values(
            self.p,
            self.e,
            self.colength.iter().map(|c| Rational::new(c.clone(), total.clone())).collect(),
        )
        .expect("profile has p^e + 1 entries")
    }
}

/// `φ_{f,p}(a/p^e)`; 0 at `a = 0`.
pub fn phi_diagonal(f: &DiagonalHypersurface, t: &DyadicPoint) -> Result<Rational> {
    if t.a == 0 {
        return Ok(Rational::zero());
    }
    Ok(ColengthProfile::new(f, t.p, t.e)?.phi(t.a))
}

/// `ψ = 1 - φ`
pub fn psi(f: &DiagonalHypersurface, t: &DyadicPoint) -> Result<Rational> {
    Ok(Rational::one() - phi_diagonal(f, t)?)
}

/// `φ_{x^d,p}(a/p^e) = min(1, d a/p^e)`, the one-variable case.
pub fn phi_monomial(d: u64, t: &DyadicPoint) -> Rational {
    let v = t.value() * big(d);
    if v > Rational::one() {
        Rational::one()
    } else {
        v
    }
}

/// Hilbert–Kunz function `p^{ne} φ(1/p^e) = dim A/(x_i^{p^e}, f)`.
pub fn hk_value(f: &DiagonalHypersurface, p: u64, e: u32) -> Result<BigInt> {
    if e == 0 {
        return Err(Error::InvalidInput("hk_value needs e ≥ 1".into()));
    }
    Ok(ColengthProfile::new(f, p, e)?.colength(1).clone())
}

/// F-signature function `p^{ne}(1 - φ((p^e - 1)/p^e))`.
pub fn fs_value(f: &DiagonalHypersurface, p: u64, e: u32) -> Result<BigInt> {
    if e == 0 {
        return Err(Error::InvalidInput("fs_value needs e ≥ 1".into()));
    }
    let prof = ColengthProfile::new(f, p, e)?;
    let q = p.pow(e);
    Ok(prof.total() - prof.colength(q - 1))
}

/// Adjacent points `a/p^e < (a+1)/p^e` with `ψ(a/p^e) > 0 = ψ((a+1)/p^e)`,
/// bracketing the F-pure threshold. When `ψ((p^e-1)/p^e) > 0` the last
/// interval `[(p^e-1)/p^e, 1]` is returned.
pub fn fpt_bracket(
    f: &DiagonalHypersurface,
    p: u64,
    e: u32,
) -> Result<(DyadicPoint, DyadicPoint)> {
    if e == 0 {
        return Err(Error::InvalidInput("fpt_bracket needs e ≥ 1".into()));
    }
    let prof = ColengthProfile::new(f, p, e)?;
    let total = prof.total();
    let q = p.pow(e);
    // invariant: ψ(lo) > 0, ψ(hi) = 0 or hi = q
    let (mut lo, mut hi) = (0u64, q);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if *prof.colength(mid) < total {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((DyadicPoint { p, a: lo, e }, DyadicPoint { p, a: hi, e }))
}

#[cfg(test)]
mod tests;
