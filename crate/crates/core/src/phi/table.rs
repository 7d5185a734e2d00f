use num_traits::One;

use super::{checked_pow, DyadicPoint};
use crate::error::{Error, Result};
use crate::exact::rational::Rational;

/// Values of a function on `{a/p^e : 0 ≤ a ≤ p^e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTable {
    p: u64,
    e: u32,
    values: Vec<Rational>,
}

impl PhiTable {
    pub fn from_values(p: u64, e: u32, values: Vec<Rational>) -> Result<Self> {
        let q = checked_pow(p, e)?;
        if values.len() as u64 != q + 1 {
            return Err(Error::InvalidInput(format!(
                "a level-{e} table needs {} samples, got {}",
                q + 1,
                values.len()
            )));
        }
        Ok(PhiTable { p, e, values })
    }

    pub fn from_fn(p: u64, e: u32, f: impl Fn(&DyadicPoint) -> Rational) -> Result<Self> {
        let q = checked_pow(p, e)?;
        let values = (0..=q).map(|a| f(&DyadicPoint { p, a, e })).collect();
        Ok(PhiTable { p, e, values })
    }

    /// The identity `φ(t) = t`, whose sequence is Δ.
    pub fn identity(p: u64, e: u32) -> Result<Self> {
        Self::from_fn(p, e, DyadicPoint::value)
    }

    /// `φ_{x^d,p}(t) = min(1, dt)`.
    pub fn monomial(d: u64, p: u64, e: u32) -> Result<Self> {
        Self::from_fn(p, e, |t| super::phi_monomial(d, t))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.e
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, a: u64) -> &Rational {
        &self.values[a as usize]
    }

    /// `(T_{p^e|b} φ)(a/p^m) = φ((a + b p^m)/p^{m+e})`, taking this table at
    /// level `m + e` down to level `m`.
    pub fn restrict(&self, e: u32, b: u64) -> Result<PhiTable> {
        if e > self.e {
            return Err(Error::InvalidInput(format!(
                "cannot restrict a level-{} table by {e} levels",
                self.e
            )));
        }
        let pe = checked_pow(self.p, e)?;
        if b >= pe {
            return Err(Error::InvalidInput(format!("b = {b} must be below p^e = {pe}")));
        }
        let m = self.e - e;
        let pm = self.p.pow(m);
        let values = (0..=pm).map(|a| self.value(a + b * pm).clone()).collect();
        Ok(PhiTable { p: self.p, e: m, values })
    }

    /// `φ̄(t) = φ(1 - t)`.
    pub fn reflect(&self) -> PhiTable {
        PhiTable { p: self.p, e: self.e, values: self.values.iter().rev().cloned().collect() }
    }

    /// The same function sampled at the coarser level `m ≤ e`.
    pub fn coarsen(&self, m: u32) -> Result<PhiTable> {
        if m > self.e {
            return Err(Error::InvalidInput(format!("level {m} is finer than {}", self.e)));
        }
        let step = self.p.pow(self.e - m);
        let values = (0..=self.p.pow(m)).map(|a| self.value(a * step).clone()).collect();
        Ok(PhiTable { p: self.p, e: m, values })
    }

    /// `c·φ + k` entrywise.
    pub fn affine(&self, c: &Rational, k: &Rational) -> PhiTable {
        PhiTable {
            p: self.p,
            e: self.e,
            values: self.values.iter().map(|v| v * c + k).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// `1 - φ` entrywise.
    pub fn complement(&self) -> PhiTable {
        self.affine(&-Rational::one(), &Rational::one())
    }
}
