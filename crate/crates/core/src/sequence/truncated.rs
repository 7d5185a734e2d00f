use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{big, pow_big, sign};
use crate::exact::Rational;
use crate::phi::PhiTable;
use crate::repring::GammaElement;

/// The first `E + 1` entries `u_0, …, u_E` of a sequence in Λ. Sequences
/// coming from φ tables have `u_e` supported below `p^e`; shifts and the
/// Γ-action move support up by one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSequence {
    p: u64,
    entries: Vec<GammaElement>,
}

impl TruncatedSequence {
    pub fn new(p: u64, entries: Vec<GammaElement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("a truncated sequence needs entry 0".into()));
        }
        if let Some(u) = entries.iter().find(|u| u.p() != p) {
            return Err(Error::CharacteristicMismatch(p, u.p()));
        }
        Ok(TruncatedSequence { p, entries })
    }

    /// `Δ = (δ_1, p^{-1} δ_p, p^{-2} δ_{p^2}, …)`
    pub fn delta(p: u64, levels: u32) -> Self {
        let entries = (0..=levels)
            .map(|e| {
                let q = pow_big(p, e);
                let m: usize = (&q).try_into().expect("level fits in memory");
                GammaElement::delta(p, m).scale(&Rational::new(BigInt::one(), q))
            })
            .collect();
        TruncatedSequence { p, entries }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Highest level `E`.
    pub fn levels(&self) -> u32 {
        self.entries.len() as u32 - 1
    }

    pub fn entries(&self) -> &[GammaElement] {
        &self.entries
    }

    pub fn entry(&self, e: u32) -> &GammaElement {
        &self.entries[e as usize]
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch(self.p, other.p));
        }
        if self.entries.len() != other.entries.len() {
            return Err(Error::InvalidInput(format!(
                "truncation levels differ: {} vs {}",
                self.levels(),
                other.levels()
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, op: impl Fn(&GammaElement, &GammaElement) -> GammaElement) -> Result<Self> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| op(a, b)).collect();
        Ok(TruncatedSequence { p: self.p, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Componentwise product in Γ.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|_, u| u.scale(c))
    }

    fn map(&self, op: impl Fn(u32, &GammaElement) -> GammaElement) -> Self {
        TruncatedSequence {
            p: self.p,
            entries: self.entries.iter().enumerate().map(|(e, u)| op(e as u32, u)).collect(),
        }
    }

    /// `w·u = (w u_0, θ(w) u_1, θ²(w) u_2, …)`
    pub fn scalar_mul(&self, w: &GammaElement) -> Result<Self> {
        if w.p() != self.p {
            return Err(Error::CharacteristicMismatch(self.p, w.p()));
        }
        Ok(self.map(|e, u| &w.theta_pow(e) * u))
    }

    /// `R(u)_e = (-1)^{p^e} λ_{p^e - 1} u_e`
    pub fn reflect(&self) -> Self {
        let p = self.p;
        self.map(|e, u| {
            let q: usize = (&pow_big(p, e)).try_into().expect("level fits in memory");
            let s = if p.is_multiple_of(2) && e > 0 { Rational::one() } else { -Rational::one() };
            &GammaElement::scalar_lambda(p, q - 1, s) * u
        })
    }

    /// `S(u) = (u_1, u_2, …)`, one level shorter.
    pub fn shift(&self) -> Result<Self> {
        if self.entries.len() < 2 {
            return Err(Error::InvalidInput("cannot shift a sequence with only entry 0".into()));
        }
        Ok(TruncatedSequence { p: self.p, entries: self.entries[1..].to_vec() })
    }

    /// Drops the levels above `levels`.
    pub fn truncate(&self, levels: u32) -> Self {
        let keep = (levels as usize + 1).min(self.entries.len());
        TruncatedSequence { p: self.p, entries: self.entries[..keep].to_vec() }
    }

    /// `α(u_e)` for each level.
    pub fn alphas(&self) -> Vec<Rational> {
        self.entries.iter().map(GammaElement::alpha).collect()
    }

    /// Partial sums of `r_n(u, v) = (1 - p^{n-1} z) Σ_e α(u_e v_e)(p^n z)^e`
    /// up to `z^E`.
    pub fn r_truncated(&self, other: &Self, n: u32) -> Result<Vec<Rational>> {
        let prod = self.mul(other)?;
        let pn = big(pow_big(self.p, n));
        let pn1 = big(pow_big(self.p, n - 1));
        let a: Vec<Rational> = prod
            .alphas()
            .iter()
            .enumerate()
            .map(|(e, x)| x * num_traits::pow(pn.clone(), e))
            .collect();
        Ok((0..a.len())
            .map(|e| if e == 0 { a[0].clone() } else { &a[e] - &pn1 * &a[e - 1] })
            .collect())
    }
}

/// `ℒ(φ)_e = Σ_{i<p^e} (φ((i+1)/p^e) - φ(i/p^e)) (-1)^i λ_i` from the tables
/// of levels `0..=E`, given in order.
pub fn l_sequence(tables: &[PhiTable]) -> Result<TruncatedSequence> {
    let first = tables
        .first()
        .ok_or_else(|| Error::InvalidInput("l_sequence needs the level-0 table".into()))?;
    let p = first.p();
    let entries = tables
        .iter()
        .enumerate()
        .map(|(e, t)| {
            if t.p() != p {
                return Err(Error::CharacteristicMismatch(p, t.p()));
            }
            if t.level() as usize != e {
                return Err(Error::InvalidInput(format!(
                    "table {e} is for level {}, expected {e}",
                    t.level()
                )));
            }
            let v = t.values();
            Ok(GammaElement::from_terms(
                p,
                v.windows(2).enumerate().map(|(i, w)| (i, sign(i) * (&w[1] - &w[0]))),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedSequence::new(p, entries)
}

/// `FS_{f+g}(e) = -p^{ne} α((ℒ(φ̄_f) ℒ(φ_g))_e)` for `e = 0..=E`, where `n`
/// counts the variables of `f + g`.
pub fn fss_numeric(phi_f: &[PhiTable], phi_g: &[PhiTable], n: u32) -> Result<Vec<BigInt>> {
    let u = l_sequence(phi_f)?.reflect();
    let v = l_sequence(phi_g)?;
    let prod = u.mul(&v)?;
    prod.alphas()
        .iter()
        .enumerate()
        .map(|(e, a)| {
            let fs = -a * big(pow_big(prod.p(), n * e as u32));
            if !fs.is_integer() {
                return Err(Error::Internal(format!("FS({e}) = {fs} is not an integer")));
            }
            let fs = fs.to_integer();
            if fs < BigInt::zero() {
                return Err(Error::Internal(format!("FS({e}) = {fs} is negative")));
            }
            Ok(fs)
        })
        .collect()
}
