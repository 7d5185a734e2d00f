//! The representation ring Γ_ℚ of finite-length 𝕂[T]-modules in the λ-basis.

mod kernel;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{int, sign, Rational};

/// Finite ℚ-combination `Σ c_i λ_i` for a fixed characteristic `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaElement {
    p: u64,
    coeffs: BTreeMap<usize, Rational>,
}

impl GammaElement {
    pub fn zero(p: u64) -> Self {
        GammaElement { p, coeffs: BTreeMap::new() }
    }

    /// `λ_0`, the class of the trivial module and the unit of the ring.
    pub fn one(p: u64) -> Self {
        Self::lambda(p, 0)
    }

    pub fn lambda(p: u64, i: usize) -> Self {
        Self::scalar_lambda(p, i, Rational::one())
    }

    pub fn scalar_lambda(p: u64, i: usize, c: Rational) -> Self {
        let mut e = Self::zero(p);
        e.add_term(i, c);
        e
    }

    pub fn scalar(p: u64, c: Rational) -> Self {
        Self::scalar_lambda(p, 0, c)
    }

    pub fn from_terms(p: u64, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e = Self::zero(p);
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    /// Dense coefficients, index = λ-index.
    pub fn from_dense(p: u64, c: Vec<Rational>) -> Self {
        Self::from_terms(p, c.into_iter().enumerate())
    }

    pub fn from_int_terms(p: u64, terms: &[(usize, i64)]) -> Self {
        Self::from_terms(p, terms.iter().map(|&(i, c)| (i, int(c))))
    }

    /// `δ_m = Σ_{i<m} (-1)^i λ_i`, the class of `𝕂[T]/(T^m)`.
    pub fn delta(p: u64, m: usize) -> Self {
        Self::from_terms(p, (0..m).map(|i| (i, sign(i))))
    }

    /// `δ_t = (1 - {t}) δ_{⌊t⌋} + {t} δ_{⌊t⌋+1}` for rational `t > 0`.
    pub fn delta_fractional(p: u64, t: &Rational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidInput(format!("δ_t needs t > 0, got {t}")));
        }
        let fl = t.floor();
        let frac = t - &fl;
        let k = fl.to_integer().try_into().map_err(|_| {
            Error::TooLarge { what: "δ_t".into(), size: u128::MAX, limit: usize::MAX as u128 }
        })?;
        Ok(&Self::delta(p, k).scale(&(Rational::one() - &frac))
            + &Self::delta(p, k + 1).scale(&frac))
    }

    /// Class of `𝕂[x]/(x^N)` with `T` acting as `x^d`:
    /// `s δ_{q+1} + (d - s) δ_q` for `N = qd + s`.
    pub fn cyclic_class(p: u64, n: u64, d: u64) -> Self {
        assert!(n >= 1 && d >= 1, "cyclic_class needs N, d ≥ 1");
        let (q, s) = n.div_rem(&d);
        let q = q as usize;
        let mut terms: Vec<(usize, Rational)> =
            (0..q).map(|i| (i, sign(i) * int(d as i64))).collect();
        if s > 0 {
            terms.push((q, sign(q) * int(s as i64)));
        }
        Self::from_terms(p, terms)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// One past the largest index; 0 for the zero element.
    pub fn support_bound(&self) -> usize {
        self.max_index().map_or(0, |m| m + 1)
    }

    /// Membership in `Γ_e`: all indices below `p^e`.
    pub fn in_gamma_e(&self, e: u32) -> bool {
        (self.support_bound() as u128) <= (self.p as u128).pow(e)
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.p);
        }
        GammaElement { p: self.p, coeffs: self.coeffs.iter().map(|(&i, c)| (i, c * s)).collect() }
    }

    fn check_p(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::CharacteristicMismatch(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_p(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    /// Product in Γ_ℚ.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_p(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p));
        }
        let (du, u) = self.to_integral();
        let (dv, v) = other.to_integral();
        let w = kernel::mul_dense(self.p as usize, &u, &v);
        let den = du * dv;
        Ok(Self::from_terms(
            self.p,
            w.into_iter().enumerate().map(|(i, c)| (i, Rational::new(c, den.clone()))),
        ))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Common denominator and dense integer numerators.
    fn to_integral(&self) -> (BigInt, Vec<BigInt>) {
        let den = self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut dense = vec![BigInt::zero(); self.support_bound()];
        for (&i, c) in &self.coeffs {
            dense[i] = c.numer() * (&den / c.denom());
        }
        (den, dense)
    }

    /// The ring endomorphism `λ_i ↦ λ_{pi}` (i even), `λ_{pi+p-1}` (i odd).
    pub fn theta(&self) -> Self {
        let p = self.p as usize;
        GammaElement {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&i, c)| (if i % 2 == 0 { p * i } else { p * i + p - 1 }, c.clone()))
                .collect(),
        }
    }

    pub fn theta_pow(&self, e: u32) -> Self {
        (0..e).fold(self.clone(), |acc, _| acc.theta())
    }

    /// `α(u)`, the λ_0 coefficient.
    pub fn alpha(&self) -> Rational {
        self.coeff(0)
    }

    /// `α_a(u) = Σ_{i<a} (-1)^i c_i`, the linear extension of `α_a(δ_m) = min(a, m)`.
    pub fn alpha_trunc(&self, a: usize) -> Rational {
        self.coeffs
            .range(..a)
            .fold(Rational::zero(), |acc, (&i, c)| if i % 2 == 0 { acc + c } else { acc - c })
    }

    /// `Σ c_i c'_i`; equals `α(u v)` when both supports lie below `p`.
    pub fn pairing(&self, other: &Self) -> Rational {
        self.coeffs
            .iter()
            .filter_map(|(i, c)| other.coeffs.get(i).map(|d| c * d))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Coordinates in the δ-basis: `u = Σ_m b_m δ_m` with `m ≥ 1`.
    pub fn to_delta_basis(&self) -> BTreeMap<usize, Rational> {
        // λ_i = (-1)^i (δ_{i+1} - δ_i), and δ_0 = 0
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&i, c) in &self.coeffs {
            let s = sign(i) * c;
            *out.entry(i + 1).or_insert_with(Rational::zero) += &s;
            if i > 0 {
                *out.entry(i).or_insert_with(Rational::zero) -= s;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn from_delta_basis(p: u64, b: &BTreeMap<usize, Rational>) -> Self {
        let mut out = Self::zero(p);
        for (&m, c) in b {
            for (i, s) in Self::delta(p, m).coeffs {
                out.add_term(i, s * c);
            }
        }
        out
    }

    /// Human-readable form such as `λ_0 - λ_1 + 2λ_3`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (&i, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
            } else if abs.is_integer() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("({abs})"));
            }
            out.push_str(&format!("λ_{i}"));
        }
        out
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add for &GammaElement {
    type Output = GammaElement;
    /// Panics on mismatched characteristics; use [`GammaElement::try_add`] otherwise.
    fn add(self, rhs: &GammaElement) -> GammaElement {
        self.try_add(rhs).expect("characteristic mismatch")
    }
}

impl std::ops::Sub for &GammaElement {
    type Output = GammaElement;
    fn sub(self, rhs: &GammaElement) -> GammaElement {
        self.try_add(&-rhs).expect("characteristic mismatch")
    }
}

impl std::ops::Neg for &GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &GammaElement {
    type Output = GammaElement;
    /// Panics on mismatched characteristics; use [`GammaElement::try_mul`] otherwise.
    fn mul(self, rhs: &GammaElement) -> GammaElement {
        self.try_mul(rhs).expect("characteristic mismatch")
    }
}

/// Product in Γ_ℚ; fails when the characteristics differ.
pub fn gamma_mul(u: &GammaElement, v: &GammaElement) -> Result<GammaElement> {
    u.try_mul(v)
}

/// `D_𝕂(k_1, …, k_n) = α(∏ δ_{k_i})`, valid for every `p` and every `k`.
pub fn d_number_repring(p: u64, k: &[u64]) -> Result<u64> {
    if k.contains(&0) {
        return Err(Error::InvalidInput("k_i must be positive".into()));
    }
    let prod = k
        .iter()
        .fold(GammaElement::one(p), |acc, &ki| &acc * &GammaElement::delta(p, ki as usize));
    let a = prod.alpha();
    let v = crate::exact::rational::expect_integer(&a, "D-number")?;
    u64::try_from(v).map_err(|_| Error::Internal(format!("D-number out of range: {a}")))
}

#[cfg(test)]
mod tests;
