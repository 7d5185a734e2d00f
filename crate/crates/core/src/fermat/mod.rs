//! F-signature of Fermat hypersurfaces `x_1^d + ⋯ + x_n^d`: F-purity, the
//! two-term closed form `FS(e) = s p^{(n-1)e} + (1 - s) B^e`, the cubic
//! threefold formula and the Watanabe–Yoshida comparison.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::rational::{big, factorial, int, pow_big, pow_rat};
use crate::exact::{format_rational, Polynomial, Rational, RationalFunction, RationalSeries};
use crate::phi::{fs_value, DiagonalHypersurface};
use crate::primes::{is_prime, require_prime};
use crate::repring::GammaElement;
use crate::sequence::{diagonal_shift_rule, fss_symbolic, rule_power};


/// The Fermat hypersurface of degree `d` in `n` variables over `F_p`.
/// Nothing is checked at construction; each operation states its own needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FermatQuery {
    pub p: u64,
    pub d: u64,
    pub n: u32,
}

impl FermatQuery {
    pub fn new(p: u64, d: u64, n: u32) -> Self {
        FermatQuery { p, d, n }
    }

    /// `M = ⌊p/d⌋`
    pub fn m(&self) -> u64 {
        self.p / self.d
    }

    /// 0 if `p ≡ 1 (mod d)`, 1 if `p ≡ -1 (mod d)`.
    pub fn alpha(&self) -> Option<u8> {
        match self.p % self.d {
            1 => Some(0),
            r if r == self.d - 1 => Some(1),
            _ => None,
        }
    }

    pub fn hypersurface(&self) -> Result<DiagonalHypersurface> {
        DiagonalHypersurface::fermat(self.d, self.n as usize)
    }

    fn check_basic(&self) -> Result<()> {
        require_prime(self.p)?;
        if self.d < 2 || self.n < 2 {
            return Err(Error::InvalidInput(format!("need d, n ≥ 2, got d = {}, n = {}", self.d, self.n)));
        }
        if self.p <= self.d {
            return Err(Error::Hypothesis(format!("need p > d, got p = {}, d = {}", self.p, self.d)));
        }
        Ok(())
    }

    fn check_congruence(&self) -> Result<u8> {
        self.alpha().ok_or(Error::CongruenceUnsupported { p: self.p, d: self.d })
    }

    /// `n > d ≥ 2`, `p > d`, `p ≡ ±1 (mod d)` and `n(p ∓ 1)/d` even.
    pub fn check_shape_hypotheses(&self) -> Result<()> {
        self.check_basic()?;
        if self.n as u64 <= self.d {
            return Err(Error::Hypothesis(format!("need n > d, got n = {}, d = {}", self.n, self.d)));
        }
        let alpha = self.check_congruence()?;
        let k = if alpha == 0 { (self.p - 1) / self.d } else { (self.p + 1) / self.d };
        if (self.n as u64 * k) % 2 == 1 {
            let sign = if alpha == 0 { '-' } else { '+' };
            return Err(Error::Hypothesis(format!(
                "parity: n(p {sign} 1)/d = {} is odd",
                self.n as u64 * k
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FermatQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p = {}, d = {}, n = {}", self.p, self.d, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FPureClass {
    NotFPure,
    FPureNotStronglyFRegular,
    StronglyFRegular,
    Undetermined,
}

impl fmt::Display for FPureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FPureClass::NotFPure => "not F-pure",
            FPureClass::FPureNotStronglyFRegular => "F-pure, not strongly F-regular",
            FPureClass::StronglyFRegular => "strongly F-regular",
            FPureClass::Undetermined => "undetermined",
        })
    }
}

/// The three behaviours of the constant `B` for `n ≥ 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BcClass {
    /// `B = C = 0`: FS vanishes for `e ≥ 1`.
    Zero,
    One,
    Greater,
}

impl fmt::Display for BcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BcClass::Zero => "B = C = 0",
            BcClass::One => "B = 1",
            BcClass::Greater => "B > 1",
        })
    }
}

/// `FS(e) = s p^{(n-1)e} + (1 - s) B^e` for `e ≥ 1`, with `s = -C/(p^{n-1} - B)`
/// and series `(-1 + (p^{n-1} + C) z)/((p^{n-1} z - 1)(1 - B z))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormFS {
    pub p: u64,
    pub n: u32,
    pub s: Rational,
    pub b: BigInt,
    pub c: BigInt,
    pub series: RationalSeries,
}

impl ClosedFormFS {
    pub fn from_bc(p: u64, n: u32, b: BigInt, c: BigInt) -> Result<Self> {
        let pn1 = pow_big(p, n - 1);
        if pn1 == b {
            return Err(Error::Internal("B equals p^(n-1)".into()));
        }
        let s = Rational::new(-c.clone(), &pn1 - &b);
        let num = Polynomial::from_coeffs(vec![int(-1), Rational::from_integer(&pn1 + &c)]);
        let den = &Polynomial::from_coeffs(vec![int(-1), big(pn1)])
            * &Polynomial::from_coeffs(vec![int(1), -Rational::from_integer(b.clone())]);
        let series = RationalSeries::from_function(&RationalFunction::new(num, den)?)?;
        Ok(ClosedFormFS { p, n, s, b, c, series })
    }

    /// The closed form at `e ≥ 1`.
    pub fn fs(&self, e: u32) -> Result<BigInt> {
        if e == 0 {
            return Err(Error::InvalidInput("the closed form is stated for e ≥ 1".into()));
        }
        let main = &self.s * big(pow_big(self.p, (self.n - 1) * e));
        let rest = (Rational::one() - &self.s) * big(num_traits::pow(self.b.clone(), e as usize));
        let v = main + rest;
        if !v.is_integer() {
            return Err(Error::Internal(format!("closed form gives non-integer FS({e}) = {v}")));
        }
        Ok(v.to_integer())
    }

    /// Checks `s = -C/(p^{n-1} - B)`, `0 ≤ B ≤ p^{n-3}` and integrality up to `e = 3`.
    pub fn check_invariants(&self) -> Result<()> {
        let pn1 = pow_big(self.p, self.n - 1);
        if self.s != Rational::new(-self.c.clone(), &pn1 - &self.b) {
            return Err(Error::Internal("s ≠ -C/(p^(n-1) - B)".into()));
        }
        if self.b.is_negative() || (self.n >= 3 && self.b > pow_big(self.p, self.n - 3)) {
            return Err(Error::Internal(format!("B = {} outside [0, p^(n-3)]", self.b)));
        }
        for e in 1..=3 {
            self.fs(e)?;
        }
        Ok(())
    }

    /// `s·p^{(n-1)e} + (1-s)·B^e` with exact coefficients.
    pub fn formula(&self) -> String {
        let rest = Rational::one() - &self.s;
        let mut out = format!("({})·{}^({}e)", format_rational(&self.s), self.p, self.n - 1);
        if !rest.is_zero() {
            out += &format!(" + ({})·{}^e", format_rational(&rest), self.b);
        }
        out
    }
}

/// The Hochster–Roberts F-purity picture, refined by `s > 0` when `d < n`.
pub fn fpure_classification(q: &FermatQuery) -> FPureClass {
    if !is_prime(q.p) || q.d < 2 || q.n < 2 {
        return FPureClass::Undetermined;
    }
    let n = q.n as u64;
    if q.p <= q.d || q.d > n {
        return FPureClass::NotFPure;
    }
    if q.d == n {
        return if q.p % q.d == 1 { FPureClass::FPureNotStronglyFRegular } else { FPureClass::NotFPure };
    }
    if q.check_shape_hypotheses().is_err() {
        return FPureClass::Undetermined;
    }
    if q.n >= 4 && bc_classify(q) == Ok(BcClass::Zero) {
        return FPureClass::NotFPure;
    }
    match fermat_fss(q).and_then(|fss| fss.pole_weight(&big(pow_big(q.p, q.n - 1)))) {
        Ok(s) if s.is_positive() => FPureClass::StronglyFRegular,
        Ok(s) if s.is_zero() => FPureClass::NotFPure,
        _ => FPureClass::Undetermined,
    }
}

/// Coefficient of `λ_{p-1-M}` in `λ_M^{n-1}`.
pub fn fermat_b(q: &FermatQuery) -> Result<BigInt> {
    q.check_basic()?;
    q.check_congruence()?;
    let m = q.m() as usize;
    let c = GammaElement::lambda(q.p, m).pow(q.n - 1).coeff(q.p as usize - 1 - m);
    if !c.is_integer() || c.is_negative() {
        return Err(Error::Internal(format!("B = {c} is not a nonnegative integer")));
    }
    Ok(c.to_integer())
}

/// `B > 1` for `p ≡ 1`; for `p ≡ -1` the sign of `p(n-d) + n + d - dn`.
pub fn bc_classify(q: &FermatQuery) -> Result<BcClass> {
    q.check_shape_hypotheses()?;
    if q.n < 4 {
        return Err(Error::Hypothesis(format!("the B/C trichotomy needs n ≥ 4, got {}", q.n)));
    }
    if q.alpha() == Some(0) {
        return Ok(BcClass::Greater);
    }
    let (p, d, n) = (q.p as i128, q.d as i128, q.n as i128);
    Ok(match (p * (n - d) + n + d - d * n).signum() {
        -1 => BcClass::Zero,
        0 => BcClass::One,
        _ => BcClass::Greater,
    })
}

/// `FSS` of the Fermat hypersurface from the shifting rules of `x^d`,
/// split as `(x_1^d + ⋯ + x_{n-1}^d) + x_n^d`.
pub fn fermat_fss(q: &FermatQuery) -> Result<RationalSeries> {
    q.check_basic()?;
    let rule = diagonal_shift_rule(q.p, q.d)?;
    fss_symbolic(q.n, &rule_power(&rule, q.n - 1)?, &rule.reflect()?)
}

/// The closed form: `B` from the λ-power, `C` from one exact value FS(1),
/// then checked against FS(2) and, for `n ≤ 5`, the symbolic series.
pub fn fermat_fs_closed(q: &FermatQuery) -> Result<ClosedFormFS> {
    q.check_shape_hypotheses()?;
    let b = fermat_b(q)?;
    let f = q.hypersurface()?;
    let fs1 = fs_value(&f, q.p, 1)?;
    let closed = ClosedFormFS::from_bc(q.p, q.n, b.clone(), &b - &fs1)?;
    closed.check_invariants()?;
    let fs2 = fs_value(&f, q.p, 2)?;
    if closed.fs(2)? != fs2 {
        return Err(Error::Internal(format!(
            "closed form gives FS(2) = {} but the direct value is {fs2} ({q})",
            closed.fs(2)?
        )));
    }
    if q.n <= 5 {
        let symbolic = fermat_fss(q)?;
        if symbolic.to_function() != closed.series.to_function() {
            return Err(Error::Internal(format!(
                "symbolic series {symbolic} differs from closed form {} ({q})",
                closed.series
            )));
        }
    }
    Ok(closed)
}

/// `s = 3p(p-1)(p+1)/(8(3p^3 - p + 2(-1)^{α+1}))` and `B = (p + 2(-1)^α)/3`
/// for `x_1^3 + ⋯ + x_4^3`.
pub fn fermat_cubic(p: u64) -> Result<ClosedFormFS> {
    require_prime(p)?;
    if p <= 3 {
        return Err(Error::Hypothesis(format!("the cubic formula needs p > 3, got {p}")));
    }
    let sign: i64 = if p % 3 == 1 { 1 } else { -1 };
    let pi = BigInt::from(p);
    let p3 = &pi * &pi * &pi;
    let s = Rational::new(
        BigInt::from(3) * &pi * (&pi - 1) * (&pi + 1),
        BigInt::from(8) * (BigInt::from(3) * &p3 - &pi - 2 * sign),
    );
    let b = (&pi + 2 * sign) / 3;
    let c = -(&s * Rational::from_integer(&p3 - &b));
    if !c.is_integer() {
        return Err(Error::Internal(format!("cubic formula gives non-integral C = {c}")));
    }
    let closed = ClosedFormFS::from_bc(p, 4, b, c.to_integer())?;
    debug_assert_eq!(closed.s, s);
    Ok(closed)
}

/// `FS(e) = 1` for `d = n` and `p ≡ 1 (mod d)`, checked against direct values
/// at `e = 1` and, when `p^2` is small, at `e = 2`.
pub fn fs_equal_one(q: &FermatQuery) -> Result<ClosedFormFS> {
    q.check_basic()?;
    if q.d != q.n as u64 || q.p % q.d != 1 {
        return Err(Error::Hypothesis(format!("FS ≡ 1 needs d = n and p ≡ 1 (mod d), got {q}")));
    }
    let closed = ClosedFormFS::from_bc(q.p, q.n, BigInt::one(), BigInt::zero())?;
    let f = q.hypersurface()?;
    let top = if q.p * q.p <= 10_000 { 2 } else { 1 };
    for e in 1..=top {
        let v = fs_value(&f, q.p, e)?;
        if !v.is_one() {
            return Err(Error::Internal(format!("FS({e}) = {v} ≠ 1 ({q})")));
        }
    }
    Ok(closed)
}

/// `s = ((d-1)^n - 1)/(p^{n-1} - 1)` when `B = 1` and `d` is odd.
pub fn b_equal_one_fs(q: &FermatQuery) -> Result<Rational> {
    if q.d.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("needs d odd, got d = {}", q.d)));
    }
    let class = bc_classify(q)?;
    if class != BcClass::One {
        return Err(Error::Hypothesis(format!("needs B = 1, but {class} for {q}")));
    }
    Ok(Rational::new(pow_big(q.d - 1, q.n) - 1, pow_big(q.p, q.n - 1) - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WyVerdict {
    StrictlyLess,
    Equal,
    Greater,
}

impl fmt::Display for WyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WyVerdict::StrictlyLess => "strict-less",
            WyVerdict::Equal => "equal",
            WyVerdict::Greater => "greater",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WyComparison {
    pub s: Rational,
    pub bound: Rational,
    pub verdict: WyVerdict,
}

/// `1/(2^{d-1}(d-1)!)`
pub fn watanabe_yoshida_bound(d: u64) -> Rational {
    Rational::one() / (pow_rat(&int(2), (d - 1) as u32) * big(factorial(d - 1)))
}

/// The F-signature of `x_1^d + ⋯ + x_{d+1}^d` against the Watanabe–Yoshida bound.
pub fn watanabe_yoshida_compare(p: u64, d: u64) -> Result<WyComparison> {
    let q = FermatQuery::new(p, d, d as u32 + 1);
    let s = fermat_fs_closed(&q)?.s;
    let bound = watanabe_yoshida_bound(d);
    let verdict = match s.cmp(&bound) {
        std::cmp::Ordering::Less => WyVerdict::StrictlyLess,
        std::cmp::Ordering::Equal => WyVerdict::Equal,
        std::cmp::Ordering::Greater => WyVerdict::Greater,
    };
    Ok(WyComparison { s, bound, verdict })
}

/// Number of odd `d` with `3 < d < bound` and `d^2 - d - 1` prime.
pub fn bunyakovsky_census(bound: u64) -> u64 {
    if bound <= 5 {
        return 0;
    }
    (5..bound)
        .into_par_iter()
        .filter(|&d| d % 2 == 1 && is_prime(d * d - d - 1))
        .count() as u64
}
