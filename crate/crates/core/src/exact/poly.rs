use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals. `coeffs[i]` is the
/// coefficient of `x^i`; the last stored coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| int(v)).collect())
    }

    /// `1 - c x`
    pub fn one_minus(c: Rational) -> Self {
        Self::from_coeffs(vec![Rational::one(), -c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(c x)`
    pub fn scale_arg(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::from_coeffs(out)
    }

    /// `p(x + c)` via Horner on the shifted argument.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Self::from_coeffs(vec![c.clone(), Rational::one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&(Rational::one() / l))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            // monic remainders keep coefficient growth in check
            b = r.monic();
        }
        a.monic()
    }

    /// Formats with the given variable name, highest degree last:
    /// `1 + 2z - 3z^2`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else if abs.is_integer() {
                out.push_str(&format!("{abs}{mono}"));
            } else {
                out.push_str(&format!("({abs}){mono}"));
            }
        }
        out
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as integers; `None` if some coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Exact product of a list of polynomials; the empty product is 1.
pub fn poly_product(factors: &[Polynomial]) -> Polynomial {
    factors.iter().fold(Polynomial::one(), |acc, f| &acc * f)
}

/// `∏ (1 + x + ⋯ + x^{k_i - 1})`, computed with integer coefficients.
pub fn cyclotomic_quotient(k: &[i64]) -> Result<Polynomial> {
    if let Some(bad) = k.iter().find(|&&v| v < 1) {
        return Err(Error::InvalidInput(format!("k_i must be positive, got {bad}")));
    }
    Ok(Polynomial::from_coeffs(
        cyclotomic_quotient_int(&k.iter().map(|&v| v as usize).collect::<Vec<_>>())
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    ))
}

/// Integer coefficients of `∏ (1 + ⋯ + x^{k_i - 1})` via running prefix sums.
pub(crate) fn cyclotomic_quotient_int(k: &[usize]) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for &ki in k {
        let len = c.len() + ki - 1;
        let mut next = vec![BigInt::zero(); len];
        // next[j] = Σ_{t = j-ki+1}^{j} c[t], sliding window
        let mut window = BigInt::zero();
        for (j, slot) in next.iter_mut().enumerate() {
            if j < c.len() {
                window += &c[j];
            }
            if j >= ki {
                window -= &c[j - ki];
            }
            *slot = window.clone();
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn product_examples() {
        let one_plus = Polynomial::from_ints(&[1, 1]);
        let one_minus = Polynomial::from_ints(&[1, -1]);
        assert_eq!(
            poly_product(&[one_plus.clone(), one_plus.clone()]),
            Polynomial::from_ints(&[1, 2, 1])
        );
        assert_eq!(poly_product(&[]), Polynomial::one());
        assert_eq!(poly_product(&[one_plus, one_minus]), Polynomial::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_quotient(&[2, 2, 3]).unwrap(), Polynomial::from_ints(&[1, 3, 4, 3, 1]));
        assert_eq!(cyclotomic_quotient(&[1, 1]).unwrap(), Polynomial::one());
        assert_eq!(cyclotomic_quotient(&[5]).unwrap(), Polynomial::from_ints(&[1, 1, 1, 1, 1]));
        assert!(cyclotomic_quotient(&[3, 0]).is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Polynomial::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = Polynomial::gcd(&a, &Polynomial::from_ints(&[2, 2]));
        assert_eq!(g, Polynomial::from_ints(&[1, 1]));
        assert!(Polynomial::gcd(&a, &Polynomial::from_ints(&[2, 1])).degree() == Some(0));
    }

    #[test]
    fn shift_and_eval() {
        let p = Polynomial::from_ints(&[0, -1, 1]);
        let s = p.shift(&rat(1, 2));
        assert_eq!(s, Polynomial::from_coeffs(vec![rat(-1, 4), int(0), int(1)]));
        assert_eq!(p.eval(&int(3)), int(6));
        assert_eq!(p.derivative(), Polynomial::from_ints(&[-1, 2]));
    }

    #[test]
    fn display() {
        let p = Polynomial::from_coeffs(vec![rat(-1, 24), rat(5, 2), rat(-3, 2)]);
        assert_eq!(p.fmt_var("t"), "-1/24 + (5/2)t - (3/2)t^2");
        assert_eq!(Polynomial::from_ints(&[1, -1]).fmt_var("z"), "1 - z");
    }
}
