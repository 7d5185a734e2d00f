use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Element of ℚ(z), kept as `num/den` with `gcd = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("rational function with zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Polynomial::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let l = Rational::one() / den.leading();
        RationalFunction { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self::poly(Polynomial::x())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// A "size" used for pivot choice: degree of the denominator.
    pub fn complexity(&self) -> usize {
        self.den.degree().unwrap_or(0) + self.num.degree().unwrap_or(0)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::SingularSystem);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// Multiplication by a rational constant.
    pub fn scale_const(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num.fmt_var("z"))
        } else {
            write!(f, "({})/({})", self.num.fmt_var("z"), self.den.fmt_var("z"))
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn field_operations_normalize() {
        let one_minus_z = RationalFunction::poly(Polynomial::from_ints(&[1, -1]));
        let inv = one_minus_z.inv().unwrap();
        assert_eq!(&inv * &one_minus_z, RationalFunction::one());
        let a = RationalFunction::new(
            Polynomial::from_ints(&[-1, 0, 1]),
            Polynomial::from_ints(&[2, 2]),
        )
        .unwrap();
        assert_eq!(a.numer(), &Polynomial::from_ints(&[-1, 1]).scale(&crate::exact::rational::rat(1, 2)));
        assert_eq!(a.denom(), &Polynomial::one());
        assert_eq!(&a - &a, RationalFunction::zero());
        assert!(RationalFunction::zero().inv().is_err());
        assert_eq!(
            (&RationalFunction::constant(int(6)) / &RationalFunction::constant(int(3))).unwrap(),
            RationalFunction::constant(int(2))
        );
    }
}
