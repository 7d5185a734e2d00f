use std::fmt;

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A power series given as `P(z)/Q(z)` with `gcd(P, Q) = 1` and `Q(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    num: Polynomial,
    den: Polynomial,
}

impl RationalSeries {
    /// Reduces `num/den` and rescales so the denominator has constant term 1.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        Self::from_function(&RationalFunction::new(num, den)?)
    }

    pub fn from_function(f: &RationalFunction) -> Result<Self> {
        let c0 = f.denom().coeff(0);
        if c0.is_zero() {
            return Err(Error::InvalidInput(format!("{f} has a pole at z = 0")));
        }
        let s = Rational::one() / c0;
        Ok(RationalSeries { num: f.numer().scale(&s), den: f.denom().scale(&s) })
    }

    pub fn to_function(&self) -> RationalFunction {
        RationalFunction::new(self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// The first `n` Taylor coefficients.
    pub fn coefficients(&self, n: usize) -> Vec<Rational> {
        // Q(0) = 1, so c_m = P_m - Σ_{j≥1} Q_j c_{m-j}
        let q = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for m in 0..n {
            let mut c = self.num.coeff(m);
            for (j, qj) in q.iter().enumerate().skip(1).take(m) {
                if !qj.is_zero() {
                    c -= qj * &out[m - j];
                }
            }
            out.push(c);
        }
        out
    }

    /// Weights `a_i` with `[z^m] = Σ a_i δ_i^m`, for a denominator that is
    /// exactly `∏ (1 - δ_i z)` over the supplied reciprocal roots.
    pub fn partial_fractions(&self, roots: &[Rational]) -> Result<Vec<(Rational, Rational)>> {
        if roots.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInput("reciprocal roots must be nonzero".into()));
        }
        for (i, a) in roots.iter().enumerate() {
            if roots[..i].contains(a) {
                return Err(Error::InvalidInput(format!("repeated root {a}")));
            }
        }
        let mut rest = self.den.clone();
        for d in roots {
            rest = rest
                .div_exact(&Polynomial::one_minus(d.clone()))
                .ok_or(Error::DenominatorDoesNotSplit)?;
        }
        if rest != Polynomial::one() {
            return Err(Error::DenominatorDoesNotSplit);
        }
        if self.num.degree().is_some_and(|dp| dp >= roots.len()) {
            return Err(Error::Hypothesis(
                "numerator degree must be below denominator degree".into(),
            ));
        }
        Ok(roots
            .iter()
            .map(|di| {
                let x = Rational::one() / di;
                let mut w = self.num.eval(&x);
                for dj in roots.iter().filter(|dj| *dj != di) {
                    w /= Rational::one() - dj * &x;
                }
                (di.clone(), w)
            })
            .collect())
    }

    /// Weight of a single simple pole `1/δ`: the `a` in `[z^m] = a δ^m + (other poles)`.
    pub fn pole_weight(&self, delta: &Rational) -> Result<Rational> {
        if delta.is_zero() {
            return Err(Error::InvalidInput("reciprocal root must be nonzero".into()));
        }
        let factor = Polynomial::one_minus(delta.clone());
        let rest = self.den.div_exact(&factor).ok_or(Error::DenominatorDoesNotSplit)?;
        let x = Rational::one() / delta;
        let r = rest.eval(&x);
        if r.is_zero() {
            return Err(Error::Hypothesis(format!("pole at 1/{delta} is not simple")));
        }
        Ok(self.num.eval(&x) / r)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num.fmt_var("z"))
        } else {
            write!(f, "({})/({})", self.num.fmt_var("z"), self.den.fmt_var("z"))
        }
    }
}

/// Recovers `P` from the leading coefficients of `P/Q`, then checks every
/// supplied coefficient. At least two coefficients beyond `deg Q` are needed.
pub fn fit_rational_series(coeffs: &[Rational], den: &Polynomial) -> Result<RationalSeries> {
    let dq = den
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero denominator".into()))?;
    if den.coeff(0).is_zero() {
        return Err(Error::InvalidInput("denominator vanishes at z = 0".into()));
    }
    if coeffs.len() < dq + 2 {
        return Err(Error::InvalidInput(format!(
            "need at least {} coefficients to fit and verify, got {}",
            dq + 2,
            coeffs.len()
        )));
    }
    let a = Polynomial::from_coeffs(coeffs.to_vec());
    let num = (den * &a).truncate(dq);
    let fitted = RationalSeries::new(num, den.clone())?;
    let expanded = fitted.coefficients(coeffs.len());
    if let Some(m) = (0..coeffs.len()).find(|&m| expanded[m] != coeffs[m]) {
        return Err(Error::InconsistentSequence(format!(
            "coefficient {m} is {} but the fit predicts {}",
            coeffs[m], expanded[m]
        )));
    }
    Ok(fitted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn fit_geometric() {
        let ones = vec![int(1); 4];
        let s = fit_rational_series(&ones, &p(&[1, -1])).unwrap();
        assert_eq!(s, RationalSeries::new(p(&[1]), p(&[1, -1])).unwrap());
        let pow2: Vec<_> = [1, 2, 4, 8].iter().map(|&v| int(v)).collect();
        assert!(matches!(
            fit_rational_series(&pow2, &p(&[1, -1])),
            Err(Error::InconsistentSequence(_))
        ));
        assert!(fit_rational_series(&ones[..2], &p(&[1, -1])).is_err());
    }

    #[test]
    fn cubic_partial_fractions() {
        let s = RationalSeries::new(p(&[-1, 110]), &p(&[-1, 125]) * &p(&[1, -1])).unwrap();
        let w = s.partial_fractions(&[int(125), int(1)]).unwrap();
        assert_eq!(w, vec![(int(125), rat(15, 124)), (int(1), rat(109, 124))]);
        let c = s.coefficients(3);
        assert_eq!(c, vec![int(1), int(16), int(1891)]);
    }

    #[test]
    fn irrational_poles_do_not_split() {
        let s = RationalSeries::new(p(&[-1, 25, 33]), &p(&[1, 0, -2]) * &p(&[-1, 27])).unwrap();
        assert_eq!(s.partial_fractions(&[int(27)]), Err(Error::DenominatorDoesNotSplit));
        assert_eq!(s.pole_weight(&int(27)).unwrap(), rat(21, 727));
        assert_eq!(s.pole_weight(&int(5)), Err(Error::DenominatorDoesNotSplit));
    }

    #[test]
    fn trivial_partial_fraction() {
        let s = RationalSeries::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(s.partial_fractions(&[int(1)]).unwrap(), vec![(int(1), int(1))]);
    }
}
