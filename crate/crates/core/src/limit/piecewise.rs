use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_rational, Polynomial, Rational};

/// A continuous function on `[0, 1]` given by one polynomial per interval
/// `[b_i, b_{i+1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Rational>,
    pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    /// Checks the shape and that neighbouring pieces agree at their shared
    /// breakpoint.
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self> {
        if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::InvalidInput(format!(
                "{} breakpoints for {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return Err(Error::InvalidInput("breakpoints must run from 0 to 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("breakpoints must be strictly increasing".into()));
        }
        for (i, b) in breakpoints.iter().enumerate().skip(1).take(pieces.len() - 1) {
            let (l, r) = (pieces[i - 1].eval(b), pieces[i].eval(b));
            if l != r {
                return Err(Error::Internal(format!(
                    "discontinuity at {}: {} vs {}",
                    format_rational(b),
                    format_rational(&l),
                    format_rational(&r)
                )));
            }
        }
        Ok(PiecewisePolynomial { breakpoints, pieces })
    }

    pub fn single(p: Polynomial) -> Self {
        PiecewisePolynomial {
            breakpoints: vec![Rational::zero(), Rational::one()],
            pieces: vec![p],
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    /// Pieces paired with their closed intervals.
    pub fn intervals(&self) -> impl Iterator<Item = (&Rational, &Rational, &Polynomial)> {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| (&w[0], &w[1], p))
    }

    fn check_domain(t: &Rational) -> Result<()> {
        if t < &Rational::zero() || t > &Rational::one() {
            return Err(Error::InvalidInput(format!(
                "t = {} lies outside [0, 1]",
                format_rational(t)
            )));
        }
        Ok(())
    }

    /// Index of the piece whose interval contains `t`; at an interior
    /// breakpoint the piece on the right.
    fn locate(&self, t: &Rational) -> usize {
        let k = self.breakpoints.partition_point(|b| b <= t);
        k.saturating_sub(1).min(self.pieces.len() - 1)
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        Self::check_domain(t)?;
        Ok(self.pieces[self.locate(t)].eval(t))
    }

    /// Left and right derivatives at `t`. The left one is `None` at 0 and
    /// the right one is `None` at 1.
    pub fn one_sided_derivatives(
        &self,
        t: &Rational,
    ) -> Result<(Option<Rational>, Option<Rational>)> {
        Self::check_domain(t)?;
        let right_idx = self.locate(t);
        let left_idx = match self.breakpoints.binary_search(t) {
            Ok(k) if k > 0 => Some(k - 1),
            Ok(_) => None,
            Err(_) => Some(right_idx),
        };
        let at_one = t.is_one();
        let left = left_idx.map(|i| self.pieces[i].derivative().eval(t));
        let right = (!at_one).then(|| self.pieces[right_idx].derivative().eval(t));
        Ok((left, right))
    }

    /// Same function on a finer partition containing `extra`.
    pub fn refine(&self, extra: &[Rational]) -> Self {
        let mut points: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(extra.iter().filter(|t| **t > Rational::zero() && **t < Rational::one()))
            .cloned()
            .collect();
        points.sort();
        points.dedup();
        let pieces = points
            .windows(2)
            .map(|w| self.pieces[self.locate(&w[0])].clone())
            .collect();
        PiecewisePolynomial { breakpoints: points, pieces }
    }

    /// Merges neighbouring intervals that carry the same polynomial.
    pub fn simplify(&self) -> Self {
        let mut breakpoints = vec![self.breakpoints[0].clone()];
        let mut pieces: Vec<Polynomial> = Vec::new();
        for (_, hi, p) in self.intervals() {
            if pieces.last() == Some(p) {
                *breakpoints.last_mut().unwrap() = hi.clone();
            } else {
                pieces.push(p.clone());
                breakpoints.push(hi.clone());
            }
        }
        PiecewisePolynomial { breakpoints, pieces }
    }

    /// Equality as functions, ignoring redundant breakpoints.
    pub fn same_function(&self, other: &Self) -> bool {
        self.simplify() == other.simplify()
    }

    /// Applies `op` piecewise after aligning both partitions.
    pub fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Self {
        let a = self.refine(&other.breakpoints);
        let b = other.refine(&self.breakpoints);
        let pieces = a.pieces.iter().zip(&b.pieces).map(|(x, y)| op(x, y)).collect();
        PiecewisePolynomial { breakpoints: a.breakpoints, pieces }
    }

    pub fn map(&self, op: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(op).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// `1 - self`, which turns φ into ψ.
    pub fn complement(&self) -> Self {
        self.map(|p| &Polynomial::one() - p)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_zero)
    }

    /// Every breakpoint value lies in `[0, 1]`.
    pub fn values_in_unit_interval(&self) -> bool {
        self.breakpoints.iter().all(|b| {
            let v = self.pieces[self.locate(b)].eval(b);
            v >= Rational::zero() && v <= Rational::one()
        })
    }

    /// Left derivative is at least the right derivative at every interior
    /// breakpoint, and the second derivative is non-positive at nine evenly
    /// spaced samples of each interval.
    pub fn is_concave(&self) -> bool {
        let kinks_ok = self.breakpoints[1..self.breakpoints.len() - 1]
            .iter()
            .all(|b| match self.one_sided_derivatives(b) {
                Ok((Some(l), Some(r))) => l >= r,
                _ => false,
            });
        let curvature_ok = self.intervals().all(|(lo, hi, p)| {
            let second = p.derivative().derivative();
            (0..=8).all(|k| {
                let t = lo + (hi - lo) * Rational::new(k.into(), 8.into());
                second.eval(&t) <= Rational::zero()
            })
        });
        kinks_ok && curvature_ok
    }
}

impl fmt::Display for PiecewisePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (lo, hi, p)) in self.intervals().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "[{}, {}]: {}",
                format_rational(lo),
                format_rational(hi),
                p.fmt_var("t")
            )?;
        }
        Ok(())
    }
}
