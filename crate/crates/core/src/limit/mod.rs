//! Limits as `p → ∞` of φ_{f,p} for diagonal `f`.
//!
//! Every quantity here is a signed sum over sign vectors `ε ∈ {±1}^n` of
//! powers of `ε_0 t + Σ ε_i/d_i - 2λ`, restricted to the non-negative
//! arguments. The inner sums only depend on `s = Σ ε_i/d_i`, so sign vectors
//! are first grouped by `s` with multiplicity `Σ ε_1⋯ε_n`.

mod convergence;
mod piecewise;
mod special;
#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::rational::{big, factorial, pow_rat};
use crate::exact::{Polynomial, Rational};
use crate::phi::DiagonalHypersurface;

pub use convergence::{convergence_report, ConvergenceReport, ConvergenceRow};
pub use piecewise::PiecewisePolynomial;
pub use special::{
    alternating_difference, bernoulli_numbers, euler_number, euler_polynomial, euler_polynomials,
    quadric_limit_phi, sec_tan_coefficient, sec_tan_series, zigzag_numbers,
};

/// One summand of `C_λ`: signs `ε_0..ε_n` and the shift `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTerm {
    pub signs: Vec<i8>,
    pub shift: u64,
}

impl EpsilonTerm {
    /// `ε_0 t + Σ ε_i/d_i - 2λ`
    pub fn argument(&self, degrees: &[u64], t: &Rational) -> Rational {
        let mut acc = if self.signs[0] > 0 { t.clone() } else { -t.clone() };
        for (&e, &d) in self.signs[1..].iter().zip(degrees) {
            acc += Rational::new(BigInt::from(e), BigInt::from(d));
        }
        acc - big(2 * self.shift)
    }

    /// `ε_0 ⋯ ε_n`
    pub fn sign(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).product()
    }

    /// All `2^{n+1}` terms for the given shift.
    pub fn all(n: usize, shift: u64) -> impl Iterator<Item = EpsilonTerm> {
        (0u64..1 << (n + 1)).map(move |mask| EpsilonTerm {
            signs: (0..=n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
            shift,
        })
    }
}

/// `s = Σ ε_i/d_i` grouped with signed multiplicity `Σ ε_1⋯ε_n`; zero
/// multiplicities are kept because the values still locate breakpoints.
fn sign_groups(f: &DiagonalHypersurface) -> BTreeMap<Rational, BigInt> {
    let mut groups = BTreeMap::from([(Rational::zero(), BigInt::one())]);
    for &d in f.degrees() {
        let step = Rational::new(BigInt::one(), BigInt::from(d));
        let mut next: BTreeMap<Rational, BigInt> = BTreeMap::new();
        for (s, m) in &groups {
            *next.entry(s + &step).or_default() += m;
            *next.entry(s - &step).or_default() -= m;
        }
        groups = next;
    }
    groups
}

/// Largest `λ` with a possibly non-zero `C_λ`: `⌊(1 + Σ 1/d_i)/2⌋`.
pub fn lambda_max(f: &DiagonalHypersurface) -> u64 {
    let bound = (Rational::one() + f.reciprocal_sum()) / big(2);
    bound.floor().to_integer().to_u64().expect("small")
}

/// `{±1/d_1 ± ⋯ ± 1/d_n ± 2λ} ∩ [0,1]` together with 0 and 1.
pub fn breakpoints(f: &DiagonalHypersurface) -> Vec<Rational> {
    let groups = sign_groups(f);
    let mut out: BTreeSet<Rational> = [Rational::zero(), Rational::one()].into();
    for lambda in 0..=lambda_max(f) + 1 {
        let shift = big(2 * lambda);
        for s in groups.keys() {
            for t in [s - &shift, &shift - s, s + &shift] {
                if t >= Rational::zero() && t <= Rational::one() {
                    out.insert(t);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// `(ε_0 t + c)^n` as a polynomial in `t`.
fn linear_power(eps0: i64, c: &Rational, n: usize) -> Polynomial {
    let lin = Polynomial::from_coeffs(vec![c.clone(), big(eps0)]);
    lin.pow(n as u32)
}

/// `C_λ` on the breakpoint partition of `f`.
pub fn c_lambda(f: &DiagonalHypersurface, lambda: u64) -> PiecewisePolynomial {
    let groups = sign_groups(f);
    let points = breakpoints(f);
    let n = f.n();
    let shift = big(2 * lambda);
    let two = big(2);
    let pieces = points
        .windows(2)
        .map(|w| {
            let mid = (&w[0] + &w[1]) / &two;
            let mut acc = Polynomial::zero();
            for (s, m) in groups.iter().filter(|(_, m)| !m.is_zero()) {
                let c = s - &shift;
                for eps0 in [1i64, -1] {
                    // the argument has no zero inside the open interval
                    if big(eps0) * &mid + &c > Rational::zero() {
                        let term = linear_power(eps0, &c, n).scale(&(big(m.clone()) * big(eps0)));
                        acc = &acc + &term;
                    }
                }
            }
            acc
        })
        .collect();
    PiecewisePolynomial::new(points, pieces).expect("C_λ is continuous")
}

/// `C_λ(t)` summed term by term over [`EpsilonTerm::all`]; the reference
/// for [`c_lambda`].
pub fn c_lambda_naive(f: &DiagonalHypersurface, lambda: u64, t: &Rational) -> Rational {
    let n = f.n();
    EpsilonTerm::all(n, lambda)
        .filter_map(|term| {
            let arg = term.argument(f.degrees(), t);
            (!arg.is_negative()).then(|| big(term.sign()) * pow_rat(&arg, n as u32))
        })
        .sum()
}

/// `(d_1⋯d_n)/(2^n n!) (C_0 + 2 Σ_{λ≥1} C_λ)`
pub fn limit_phi(f: &DiagonalHypersurface) -> PiecewisePolynomial {
    let n = f.n();
    let mut total = c_lambda(f, 0);
    for lambda in 1..=lambda_max(f) {
        let c = c_lambda(f, lambda).scale(&big(2));
        total = total.zip_with(&c, |a, b| a + b);
    }
    let pref = Rational::new(
        f.degree_product(),
        num_traits::pow(BigInt::from(2), n) * factorial(n as u64),
    );
    let phi = total.scale(&pref);
    PiecewisePolynomial::new(phi.breakpoints().to_vec(), phi.pieces().to_vec())
        .expect("φ_f is continuous")
}

/// The limit ψ_f = 1 - φ_f.
pub fn limit_psi(f: &DiagonalHypersurface) -> PiecewisePolynomial {
    limit_phi(f).complement()
}

/// `Σ_λ w_λ Σ_{ε, arg ≥ 0} ε_1⋯ε_n arg^{n-1}` with `arg = e0 + s - 2λ`,
/// summed over `e0 ∈ e0s`; `w_0 = 1`, `w_λ = 2` otherwise.
fn derivative_sum(f: &DiagonalHypersurface, e0s: &[i64]) -> Rational {
    let groups = sign_groups(f);
    let n = f.n() as u32;
    let mut acc = Rational::zero();
    for lambda in 0..=lambda_max(f) {
        let w = if lambda == 0 { big(1) } else { big(2) };
        let shift = big(2 * lambda);
        for (s, m) in &groups {
            for &e0 in e0s {
                let arg = big(e0) + s - &shift;
                if !arg.is_negative() {
                    acc += &w * big(m.clone()) * pow_rat(&arg, n - 1);
                }
            }
        }
    }
    acc
}

/// `lim_p e_HK = (d_1⋯d_n)/(2^{n-1}(n-1)!) (D_0 + 2 Σ_{λ≥1} D_λ)`
pub fn limit_hk(f: &DiagonalHypersurface) -> Rational {
    let n = f.n();
    let pref = Rational::new(
        f.degree_product(),
        num_traits::pow(BigInt::from(2), n - 1) * factorial(n as u64 - 1),
    );
    pref * derivative_sum(f, &[0])
}

/// `lim_p s = (d_1⋯d_n)/(2^n(n-1)!) (B_0 + 2 Σ_{λ≥1} B_λ)`
pub fn limit_fs(f: &DiagonalHypersurface) -> Rational {
    let n = f.n();
    let pref = Rational::new(
        f.degree_product(),
        num_traits::pow(BigInt::from(2), n) * factorial(n as u64 - 1),
    );
    pref * derivative_sum(f, &[1, -1])
}

/// `min(Σ 1/d_i, 1)`
pub fn lct(f: &DiagonalHypersurface) -> Rational {
    f.reciprocal_sum().min(Rational::one())
}

/// `(d_1⋯d_n)/(2^{n-1} n!) (LCT - t)^n`, the shape of ψ_f just left of the
/// log canonical threshold when `Σ 1/d_i ≤ 1`.
pub fn near_lct_form(f: &DiagonalHypersurface) -> Polynomial {
    let n = f.n();
    let pref = Rational::new(
        f.degree_product(),
        num_traits::pow(BigInt::from(2), n - 1) * factorial(n as u64),
    );
    let lin = Polynomial::from_coeffs(vec![lct(f), -Rational::one()]);
    lin.pow(n as u32).scale(&pref)
}
