//! Euler polynomials, Bernoulli and Euler numbers, zigzag numbers and the
//! closed form of the limit φ for the Fermat quadric.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::piecewise::PiecewisePolynomial;
use crate::exact::rational::{big, binomial, factorial, pow_rat, sign};
use crate::exact::{rat, Polynomial, Rational};

/// `E_k(t)` from `2e^{xt}/(e^x+1) = Σ E_k(t) x^k/k!`, via
/// `E_k(t) = t^k - ½ Σ_{j<k} C(k,j) E_j(t)`.
pub fn euler_polynomials(max_k: usize) -> Vec<Polynomial> {
    let half = rat(1, 2);
    let mut out: Vec<Polynomial> = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        let mut acc = Polynomial::monomial(Rational::one(), k);
        for (j, e) in out.iter().enumerate() {
            let c = big(binomial(k as u64, j as u64)) * &half;
            acc = &acc - &e.scale(&c);
        }
        out.push(acc);
    }
    out
}

pub fn euler_polynomial(k: usize) -> Polynomial {
    euler_polynomials(k).pop().expect("non-empty")
}

/// Euler numbers `E_k = 2^k E_k(1/2)`: 1, 0, -1, 0, 5, 0, -61, …
pub fn euler_number(k: usize) -> Rational {
    pow_rat(&Rational::from_integer(2.into()), k as u32) * euler_polynomial(k).eval(&rat(1, 2))
}

/// Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli_numbers(max_k: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(max_k + 1);
    for m in 0..=max_k {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let s: Rational = b
            .iter()
            .enumerate()
            .map(|(j, bj)| big(binomial(m as u64 + 1, j as u64)) * bj)
            .sum();
        b.push(-s / big(m as u64 + 1));
    }
    b
}

/// Zigzag numbers `A_0..=A_max` (up/down permutations) by the Seidel
/// boustrophedon triangle.
pub fn zigzag_numbers(max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for n in 1..=max {
        let mut next = Vec::with_capacity(n + 1);
        next.push(BigInt::zero());
        for k in 1..=n {
            let v = &next[k - 1] + &row[n - k];
            next.push(v);
        }
        out.push(next[n].clone());
        row = next;
    }
    out
}

/// `c_n`, the coefficient of `z^{n-1}` in `sec z + tan z`, as
/// `A_{n-1}/(n-1)!`. Requires `n ≥ 1`.
pub fn sec_tan_coefficient(n: usize) -> Rational {
    assert!(n >= 1, "sec_tan_coefficient needs n >= 1");
    let a = zigzag_numbers(n - 1).pop().expect("non-empty");
    Rational::new(a, factorial(n as u64 - 1))
}

/// First `order + 1` Taylor coefficients of `(1 + sin z)/cos z` by power
/// series division. Independent of the zigzag route.
pub fn sec_tan_series(order: usize) -> Vec<Rational> {
    let fact = |k: usize| big(factorial(k as u64));
    let cos: Vec<Rational> = (0..=order)
        .map(|k| if k % 2 == 0 { sign(k / 2) / fact(k) } else { Rational::zero() })
        .collect();
    let num: Vec<Rational> = (0..=order)
        .map(|k| match k {
            0 => Rational::one(),
            k if k % 2 == 1 => sign((k - 1) / 2) / fact(k),
            _ => Rational::zero(),
        })
        .collect();
    let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let s: Rational = (1..=k).map(|j| &cos[j] * &q[k - j]).sum();
        q.push(&num[k] - s);
    }
    q
}

/// `Σ_{j=0}^m (-1)^j C(m,j) (ℓ+j)^n`.
pub fn alternating_difference(m: u64, l: i64, n: u32) -> BigInt {
    (0..=m)
        .map(|j| {
            let term = binomial(m, j) * num_traits::pow(BigInt::from(l + j as i64), n as usize);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Closed form of the limit φ for `x_1^2 + ⋯ + x_n^2`: one Euler polynomial
/// on `[0,1]` for even `n`, two shifted halves glued at `1/2` for odd `n`.
pub fn quadric_limit_phi(n: usize) -> PiecewisePolynomial {
    assert!(n >= 2, "quadric needs n >= 2");
    let e = euler_polynomial(n);
    let coef = Rational::new(num_traits::pow(BigInt::from(2), n - 1), factorial(n as u64));
    let t = Polynomial::x();
    if n.is_multiple_of(2) {
        let c = sign(n / 2) * coef;
        return PiecewisePolynomial::single(&t + &e.scale(&c));
    }
    let c = sign((n - 1) / 2) * coef;
    let low = &t + &e.shift(&rat(1, 2)).scale(&c);
    let high = &t - &e.shift(&rat(-1, 2)).scale(&c);
    PiecewisePolynomial::new(vec![Rational::zero(), rat(1, 2), Rational::one()], vec![low, high])
        .expect("the two halves agree at 1/2")
}
