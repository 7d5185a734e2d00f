use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::exact::rational::{binomial, factorial, pow_rat};
use crate::exact::{int, rat};

fn hyp(d: &[u64]) -> DiagonalHypersurface {
    DiagonalHypersurface::new(d.to_vec()).unwrap()
}

fn poly(c: &[Rational]) -> Polynomial {
    Polynomial::from_coeffs(c.to_vec())
}

#[test]
fn breakpoints_examples() {
    assert_eq!(breakpoints(&hyp(&[2, 3])), vec![int(0), rat(1, 6), rat(5, 6), int(1)]);
    assert_eq!(breakpoints(&hyp(&[2, 2])), vec![int(0), int(1)]);
    assert_eq!(breakpoints(&hyp(&[2, 2, 2])), vec![int(0), rat(1, 2), int(1)]);
}

#[test]
fn c_lambda_x2y3() {
    let f = hyp(&[2, 3]);
    let c0 = c_lambda(&f, 0);
    assert_eq!(c0.pieces()[0], poly(&[int(0), rat(8, 3)]));
    assert!(c_lambda(&f, 1).is_zero());
}

#[test]
fn c_lambda_vanishes_past_bound() {
    for d in [vec![2, 2], vec![2, 3, 5], vec![2, 2, 2, 2], vec![3, 3, 3]] {
        let f = hyp(&d);
        assert!(c_lambda(&f, lambda_max(&f) + 1).is_zero(), "{f}");
    }
}

#[test]
fn c_lambda_matches_term_by_term_sum() {
    for d in [vec![2, 3], vec![2, 2, 2], vec![3, 4, 5], vec![2, 2, 2, 2], vec![2, 3, 7]] {
        let f = hyp(&d);
        for lambda in 0..=lambda_max(&f) + 1 {
            let c = c_lambda(&f, lambda);
            for k in 0..=24 {
                let t = rat(k, 24);
                assert_eq!(c.eval(&t).unwrap(), c_lambda_naive(&f, lambda, &t), "{f} λ={lambda} t={t}");
            }
        }
    }
}

#[test]
fn limit_phi_x2y3() {
    let phi = limit_phi(&hyp(&[2, 3]));
    assert_eq!(phi.breakpoints(), &[int(0), rat(1, 6), rat(5, 6), int(1)]);
    assert_eq!(
        phi.pieces(),
        &[
            poly(&[int(0), int(2)]),
            poly(&[rat(-1, 24), rat(5, 2), rat(-3, 2)]),
            poly(&[int(1)]),
        ]
    );
    assert_eq!(phi.to_string(), "[0, 1/6]: 2t\n[1/6, 5/6]: -1/24 + (5/2)t - (3/2)t^2\n[5/6, 1]: 1");
}

#[test]
fn limit_phi_quadrics() {
    let phi2 = limit_phi(&hyp(&[2, 2]));
    assert_eq!(phi2.pieces(), &[poly(&[int(0), int(2), int(-1)])]);

    let phi3 = limit_phi(&hyp(&[2, 2, 2]));
    assert_eq!(phi3.pieces()[0], poly(&[int(0), rat(3, 2), int(0), rat(-2, 3)]));
    // t + (2/3)((t-1)^3 - (3/4)(t-1))
    let u = poly(&[int(-1), int(1)]);
    let high = &Polynomial::x() + &(&u.pow(3) - &u.scale(&rat(3, 4))).scale(&rat(2, 3));
    assert_eq!(phi3.pieces()[1], high);
}

#[test]
fn limit_phi_endpoints_and_shape() {
    for d in [vec![2, 3], vec![2, 2], vec![2, 2, 2], vec![3, 3, 3, 3], vec![2, 3, 5], vec![2, 5, 7], vec![4, 4, 4]] {
        let f = hyp(&d);
        let phi = limit_phi(&f);
        assert_eq!(phi.eval(&int(0)).unwrap(), int(0), "{f}");
        assert_eq!(phi.eval(&int(1)).unwrap(), int(1), "{f}");
        assert!(phi.values_in_unit_interval(), "{f}");
        assert!(phi.is_concave(), "{f}");
    }
}

#[test]
fn one_sided_derivative_examples() {
    let phi = limit_phi(&hyp(&[2, 3]));
    assert_eq!(phi.one_sided_derivatives(&rat(1, 6)).unwrap(), (Some(int(2)), Some(int(2))));
    assert_eq!(phi.one_sided_derivatives(&int(0)).unwrap(), (None, Some(int(2))));
    assert_eq!(phi.one_sided_derivatives(&int(1)).unwrap(), (Some(int(0)), None));
    assert!(phi.one_sided_derivatives(&rat(3, 2)).is_err());
    assert!(phi.one_sided_derivatives(&rat(-1, 2)).is_err());
}

#[test]
fn limit_hk_and_fs_examples() {
    assert_eq!(limit_hk(&hyp(&[2, 3])), int(2));
    assert_eq!(limit_hk(&hyp(&[2, 2])), int(2));
    assert_eq!(limit_hk(&hyp(&[2, 2, 2])), rat(3, 2));
    assert_eq!(limit_fs(&hyp(&[3, 3, 3, 3])), rat(1, 8));
    assert_eq!(limit_fs(&hyp(&[2, 2, 2])), rat(1, 2));
    assert_eq!(limit_fs(&hyp(&[2, 3])), int(0));
}

#[test]
fn limits_agree_with_derivatives_of_limit_phi() {
    for d in [vec![2, 3], vec![2, 2], vec![2, 2, 2], vec![3, 3, 3, 3], vec![2, 3, 5], vec![2, 2, 3, 3], vec![5, 5, 5, 5, 5, 5]] {
        let f = hyp(&d);
        let phi = limit_phi(&f);
        let (_, right0) = phi.one_sided_derivatives(&int(0)).unwrap();
        let (left1, _) = phi.one_sided_derivatives(&int(1)).unwrap();
        assert_eq!(right0, Some(limit_hk(&f)), "{f}");
        assert_eq!(left1, Some(limit_fs(&f)), "{f}");
    }
}

#[test]
fn lct_examples() {
    assert_eq!(lct(&hyp(&[2, 3])), rat(5, 6));
    assert_eq!(lct(&hyp(&[2, 2, 2])), int(1));
    assert_eq!(lct(&hyp(&[3, 3, 3])), int(1));
}

#[test]
fn psi_left_of_lct_is_a_pure_power() {
    for d in [vec![2, 3], vec![3, 3, 3], vec![2, 3, 7], vec![2, 4, 4], vec![3, 4, 5], vec![2, 5]] {
        let f = hyp(&d);
        assert!(f.reciprocal_sum() <= Rational::one());
        let psi = limit_psi(&f);
        let c = lct(&f);
        let idx = psi.breakpoints().iter().position(|b| *b == c).unwrap();
        assert_eq!(psi.pieces()[idx - 1], near_lct_form(&f), "{f}");
    }
}

#[test]
fn euler_polynomial_examples() {
    assert_eq!(euler_polynomial(0), Polynomial::one());
    assert_eq!(euler_polynomial(2), poly(&[int(0), int(-1), int(1)]));
    assert_eq!(euler_polynomial(3).shift(&rat(1, 2)), poly(&[int(0), rat(-3, 4), int(0), int(1)]));
    let numbers: Vec<Rational> = (0..=8).map(euler_number).collect();
    assert_eq!(numbers, [1, 0, -1, 0, 5, 0, -61, 0, 1385].map(int).to_vec());
}

#[test]
fn euler_facts() {
    let es = euler_polynomials(14);
    let b = bernoulli_numbers(16);
    let half = rat(1, 2);
    for (k, e) in es.iter().enumerate() {
        assert_eq!(e.degree(), Some(k));
        assert!(e.leading().is_one());
        let lhs = &e.shift(&half) + &e.shift(&-half.clone());
        let rhs = poly(&[-half.clone(), int(1)]).pow(k as u32).scale(&int(2));
        assert_eq!(lhs, rhs, "k={k}");
        if k >= 1 {
            assert_eq!(e.derivative(), es[k - 1].scale(&int(k as i64)));
            assert_eq!(e.eval(&int(1)), -e.eval(&int(0)));
        }
        let e0 = -int(2) / int(k as i64 + 1) * (pow_rat(&int(2), k as u32 + 1) - int(1)) * &b[k + 1];
        assert_eq!(e.eval(&int(0)), e0, "k={k}");
        assert_eq!(e.eval(&half), euler_number(k) / pow_rat(&int(2), k as u32));
    }
}

#[test]
fn bernoulli_values() {
    let b = bernoulli_numbers(8);
    assert_eq!(b, vec![int(1), rat(-1, 2), rat(1, 6), int(0), rat(-1, 30), int(0), rat(1, 42), int(0), rat(-1, 30)]);
}

#[test]
fn euler_numbers_match_secant_series() {
    // sec z = Σ (-1)^k E_{2k} z^{2k}/(2k)!, the even part of sec + tan
    let series = sec_tan_series(12);
    for k in 0..=6 {
        let expected = crate::exact::rational::sign(k) * euler_number(2 * k)
            / Rational::from_integer(factorial(2 * k as u64));
        assert_eq!(series[2 * k], expected);
    }
}

#[test]
fn zigzag_and_sec_tan() {
    let z: Vec<BigInt> = zigzag_numbers(10);
    let expected = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521];
    assert_eq!(z, expected.map(BigInt::from).to_vec());
    assert_eq!(sec_tan_coefficient(1), int(1));
    assert_eq!(sec_tan_coefficient(2), int(1));
    assert_eq!(sec_tan_coefficient(3), rat(1, 2));
    assert_eq!(sec_tan_coefficient(4), rat(1, 3));
    let series = sec_tan_series(12);
    for n in 1..=13 {
        assert_eq!(sec_tan_coefficient(n), series[n - 1], "n={n}");
    }
}

#[test]
fn quadric_closed_form_examples() {
    assert_eq!(quadric_limit_phi(2).pieces(), &[poly(&[int(0), int(2), int(-1)])]);
    let q3 = quadric_limit_phi(3);
    assert_eq!(q3.pieces()[0], poly(&[int(0), rat(3, 2), int(0), rat(-2, 3)]));
    for n in 2..=10 {
        assert_eq!(quadric_limit_phi(n).eval(&int(1)).unwrap(), int(1), "n={n}");
    }
}

#[test]
fn quadric_closed_form_matches_limit_phi() {
    for n in 2..=8 {
        let f = DiagonalHypersurface::fermat(2, n).unwrap();
        assert!(limit_phi(&f).same_function(&quadric_limit_phi(n)), "n={n}");
    }
}

#[test]
fn gessel_monsky_quadrics() {
    for n in 2..=10 {
        let f = DiagonalHypersurface::fermat(2, n).unwrap();
        let c = sec_tan_coefficient(n);
        assert_eq!(limit_hk(&f), int(1) + &c, "n={n}");
        assert_eq!(limit_fs(&f), int(1) - &c, "n={n}");
    }
}

#[test]
fn watanabe_yoshida_limit() {
    for d in 2..=5u64 {
        let f = DiagonalHypersurface::fermat(d, d as usize + 1).unwrap();
        let expected = Rational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(2), d as usize - 1) * factorial(d - 1),
        );
        assert_eq!(limit_fs(&f), expected, "d={d}");
    }
}

#[test]
fn finite_difference_identity() {
    for m in 0..=8u64 {
        for l in -3..=3i64 {
            for n in 0..=m as u32 {
                let v = alternating_difference(m, l, n);
                if (n as u64) < m {
                    assert!(v.is_zero(), "m={m} l={l} n={n}");
                } else {
                    let s = if n % 2 == 0 { 1 } else { -1 };
                    assert_eq!(v, factorial(n as u64) * s, "m={m} l={l}");
                }
            }
        }
    }
    assert_eq!(binomial(4, 2), BigInt::from(6));
}

#[test]
fn piecewise_validation() {
    let p = Polynomial::x();
    assert!(PiecewisePolynomial::new(vec![int(0), int(1)], vec![p.clone()]).is_ok());
    assert!(PiecewisePolynomial::new(vec![int(0), rat(1, 2)], vec![p.clone()]).is_err());
    assert!(PiecewisePolynomial::new(vec![int(0), rat(1, 2), int(1)], vec![p.clone(), Polynomial::one()]).is_err());
    let ok = PiecewisePolynomial::new(vec![int(0), rat(1, 2), int(1)], vec![p.clone(), p.clone()]).unwrap();
    assert_eq!(ok.simplify(), PiecewisePolynomial::single(p));
}

#[test]
fn convergence_x2y3_small() {
    let f = hyp(&[2, 3]);
    let report = convergence_report(&f, &[7, 13, 31], 1).unwrap();
    assert!(report.sup_strictly_decreasing());
    assert!(report.scaled_error_bounded());
    assert!(report.hk_monotone());
    assert!(report.fs_monotone());
    assert!(convergence_report(&f, &[9], 1).is_err());
}

fn sign_sum(d: &[u64], t: &Rational) -> Rational {
    let n = d.len();
    (0u64..1 << n)
        .map(|mask| {
            let mut arg = t.clone();
            let mut sgn = 1i64;
            for (i, &di) in d.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    arg -= rat(1, di as i64);
                    sgn = -sgn;
                } else {
                    arg += rat(1, di as i64);
                }
            }
            int(sgn) * pow_rat(&arg, n as u32)
        })
        .sum()
}

proptest! {
    #[test]
    fn full_sign_sum_is_constant(
        d in proptest::collection::vec(1u64..12, 1..6),
        ts in proptest::collection::vec((-50i64..50, 1i64..20), 5),
    ) {
        let prod: u64 = d.iter().product();
        let n = d.len();
        let expected = Rational::new(
            num_traits::pow(BigInt::from(2), n) * factorial(n as u64),
            BigInt::from(prod),
        );
        for (a, b) in ts {
            prop_assert_eq!(sign_sum(&d, &rat(a, b)), expected.clone());
        }
    }
}
