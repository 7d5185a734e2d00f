use proptest::prelude::*;

use super::*;
use crate::exact::fp_rank::dense_rank;
use crate::exact::rational::rat;

fn l(p: u64, terms: &[(usize, i64)]) -> GammaElement {
    GammaElement::from_int_terms(p, terms)
}

/// Jordan type of `Σ_i T_i` on `⊗ 𝕂[T]/(T^{m_i})` over 𝔽_p, read off from
/// ranks of its powers and returned as a λ-combination.
fn jordan_oracle(p: u64, sizes: &[usize]) -> GammaElement {
    let dim: usize = sizes.iter().product();
    let mut strides = vec![1; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let mut n = vec![vec![0u64; dim]; dim];
    for col in 0..dim {
        for (i, &m) in sizes.iter().enumerate() {
            let digit = col / strides[i] % m;
            if digit + 1 < m {
                n[col + strides[i]][col] += 1;
            }
        }
    }
    let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| {
        let mut c = vec![vec![0u64; dim]; dim];
        for i in 0..dim {
            for k in 0..dim {
                if a[i][k] == 0 {
                    continue;
                }
                for j in 0..dim {
                    c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
                }
            }
        }
        c
    };
    let mut ranks = vec![dim];
    let mut power = n.clone();
    while *ranks.last().unwrap() > 0 {
        ranks.push(dense_rank(p, power.clone()));
        power = mul(&power, &n);
    }
    ranks.push(0);
    let mut b = BTreeMap::new();
    for k in 1..ranks.len() - 1 {
        let exact = (ranks[k - 1] - ranks[k]) - (ranks[k] - ranks[k + 1]);
        if exact > 0 {
            b.insert(k, int(exact as i64));
        }
    }
    GammaElement::from_delta_basis(p, &b)
}

#[test]
fn spec_products() {
    assert_eq!(&l(3, &[(1, 1)]) * &l(3, &[(1, 1)]), l(3, &[(0, 1), (1, 1), (2, 1)]));
    assert_eq!(&l(3, &[(1, 1)]) * &l(3, &[(2, 1)]), l(3, &[(1, 1)]));
    assert_eq!(&l(3, &[(2, 1)]) * &l(3, &[(5, 1)]), l(3, &[(3, 1)]));
}

#[test]
fn lambda_two_cubed_at_seven_matches_jordan_oracle() {
    let cube = GammaElement::lambda(7, 2).pow(3);
    assert_eq!(
        cube,
        l(7, &[(0, 1), (1, 3), (2, 5), (3, 4), (4, 3), (5, 2), (6, 1)])
    );
    // λ_2 = δ_3 - δ_2, expand the cube by bilinearity against the oracle
    let mut oracle = GammaElement::zero(7);
    for mask in 0..8u32 {
        let sizes: Vec<usize> = (0..3).map(|b| if mask >> b & 1 == 1 { 2 } else { 3 }).collect();
        let s = int(if mask.count_ones() % 2 == 0 { 1 } else { -1 });
        oracle = &oracle + &jordan_oracle(7, &sizes).scale(&s);
    }
    assert_eq!(cube, oracle);
}

#[test]
fn delta_products_match_jordan_oracle() {
    for p in [2u64, 3, 5, 7] {
        for a in 1..=10usize {
            for b in 1..=10usize {
                let prod = &GammaElement::delta(p, a) * &GammaElement::delta(p, b);
                assert_eq!(prod, jordan_oracle(p, &[a, b]), "p={p} a={a} b={b}");
            }
        }
    }
    for (p, sizes) in [(3u64, [2usize, 4, 5]), (5, [3, 4, 6]), (2, [3, 3, 3]), (3, [5, 2, 7])] {
        let prod = sizes
            .iter()
            .fold(GammaElement::one(p), |acc, &m| &acc * &GammaElement::delta(p, m));
        assert_eq!(prod, jordan_oracle(p, &sizes), "p={p} {sizes:?}");
    }
}

#[test]
fn theta_and_alpha_examples() {
    assert_eq!(GammaElement::lambda(3, 0).theta(), GammaElement::lambda(3, 0));
    assert_eq!(GammaElement::lambda(3, 1).theta(), GammaElement::lambda(3, 5));
    assert_eq!(GammaElement::lambda(3, 2).theta(), GammaElement::lambda(3, 6));
    assert_eq!(l(5, &[(0, 1), (3, 2)]).alpha(), int(1));
    assert_eq!(GammaElement::zero(5).alpha(), int(0));
    for p in [3u64, 5, 7] {
        for i in 0..p as usize {
            for j in 0..p as usize {
                let a = (&GammaElement::lambda(p, i) * &GammaElement::lambda(p, j)).alpha();
                assert_eq!(a, int((i == j) as i64));
            }
        }
    }
}

#[test]
fn alpha_trunc_examples() {
    assert_eq!(GammaElement::delta(3, 5).alpha_trunc(2), int(2));
    assert_eq!(GammaElement::delta(3, 3).alpha_trunc(3), int(3));
    assert_eq!(l(3, &[(0, 5), (1, -3), (2, 1)]).alpha_trunc(1), int(5));
}

#[test]
fn delta_examples() {
    assert!(GammaElement::delta(3, 0).is_zero());
    assert_eq!(GammaElement::delta(3, 1), GammaElement::lambda(3, 0));
    assert_eq!(GammaElement::delta(3, 3), l(3, &[(0, 1), (1, -1), (2, 1)]));
    let d = |t: Rational| GammaElement::delta_fractional(3, &t).unwrap();
    assert_eq!(d(int(2)), l(3, &[(0, 1), (1, -1)]));
    let half = rat(1, 2);
    assert_eq!(
        d(rat(3, 2)),
        &GammaElement::delta(3, 1).scale(&half) + &GammaElement::delta(3, 2).scale(&half)
    );
    assert_eq!(
        d(rat(9, 2)),
        &GammaElement::delta(3, 4).scale(&half) + &GammaElement::delta(3, 5).scale(&half)
    );
    assert!(GammaElement::delta_fractional(3, &int(0)).is_err());
}

#[test]
fn cyclic_class_examples() {
    let c = GammaElement::cyclic_class(3, 9, 2);
    assert_eq!(c, &GammaElement::delta(3, 5) + &GammaElement::delta(3, 4));
    assert_eq!(GammaElement::cyclic_class(5, 11, 1), GammaElement::delta(5, 11));
    assert_eq!(GammaElement::cyclic_class(5, 4, 5), GammaElement::delta(5, 1).scale(&int(4)));
}

#[test]
fn d_number_examples() {
    assert_eq!(d_number_repring(3, &[2, 2, 3]).unwrap(), 4);
    assert_eq!(d_number_repring(11, &[6]).unwrap(), 1);
    assert_eq!(d_number_repring(3, &[2, 2]).unwrap(), 2);
}

#[test]
fn mixing_characteristics_fails() {
    let e = gamma_mul(&GammaElement::one(3), &GammaElement::one(5));
    assert_eq!(e, Err(Error::CharacteristicMismatch(3, 5)));
    assert!(GammaElement::one(3).try_add(&GammaElement::one(5)).is_err());
}

#[test]
fn render_is_readable() {
    assert_eq!(l(3, &[(0, 1), (1, -1), (3, 2)]).render(), "λ_0 - λ_1 + 2λ_3");
    assert_eq!(GammaElement::scalar_lambda(3, 2, rat(-1, 2)).render(), "-(1/2)λ_2");
}

fn element(p: u64, bound: usize) -> impl Strategy<Value = GammaElement> {
    prop::collection::vec((0..bound, -4i64..=4), 0..6)
        .prop_map(move |t| GammaElement::from_int_terms(p, &t))
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutative_associative((_p, u, v, w) in prime().prop_flat_map(|p| {
        let b = (p * p) as usize;
        (Just(p), element(p, b), element(p, b), element(p, b))
    })) {
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
    }

    #[test]
    fn theta_is_multiplicative((_p, u, v) in prime().prop_flat_map(|p| {
        let b = (p * p) as usize;
        (Just(p), element(p, b), element(p, b))
    })) {
        prop_assert_eq!((&u * &v).theta(), &u.theta() * &v.theta());
    }

    #[test]
    fn delta_round_trip((p, u) in prime().prop_flat_map(|p| (Just(p), element(p, 40)))) {
        prop_assert_eq!(GammaElement::from_delta_basis(p, &u.to_delta_basis()), u);
    }

    #[test]
    fn alpha_trunc_is_min_on_deltas(p in prime(), m in 1usize..30, a in 1usize..30) {
        prop_assert_eq!(GammaElement::delta(p, m).alpha_trunc(a), int(m.min(a) as i64));
    }
}

#[test]
fn lambda_power_coefficient_bound() {
    for p in [3u64, 5, 7] {
        for i in 0..p as usize {
            for r in 2..=5u32 {
                let pw = GammaElement::lambda(p, i).pow(r);
                let cap = int((p as i64).pow(r - 2));
                for (_, c) in pw.terms() {
                    assert!(*c >= int(0) && *c <= cap, "p={p} i={i} r={r}");
                }
            }
        }
    }
}
