use super::*;
use crate::exact::rational::{int, rat};

fn f(d: &[u64]) -> DiagonalHypersurface {
    DiagonalHypersurface::new(d.to_vec()).unwrap()
}

fn pt(p: u64, a: u64, e: u32) -> DyadicPoint {
    DyadicPoint::new(p, a, e).unwrap()
}

#[test]
fn phi_examples() {
    assert_eq!(phi_diagonal(&f(&[2, 2, 2]), &pt(3, 2, 1)).unwrap(), rat(22, 27));
    assert_eq!(psi(&f(&[2, 2, 2]), &pt(3, 2, 1)).unwrap(), rat(5, 27));
    for (d, p, e) in [(vec![2, 3], 5u64, 2u32), (vec![3, 3, 3], 7, 1), (vec![2, 5], 3, 3)] {
        let g = f(&d);
        let q = p.pow(e);
        assert_eq!(phi_diagonal(&g, &pt(p, q, e)).unwrap(), int(1));
        assert_eq!(phi_diagonal(&g, &pt(p, 0, e)).unwrap(), int(0));
        assert_eq!(psi(&g, &pt(p, 0, e)).unwrap(), int(1));
        assert_eq!(psi(&g, &pt(p, q, e)).unwrap(), int(0));
    }
}

#[test]
fn monomial_helper_matches_one_variable_ring() {
    for (d, p, e) in [(3u64, 7u64, 1u32), (2, 5, 2), (5, 3, 3)] {
        let q = p.pow(e);
        let class = GammaElement::cyclic_class(p, q, d);
        for a in 0..=q {
            let t = pt(p, a, e);
            let ring = class.alpha_trunc(a as usize) / big(q);
            assert_eq!(phi_monomial(d, &t), ring, "d={d} p={p} a={a}");
        }
    }
}

#[test]
fn hk_and_fs_examples() {
    assert_eq!(hk_value(&f(&[2, 2]), 3, 1).unwrap(), BigInt::from(5));
    assert_eq!(fs_value(&f(&[2, 2, 2]), 3, 1).unwrap(), BigInt::from(5));
    assert_eq!(fs_value(&f(&[3, 3, 3, 3]), 5, 1).unwrap(), BigInt::from(16));
    assert_eq!(fs_value(&f(&[3, 3, 3, 3]), 7, 1).unwrap(), BigInt::from(45));
    // regression: 27·φ(1/3) for the quadric three-fold
    let hk = hk_value(&f(&[2, 2, 2]), 3, 1).unwrap();
    assert_eq!(Rational::from_integer(hk.clone()), phi_diagonal(&f(&[2, 2, 2]), &pt(3, 1, 1)).unwrap() * int(27));
    let g = GenericPolynomial::from_diagonal(&f(&[2, 2, 2]));
    assert_eq!(BigInt::from(colength_generic(&g, 3, 1, 1).unwrap()), hk);
}

#[test]
fn generic_examples() {
    let g = GenericPolynomial::parse("x + y").unwrap();
    assert_eq!(phi_generic(&g, &pt(3, 1, 1)).unwrap(), rat(1, 3));
    let h = GenericPolynomial::parse("x^2 + y^2").unwrap();
    assert_eq!(colength_generic(&h, 3, 1, 1).unwrap(), 5);
    assert!(GenericPolynomial::parse("1 + x").is_err());
    assert!(GenericPolynomial::parse("x + ").is_err());
    let k = GenericPolynomial::parse("y^3 - x^4 + x^2*y^2").unwrap();
    assert_eq!(k.vars(), ["x", "y"]);
    assert_eq!(k.to_string(), "y^3 + x^2*y^2 - x^4");
    assert_eq!(GenericPolynomial::parse("2zw^2 - z").unwrap().to_string(), "-z + 2*w^2*z");
}

#[test]
fn generic_matches_diagonal_on_small_levels() {
    for (d, p, e) in [(vec![2, 3], 5u64, 2u32), (vec![2, 2, 2], 3, 2), (vec![3, 4], 3, 2)] {
        let df = f(&d);
        let g = GenericPolynomial::from_diagonal(&df);
        let table = ColengthProfile::new(&df, p, e).unwrap().table();
        let brute = phi_generic_table(&g, p, e).unwrap();
        assert_eq!(table, brute, "{df} p={p} e={e}");
    }
}

#[test]
fn size_guard() {
    let g = GenericPolynomial::parse("x^2 + y^2 + z^2").unwrap();
    assert!(matches!(colength_generic(&g, 101, 1, 1), Err(Error::TooLarge { .. })));
}

#[test]
fn fpt_brackets() {
    // x^d alone: φ = min(1, dt); use the two-variable x^2 + y^large proxy via the helper instead
    for (d, p, e) in [(3u64, 7u64, 2u32), (5, 3, 3)] {
        let q = p.pow(e);
        let a = (0..q).filter(|&a| phi_monomial(d, &pt(p, a, e)) < int(1)).max().unwrap();
        let lo = rat(a as i64, q as i64);
        let hi = rat(a as i64 + 1, q as i64);
        assert!(lo < rat(1, d as i64) && rat(1, d as i64) <= hi);
    }
    let (lo, hi) = fpt_bracket(&f(&[2, 3]), 7, 2).unwrap();
    assert_eq!(hi.a, lo.a + 1);
    assert!(psi(&f(&[2, 3]), &lo).unwrap() > int(0));
    assert_eq!(psi(&f(&[2, 3]), &hi).unwrap(), int(0));
    let (lo, hi) = fpt_bracket(&f(&[3, 3, 3]), 7, 1).unwrap();
    assert_eq!((lo.a, hi.a), (6, 7));
}

#[test]
fn restrict_examples() {
    let id = PhiTable::identity(5, 2).unwrap();
    assert_eq!(id.restrict(1, 0).unwrap(), id.coarsen(1).unwrap().affine(&rat(1, 5), &int(0)));
    for i in 0..5 {
        let expect = PhiTable::identity(5, 1).unwrap().affine(&rat(1, 5), &rat(i, 5));
        assert_eq!(id.restrict(1, i as u64).unwrap(), expect);
    }
    let phi = PhiTable::monomial(3, 7, 2).unwrap();
    let t = phi.restrict(1, 2).unwrap();
    let lhs = t.affine(&int(7), &int(0));
    let rhs = PhiTable::monomial(3, 7, 1).unwrap().affine(&int(1), &int(6));
    assert_eq!(lhs, rhs);
    assert!(phi.restrict(1, 7).is_err());
    assert!(phi.restrict(3, 0).is_err());
}

#[test]
fn validation() {
    assert!(DyadicPoint::new(4, 1, 1).is_err());
    assert!(DyadicPoint::new(3, 10, 2).is_err());
    assert!(DiagonalHypersurface::new(vec![2]).is_err());
    assert!(DiagonalHypersurface::new(vec![1, 2]).is_err());
    assert_eq!(DiagonalHypersurface::parse("3, 2").unwrap().degrees(), [2, 3]);
    assert!(hk_value(&f(&[2, 3]), 5, 0).is_err());
}
