use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::{limit_fs, limit_hk, limit_phi};
use crate::error::{Error, Result};
use crate::exact::rational::big;
use crate::exact::Rational;
use crate::phi::{checked_pow, ColengthProfile, DiagonalHypersurface};

/// Distance between φ_{f,p} and φ_f on the grid `a/p^e` for one prime.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub p: u64,
    /// `max_a |φ_{f,p}(a/q) - φ_f(a/q)|` with `q = p^e`
    pub sup_error: Rational,
    /// `q · sup_error`
    pub scaled_error: Rational,
    /// `q · φ_{f,p}(1/q)`, compared against the limit HK multiplicity
    pub quotient_at_0: Rational,
    /// `q · (1 - φ_{f,p}(1 - 1/q))`, compared against the limit F-signature
    pub quotient_at_1: Rational,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub level: u32,
    pub rows: Vec<ConvergenceRow>,
    pub limit_hk: Rational,
    pub limit_fs: Rational,
    /// `d_1⋯d_n`, the bound used for `scaled_error`
    pub lipschitz_bound: BigInt,
}

impl ConvergenceReport {
    pub fn sup_strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].sup_error < w[0].sup_error)
    }

    pub fn scaled_error_bounded(&self) -> bool {
        let bound = big(self.lipschitz_bound.clone());
        self.rows.iter().all(|r| r.scaled_error <= bound)
    }

    fn approaches(&self, pick: impl Fn(&ConvergenceRow) -> &Rational, target: &Rational) -> bool {
        let gaps: Vec<Rational> = self.rows.iter().map(|r| (pick(r) - target).abs()).collect();
        gaps.windows(2).all(|w| w[1] <= w[0])
    }

    /// Distance of the quotient at 0 to the limit HK never grows.
    pub fn hk_monotone(&self) -> bool {
        self.approaches(|r| &r.quotient_at_0, &self.limit_hk)
    }

    /// Distance of the quotient at 1 to the limit F-signature never grows.
    pub fn fs_monotone(&self) -> bool {
        self.approaches(|r| &r.quotient_at_1, &self.limit_fs)
    }

    /// All four trend checks hold on the observed primes.
    pub fn verdict(&self) -> bool {
        self.sup_strictly_decreasing()
            && self.scaled_error_bounded()
            && self.hk_monotone()
            && self.fs_monotone()
    }
}

/// Compares φ_{f,p} with its limit on the grid `a/p^e` for each prime, in
/// the given order.
pub fn convergence_report(
    f: &DiagonalHypersurface,
    primes: &[u64],
    e: u32,
) -> Result<ConvergenceReport> {
    if e == 0 {
        return Err(Error::InvalidInput("grid level e must be at least 1".into()));
    }
    let limit = limit_phi(f);
    let rows = primes
        .par_iter()
        .map(|&p| {
            let profile = ColengthProfile::new(f, p, e)?;
            let q = checked_pow(p, e)?;
            let mut sup = Rational::from_integer(0.into());
            for a in 0..=q {
                let t = Rational::new(a.into(), q.into());
                let gap = (profile.phi(a) - limit.eval(&t)?).abs();
                if gap > sup {
                    sup = gap;
                }
            }
            let qr = big(q);
            Ok(ConvergenceRow {
                p,
                scaled_error: &sup * &qr,
                sup_error: sup,
                quotient_at_0: profile.phi(1) * &qr,
                quotient_at_1: (Rational::one() - profile.phi(q - 1)) * &qr,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        level: e,
        rows,
        limit_hk: limit_hk(f),
        limit_fs: limit_fs(f),
        lipschitz_bound: f.degree_product(),
    })
}
