//! D-numbers `D_𝕂(k_1, …, k_n) = dim 𝕂[x]/(x_i^{k_i}, Σ x_i)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::fp_rank::rank_of_rows;
use crate::exact::poly::cyclotomic_quotient_int;
use crate::guard::check_size;
use crate::primes::require_prime;

/// A prime together with exponents `k_1, …, k_n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DNumberQuery {
    pub p: u64,
    pub k: Vec<u64>,
}

impl DNumberQuery {
    pub fn new(p: u64, k: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if k.is_empty() {
            return Err(Error::InvalidInput("need at least one k_i".into()));
        }
        if k.contains(&0) {
            return Err(Error::InvalidInput("k_i must be positive".into()));
        }
        Ok(DNumberQuery { p, k })
    }

    /// Whether the folded-coefficient formula applies:
    /// every `k_i ≤ p` and `Σ k_i - n` even.
    pub fn is_admissible(&self) -> bool {
        self.check_hypotheses().is_ok()
    }

    fn check_hypotheses(&self) -> Result<()> {
        if let Some(big) = self.k.iter().find(|&&v| v > self.p) {
            return Err(Error::KExceedsP(format!("k_i = {big} > p = {}", self.p)));
        }
        let excess: u64 = self.k.iter().sum::<u64>() - self.k.len() as u64;
        if excess % 2 == 1 {
            return Err(Error::ParityViolation(format!(
                "Σk_i - n = {excess} is odd, so γ is not an integer"
            )));
        }
        Ok(())
    }
}

/// Han–Monsky: with `∏ (1 - x^{k_i})/(1 - x) = Σ c_i x^i` and
/// `γ = (Σ k_i - n)/2`, `D = Σ_λ c_{γ - pλ}`.
pub fn d_number_hm(q: &DNumberQuery) -> Result<u64> {
    q.check_hypotheses()?;
    let k: Vec<usize> = q.k.iter().map(|&v| v as usize).collect();
    let c = cyclotomic_quotient_int(&k);
    let gamma = ((q.k.iter().sum::<u64>() - q.k.len() as u64) / 2) as usize;
    let p = q.p as usize;
    let mut total = BigInt::from(0);
    // indices γ - pλ inside [0, deg]: start from γ mod p and step by p
    let mut i = gamma % p;
    while i < c.len() {
        total += &c[i];
        i += p;
    }
    total.to_u64().ok_or_else(|| Error::Internal(format!("D-number overflow: {total}")))
}

/// Brute force: `∏ k_i - rank` of multiplication by `Σ x_i` on the monomial
/// basis of `𝔽_p[x]/(x_i^{k_i})`.
pub fn d_number_oracle(q: &DNumberQuery) -> Result<u64> {
    let dim = q.k.iter().try_fold(1u128, |acc, &v| acc.checked_mul(v as u128));
    let dim = dim.unwrap_or(u128::MAX);
    check_size("D-number oracle", dim)?;
    let dim = dim as usize;
    let k: Vec<usize> = q.k.iter().map(|&v| v as usize).collect();
    let mut strides = vec![1usize; k.len()];
    for i in (0..k.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * k[i + 1];
    }
    let rows = (0..dim)
        .map(|m| {
            let mut row: Vec<(u32, u64)> = k
                .iter()
                .zip(&strides)
                .filter(|&(&ki, &st)| m / st % ki + 1 < ki)
                .map(|(_, &st)| ((m + st) as u32, 1))
                .collect();
            row.sort_unstable();
            row
        })
        .collect();
    let rank = rank_of_rows(q.p, dim, rows);
    Ok((dim - rank) as u64)
}

/// Uses the closed formula when its hypotheses hold and the representation
/// ring otherwise.
pub fn d_number(q: &DNumberQuery) -> Result<u64> {
    if q.is_admissible() {
        d_number_hm(q)
    } else {
        crate::repring::d_number_repring(q.p, &q.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, k: &[u64]) -> DNumberQuery {
        DNumberQuery::new(p, k.to_vec()).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(d_number_hm(&q(3, &[2, 2, 3])).unwrap(), 4);
        assert_eq!(d_number_hm(&q(5, &[2, 2])).unwrap(), 2);
        assert!(matches!(d_number_hm(&q(3, &[2, 2, 2])), Err(Error::ParityViolation(_))));
        assert!(matches!(d_number_hm(&q(3, &[5, 1])), Err(Error::KExceedsP(_))));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(d_number_oracle(&q(3, &[2, 2, 3])).unwrap(), 4);
        assert_eq!(d_number_oracle(&q(5, &[1, 4])).unwrap(), 1);
        assert_eq!(d_number_oracle(&q(3, &[3, 3])).unwrap(), 3);
    }

    #[test]
    fn validation() {
        assert!(DNumberQuery::new(4, vec![2]).is_err());
        assert!(DNumberQuery::new(5, vec![]).is_err());
        assert!(DNumberQuery::new(5, vec![0, 2]).is_err());
    }

    #[test]
    fn dispatcher_falls_back_to_the_ring() {
        assert_eq!(d_number(&q(3, &[2, 2, 2])).unwrap(), d_number_oracle(&q(3, &[2, 2, 2])).unwrap());
    }
}
