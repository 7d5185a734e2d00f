//! Rank of sparse matrices over a prime field.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Square sparse matrix over 𝔽_p, stored row-wise with sorted columns and
/// entries in `[1, p-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseFpMatrix {
    p: u64,
    dim: usize,
    rows: Vec<Vec<(u32, u64)>>,
}

impl SparseFpMatrix {
    pub fn zero(p: u64, dim: usize) -> Self {
        SparseFpMatrix { p, dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(p: u64, dim: usize) -> Self {
        let rows = (0..dim).map(|i| vec![(i as u32, 1)]).collect();
        SparseFpMatrix { p, dim, rows }
    }

    /// Builds from `(row, col, value)` triples. Values are reduced mod `p`;
    /// repeated positions are summed and zeros dropped.
    pub fn from_triples(
        p: u64,
        dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        if !(2..1 << 32).contains(&p) {
            return Err(Error::InvalidInput(format!("modulus {p} must be a prime below 2^32")));
        }
        let mut acc: Vec<BTreeMap<u32, u64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triples {
            if r >= dim || c >= dim {
                return Err(Error::InvalidInput(format!(
                    "entry ({r}, {c}) outside a {dim}x{dim} matrix"
                )));
            }
            let v = v.rem_euclid(p as i64) as u64;
            let slot = acc[r].entry(c as u32).or_insert(0);
            *slot = (*slot + v) % p;
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        Ok(SparseFpMatrix { p, dim, rows })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rows(&self) -> &[Vec<(u32, u64)>] {
        &self.rows
    }

    /// All nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c as usize, v)))
    }
}

/// Rank of `m` over 𝔽_p.
pub fn fp_rank(m: &SparseFpMatrix) -> usize {
    rank_of_rows(m.p, m.dim, m.rows.clone())
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Online elimination: rows are inserted sparsest first (a Markowitz-style
/// ordering that keeps fill-in low); each row is reduced against existing
/// pivots on its leading column until it either becomes a new pivot or
/// vanishes.
pub(crate) fn rank_of_rows(p: u64, ncols: usize, mut rows: Vec<Vec<(u32, u64)>>) -> usize {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(Vec::len);
    let mut pivot_of: Vec<u32> = vec![u32::MAX; ncols];
    let mut store: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut scratch = Vec::new();
    for mut row in rows {
        while let Some(&(c, v)) = row.first() {
            let pi = pivot_of[c as usize];
            if pi == u32::MAX {
                let inv = inv_mod(v, p);
                for e in row.iter_mut() {
                    e.1 = e.1 * inv % p;
                }
                pivot_of[c as usize] = store.len() as u32;
                store.push(row);
                break;
            }
            axpy(&mut scratch, &row, p - v, &store[pi as usize], p);
            std::mem::swap(&mut row, &mut scratch);
        }
    }
    store.len()
}

/// `out = a + s * b` over sorted sparse vectors.
fn axpy(out: &mut Vec<(u32, u64)>, a: &[(u32, u64)], s: u64, b: &[(u32, u64)], p: u64) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            out.push((cb, s * b[j].1 % p));
            j += 1;
        } else {
            let v = (a[i].1 + s * b[j].1) % p;
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
}

/// Plain dense Gaussian elimination, used as an independent check.
pub fn dense_rank(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col] % p, p);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| x % p * inv % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] % p != 0 {
                let f = row[col] % p;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x % p + p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_ranks() {
        assert_eq!(fp_rank(&SparseFpMatrix::zero(7, 5)), 0);
        assert_eq!(fp_rank(&SparseFpMatrix::identity(3, 4)), 4);
    }

    #[test]
    fn x_plus_y_on_truncated_plane() {
        // basis 1, x, y, xy of F_3[x,y]/(x^2, y^2); column j = image of basis j
        let m = SparseFpMatrix::from_triples(
            3,
            4,
            [(1, 0, 1), (2, 0, 1), (3, 1, 1), (3, 2, 1)],
        )
        .unwrap();
        assert_eq!(fp_rank(&m), 2);
    }

    #[test]
    fn entries_are_reduced() {
        let m = SparseFpMatrix::from_triples(5, 2, [(0, 0, 5), (1, 1, -1), (1, 1, 3)]).unwrap();
        assert_eq!(m.entries().collect::<Vec<_>>(), vec![(1, 1, 2)]);
        assert!(SparseFpMatrix::from_triples(5, 2, [(2, 0, 1)]).is_err());
    }
}
