//! Shared inputs for the criterion benchmarks.

use frobenius_core::{DiagonalHypersurface, GammaElement, SparseFpMatrix};

pub const CHAR3_GH: &str = include_str!("../../core/fixtures/char3_gh.rules");
pub const CHAR7: &str = include_str!("../../core/fixtures/char7.rules");

pub fn fermat(d: u64, n: usize) -> DiagonalHypersurface {
    DiagonalHypersurface::fermat(d, n).expect("valid Fermat hypersurface")
}

/// A banded `size × size` matrix over F_p with a deterministic fill.
pub fn banded_matrix(p: u64, size: usize, band: usize) -> SparseFpMatrix {
    let triples = (0..size).flat_map(|i| (0..band).map(move |k| (i, (i + k * 7) % size, (i * 31 + k * 17) as i64)));
    SparseFpMatrix::from_triples(p, size, triples).expect("entries inside the matrix")
}

/// `λ_0 + λ_1 + … + λ_{p-1}` over F_p.
pub fn lambda_sum(p: u64) -> GammaElement {
    GammaElement::from_int_terms(p, &(0..p as usize).map(|i| (i, 1)).collect::<Vec<_>>())
}
