//! Exact computation of Frobenius invariants of diagonal hypersurfaces
//! `x_1^{d_1} + ⋯ + x_n^{d_n}` over 𝔽_p.
//!
//! The crate evaluates normalized colength functions φ_{f,p} through the
//! Han–Monsky representation ring, derives Hilbert–Kunz and F-signature
//! values from them, builds the piecewise-polynomial limits as `p → ∞`,
//! and solves shifting-rule systems for closed-form F-signature series.

pub mod error;
pub mod exact;
pub mod fermat;
pub mod guard;
pub mod han_monsky;
pub mod limit;
pub mod phi;
pub mod primes;
pub mod repring;
pub mod sequence;

pub use error::{Error, Result};
pub use fermat::{ClosedFormFS, FermatQuery};
pub use exact::{Polynomial, Rational, RationalFunction, RationalSeries, SparseFpMatrix};
pub use limit::PiecewisePolynomial;
pub use phi::{DiagonalHypersurface, DyadicPoint, GenericPolynomial, PhiTable};
pub use repring::{gamma_mul, GammaElement};
pub use sequence::{RuleFile, ShiftingRule, SymbolicSequence, TruncatedSequence};
