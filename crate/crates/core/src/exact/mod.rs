//! Exact arithmetic: rationals, polynomials, rational functions, rational
//! power series and sparse rank over 𝔽_p.

pub mod fp_rank;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use fp_rank::{dense_rank, fp_rank, SparseFpMatrix};
pub use poly::{cyclotomic_quotient, poly_product, Polynomial};
pub use ratfunc::RationalFunction;
pub use rational::{format_decimal, format_rational, int, parse_rational, rat, Rational};
pub use series::{fit_rational_series, RationalSeries};
