//! Sequences in Λ = Γ_ℚ^ℕ: concrete truncations built from φ tables, their
//! symbolic counterparts built from shifting rules, and the solver turning
//! a closed system of rules into `r_n(u, v)` and an F-signature series.

mod rules;
mod solver;
mod symbolic;
mod truncated;

pub use rules::RuleFile;
pub use solver::{fss_from_r, fss_symbolic, r_solve, solve_linear, LinearForm, PairKey, RuleSystem};
pub use symbolic::{
    diagonal_shift_rule, rule_power, Generator, GeneratorTable, ShiftingRule, SymbolicSequence,
};
pub use truncated::{fss_numeric, l_sequence, TruncatedSequence};
