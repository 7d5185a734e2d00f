//! Size guard for brute-force oracles.

use crate::error::{Error, Result};

/// Environment variable overriding [`DEFAULT_ORACLE_LIMIT`].
pub const ORACLE_LIMIT_VAR: &str = "FROBENIUS_ORACLE_LIMIT";

pub const DEFAULT_ORACLE_LIMIT: u128 = 1_000_000;

/// Current limit on the dimension of brute-force quotient rings.
pub fn oracle_limit() -> u128 {
    std::env::var(ORACLE_LIMIT_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

pub(crate) fn check_size(what: &str, size: u128) -> Result<()> {
    let limit = oracle_limit();
    if size > limit {
        return Err(Error::TooLarge { what: what.into(), size, limit });
    }
    Ok(())
}
