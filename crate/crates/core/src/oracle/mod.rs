//! Brute-force ground truth over the group algebra `GF(p)[G]`.
//!
//! Everything here works directly from the definitions: Lie powers are
//! computed as explicit subspaces of the `|G|`-dimensional coordinate space
//! and the Lie dimension subgroups are read off as `G ∩ (1 + R^(m))`.

mod algebra;
mod fp;
mod powers;

use thiserror::Error;

pub use algebra::{AlgebraElement, GroupAlgebra};
pub use fp::{FpSubspace, PrimeField};
pub use powers::{
    dimension_subgroup_direct, dimension_subgroups_direct, is_lie_nilpotent, lower_lie_powers,
    upper_lie_powers, LiePowers, OracleLimits,
};

/// Default largest group order the oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("vector of length {found} where {expected} was expected")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("group of order {order} exceeds the oracle cap {cap}")]
    OracleCapExceeded { order: usize, cap: usize },
    #[error("Lie powers did not reach zero within {limit} steps")]
    NoConvergence { limit: usize },
    #[error("{0} is not a usable prime")]
    InvalidPrime(u32),
}

pub type Result<T> = std::result::Result<T, OracleError>;
