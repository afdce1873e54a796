//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported for invalid input or exceeded size guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("path is not highest")]
    NotHighest,
    #[error("path has negative weight; apply omega first")]
    NegativeWeight,
    #[error("invalid rigged configuration: {0}")]
    InvalidRiggedConfiguration(String),
    #[error("configuration is not admissible: 2*sum(j*m_j) = {twice_m} exceeds L = {size}")]
    NotAdmissible { twice_m: usize, size: usize },
    #[error("size guard exceeded: {what} = {value}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("iteration cap {cap} exceeded")]
    CapExceeded { cap: u64 },
    #[error("zero is not allowed in a rational LCM")]
    ZeroRational,
}

pub type Result<T> = std::result::Result<T, Error>;
