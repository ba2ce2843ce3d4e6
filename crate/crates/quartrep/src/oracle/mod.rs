//! Brute-force engine: value sets, densities, sector counts, specializations, and certificate checks.

pub mod density;
pub mod hilbert;
pub mod sector;
pub mod values;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("box bound {0} exceeds the memory guard of 10^8 pairs")]
    TooManyPairs(u64),
    #[error("polynomial has non-integral coefficients")]
    NotIntegral,
    #[error("values may overflow 128-bit arithmetic")]
    Overflow,
    #[error("{0}")]
    Invalid(String),
}
