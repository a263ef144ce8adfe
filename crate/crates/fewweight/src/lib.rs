//! Few-weight cyclic codes of length q^2 - 1 over small finite fields.
//!
//! The library builds F_{q^2} on top of F_q with explicit log/Zech tables,
//! evaluates the character sums that control the weight spectra of two code
//! families (a four-dimensional five-weight family and a three-dimensional
//! three-weight family), enumerates the codes themselves, and cross-checks
//! every closed-form prediction (weight distributions, complete weight
//! enumerators, dual parameters, family counts) by exhaustive computation.

pub mod analysis;
pub mod charsums;
pub mod cli;
pub mod codes;
pub mod fields;


/// Errors shared across the crate. The CLI maps these onto exit codes, so
/// variants distinguish "bad configuration" from "parameters outside the
/// family" from "size bound exceeded".
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field size q = {q} exceeds the configured bound {max} (raise it explicitly to proceed)")]
    BoundExceeded { q: u64, max: u64 },
    #[error("q = 2 is outside both code families")]
    BinaryField,
    #[error("exponents {0:?} are not admissible: {1}")]
    Inadmissible(Vec<i64>, String),
    #[error("check exponents {0} and {1} give the same minimal polynomial")]
    DuplicateCheckPolynomial(u64, u64),
    #[error("dual transform produced a non-integral count at weight {0} (inconsistent input)")]
    NonIntegralDual(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
