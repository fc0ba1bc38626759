//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VanlabError {
    #[error("not an odd prime: {0}")]
    NotOddPrime(u64),
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),
    #[error("not a unit: constant coefficient is zero")]
    NotUnit,
    #[error("norm image has support outside the subfield")]
    NotInSubfield,
    #[error("precision exhausted at mod p^{m} for p={p}, k={k}")]
    PrecisionExhausted { p: u64, k: u64, m: u32 },
    #[error("brute-force verification only supports p in {{3, 5, 7}}, got {0}")]
    UnsupportedPrime(u64),
    #[error("auxiliary root degenerated to 1 modulo q={0}")]
    DegenerateRoot(u64),
}
