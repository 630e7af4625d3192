use thiserror::Error;

use crate::dickson::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    DegreeZero,

    #[error("field order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: u128, cap: u64 },

    #[error("element code {code} is out of range for a field of order {order}")]
    InvalidCode { code: u64, order: u32 },

    #[error("zero has no multiplicative inverse")]
    DivisionByZero,

    #[error("{s} does not divide the extension degree {m}")]
    NotADivisor { s: u32, m: u32 },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("invalid Dickson pair: {0}")]
    InvalidPair(Violation),

    #[error("zero lies in no coset of the multiplicative group")]
    ZeroHasNoCoset,

    #[error("element code {code} does not generate the multiplicative group")]
    InvalidGenerator { code: u32 },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}
