use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NonOddPrime(u64),

    #[error("order {order} is not a positive power of {prime}")]
    NotPPower { order: u64, prime: u64 },

    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {value} out of range for a factor of order {order}")]
    InvalidElement { value: u64, order: u64 },

    #[error("size {size} exceeds the limit of {limit}")]
    TooLarge { size: u64, limit: u64 },

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("the cokernel is infinite")]
    InfiniteCokernel,

    #[error("{0}")]
    DomainViolation(String),
}

impl Error {
    /// True for errors raised by a resource guard rather than by bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}
