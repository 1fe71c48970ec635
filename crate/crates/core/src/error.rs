use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),

    #[error("characteristic {0} exceeds the supported bound 2^31")]
    CharacteristicTooLarge(u64),

    #[error("malformed subset {elements:?} of [{m}]: {reason}")]
    MalformedSubset {
        elements: Vec<u32>,
        m: u32,
        reason: &'static str,
    },

    #[error("rank {rank} out of range for {k}-subsets of [{m}]")]
    RankOutOfRange { rank: u64, k: u32, m: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("field mismatch: characteristic {left} vs {right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("needs {needed} bytes, memory budget is {budget} bytes")]
    MemoryBudget { needed: u128, budget: u128 },

    #[error("streaming rank requires a prime characteristic")]
    StreamingCharacteristicZero,

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
