use thiserror::Error;

/// Crate-wide error type. Variants are grouped roughly by module; all carry
/// enough context to reconstruct what was rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),

    #[error("group order {0} exceeds the supported limit of {1} elements")]
    OrderTooLarge(u128, usize),

    #[error("element has {got} coordinates but the group has rank {expected}")]
    WrongRank { expected: usize, got: usize },

    #[error("coordinate {value} is out of range for modulus {modulus}")]
    CoordinateRange { value: u32, modulus: u32 },

    #[error("element index {index} is out of range for a group of order {order}")]
    IndexRange { index: usize, order: usize },

    #[error("operation supports rank at most {max}, group has rank {got}")]
    RankUnsupported { max: usize, got: usize },

    #[error("operation requires equal moduli, group is {0}")]
    MixedModuli(String),

    #[error("modulus {0} is odd; this operation is defined for even moduli only")]
    OddModulus(u32),

    #[error("modulus {got} exceeds {limit}, the largest supported by this representation")]
    ModulusTooLarge { got: u32, limit: u32 },

    #[error("cannot pick {k} distinct elements from a set of size {size}")]
    Arity { k: usize, size: usize },

    #[error("input set must not be empty")]
    EmptySet,

    #[error("sequence has length {got}, this operation requires length {want}")]
    SequenceLength { want: usize, got: usize },

    #[error("hypothesis violated ({clause}): {detail}")]
    Hypothesis {
        clause: &'static str,
        detail: String,
    },

    #[error(
        "no nonempty zero-sum subsequence exists; length {len} < modulus {modulus} carries no guarantee"
    )]
    NoGuarantee { len: usize, modulus: u32 },

    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("search supports sizes up to {limit}, got {n}")]
    SearchLimit { n: usize, limit: usize },

    #[error("checkpoint does not match this search: {0}")]
    CheckpointMismatch(String),

    #[error("unknown statement id {id:?}; registered ids: {known}")]
    UnknownStatement { id: String, known: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for strict text parsers: error at a byte offset within the input.
    pub fn parse_at(offset: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            msg: msg.into(),
        }
    }
}
