use crate::structure::Convention;
use crate::Natural;

/// Errors for data-dependent failures. Contract violations that cannot be
/// reached through validated input (zero trajectory starts, out-of-range
/// bit values) are documented panics instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parity word must contain at least one bit")]
    EmptyWord,

    #[error("cannot parse parity word {input:?}: {reason}")]
    WordParse { input: String, reason: String },

    #[error("word uses the {found} convention, but this operation needs {expected} words")]
    WrongConvention {
        expected: Convention,
        found: Convention,
    },

    #[error("isoformy is defined for generators of equal parity; got {p1} and {p2}")]
    MixedParity { p1: Natural, p2: Natural },

    #[error("step index {k} outside [1, {max}]")]
    StepOutOfRange { k: u64, max: u64 },

    #[error("prolongation by {extension} columns needs {expected} rows, chromologue has {actual}")]
    RowCountMismatch {
        extension: u64,
        expected: u64,
        actual: u64,
    },

    #[error("order {order} is below the minimum {min} for this operation")]
    OrderTooSmall { order: u64, min: u64 },

    #[error("order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },

    #[error("type counting is defined for even orders; got {order}")]
    OddOrder { order: u64 },

    #[error("binomial index {k} exceeds {n}")]
    BinomialOutOfRange { n: u64, k: u64 },

    #[error("reversal point is defined for B-type rows; generator {generator} at order {order} is type A")]
    NotBType { generator: Natural, order: u64 },

    #[error("proportion must satisfy 0 < r < 1, got {r}")]
    RatioOutOfRange { r: String },

    #[error(
        "r_A must strictly decrease from order {prev_order} ({prev}) to order {order} ({next})"
    )]
    TrendViolation {
        prev_order: u64,
        order: u64,
        prev: String,
        next: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
