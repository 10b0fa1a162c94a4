// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands carry different fractional precision ({left} vs {right} bits)")]
    FracBitsMismatch { left: u32, right: u32 },

    #[error("input must be strictly positive")]
    NonPositiveInput,

    #[error("malformed decimal string {0:?}")]
    MalformedInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("divisor interval contains zero")]
    IntervalContainsZero,

    /// A pivot vanished (or its interval straddles zero). This means the
    /// working precision is too low, not that the problem is unsolvable.
    #[error("pivot {index} is zero at {frac_bits} fractional bits")]
    ZeroPivot { index: usize, frac_bits: u32 },

    #[error("column channel failure: {0}")]
    ChannelFailure(String),

    #[error("secant iteration stalled at iterate {iteration}")]
    NoProgress { iteration: usize },

    #[error("P(x) is not positive at iterate {iteration}")]
    SignViolation { iteration: usize },

    #[error("precision cap of {cap} bits exceeded")]
    PrecisionCapExceeded { cap: u32 },

    #[error("matrix order {n} exceeds oracle limit {max}")]
    SizeGuard { n: usize, max: usize },

    #[error("matrix entry is not representable in machine precision")]
    OverflowGuard,

    #[error("invalid beta {0:?}: expected p/q or an integer")]
    InvalidBeta(String),

    #[error("malformed matrix dump: {0}")]
    MalformedDump(String),
}

impl Error {
    /// Failures that more working precision can cure.
    pub fn is_precision_failure(&self) -> bool {
        matches!(
            self,
            Error::ZeroPivot { .. } | Error::NoProgress { .. } | Error::SignViolation { .. }
        )
    }
}
