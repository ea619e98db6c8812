use thiserror::Error;

use crate::omega::OmegaSymbol;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table `{table}` has entry {value} at ({row}, {col}) outside the carrier of size {n}")]
    MalformedTable {
        table: &'static str,
        n: usize,
        row: usize,
        col: usize,
        value: usize,
    },

    #[error("table `{table}` has shape mismatch: expected {expected}x{expected}")]
    ShapeMismatch { table: &'static str, expected: usize },

    #[error("carrier must be non-empty")]
    EmptyCarrier,

    #[error("braid relation fails on {count} triple(s), first {first:?}")]
    BraidViolation { count: usize, first: [usize; 3] },

    #[error("r is not injective: {first:?} and {second:?} both map to {image:?}")]
    NotBijective {
        first: (usize, usize),
        second: (usize, usize),
        image: (usize, usize),
    },

    #[error("solution is not left non-degenerate (sigma row {row} is not a permutation)")]
    NotLeftNondegenerate { row: usize },

    #[error("solution is not right non-degenerate (tau row {row} is not a permutation)")]
    NotRightNondegenerate { row: usize },

    #[error("solution is not non-degenerate")]
    NotNondegenerate,

    #[error("carrier sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("carrier size {n} exceeds the limit {limit}")]
    SizeTooLarge { n: usize, limit: usize },

    #[error("relation is not compatible with {op}: witness {witness:?}")]
    CompatibilityError {
        op: OmegaSymbol,
        witness: [usize; 4],
    },

    #[error("iterated retraction stops at an irretractable solution of size {size} after {steps} step(s)")]
    NotMultipermutation { steps: usize, size: usize },

    #[error("iterated retraction stops at a non-trivial irretractable solution of size {size}")]
    NotApplicable { size: usize },

    #[error("operation {0} is not available on this solution")]
    SymbolUnavailable(OmegaSymbol),

    #[error("solution is not {k}-permutational")]
    NotKPermutational { k: usize },

    #[error("solution is not {k}-reductive")]
    NotKReductive { k: usize },

    #[error("k-reductivity needs k >= 1")]
    ReductiveOrderZero,

    #[error("invalid q-cycle set: {0}")]
    InvalidQCycle(String),

    #[error("subset is not closed: {element} lies outside it")]
    InvalidSubset { element: usize },
}

impl Error {
    /// Stable identifier used by front ends.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedTable { .. } => "MalformedTable",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::EmptyCarrier => "EmptyCarrier",
            Error::BraidViolation { .. } => "BraidViolation",
            Error::NotBijective { .. } => "NotBijective",
            Error::NotLeftNondegenerate { .. } => "NotLeftNondegenerate",
            Error::NotRightNondegenerate { .. } => "NotRightNondegenerate",
            Error::NotNondegenerate => "NotNondegenerate",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::SizeTooLarge { .. } => "SizeTooLarge",
            Error::CompatibilityError { .. } => "CompatibilityError",
            Error::NotMultipermutation { .. } => "NotMultipermutation",
            Error::NotApplicable { .. } => "NotApplicable",
            Error::SymbolUnavailable(_) => "SymbolUnavailable",
            Error::NotKPermutational { .. } => "NotKPermutational",
            Error::NotKReductive { .. } => "NotKReductive",
            Error::ReductiveOrderZero => "ReductiveOrderZero",
            Error::InvalidQCycle(_) => "InvalidQCycle",
            Error::InvalidSubset { .. } => "InvalidSubset",
        }
    }
}
