use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

pub const EXIT_OK: i32 = 0;
/// A mathematical statement failed: braid violation, counterexample, incompatible relation.
pub const EXIT_FAILURE: i32 = 1;
/// The input could not be read or does not describe well-formed tables.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("{}: {0}", .0.name())]
    Core(#[from] ybe::Error),

    #[error("census mismatch: {0}")]
    FrozenMismatch(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Io(..) => "IoError",
            CliError::Parse(_) => "ParseError",
            CliError::Malformed(_) => "MalformedDocument",
            CliError::Core(e) => e.name(),
            CliError::FrozenMismatch(_) => "FrozenMismatch",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Parse(_) | CliError::Malformed(_) => EXIT_INPUT,
            CliError::FrozenMismatch(_) => EXIT_FAILURE,
            CliError::Core(e) => core_exit_code(e),
        }
    }
}

/// Stable exit status for each library error; precondition failures use 3 and up.
pub fn core_exit_code(e: &ybe::Error) -> i32 {
    use ybe::Error::*;
    match e {
        MalformedTable { .. } | ShapeMismatch { .. } | EmptyCarrier | InvalidQCycle(_) => EXIT_INPUT,
        BraidViolation { .. } | CompatibilityError { .. } => EXIT_FAILURE,
        NotNondegenerate => 3,
        NotLeftNondegenerate { .. } => 4,
        NotRightNondegenerate { .. } => 5,
        NotBijective { .. } => 6,
        SizeTooLarge { .. } => 7,
        NotMultipermutation { .. } => 8,
        NotApplicable { .. } => 9,
        SymbolUnavailable(_) => 10,
        NotKPermutational { .. } => 11,
        NotKReductive { .. } => 12,
        ReductiveOrderZero => 13,
        SizeMismatch { .. } => 14,
        InvalidSubset { .. } => 15,
    }
}
