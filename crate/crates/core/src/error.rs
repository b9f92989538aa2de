use thiserror::Error;

/// Errors raised by the kernel. The variant names are what the CLI echoes on
/// domain failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotDivisible: no Laurent quotient exists")]
    NotDivisible,
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("IndexOutOfRange: index {index} not in [1, {bound}]")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("NotSkewSymmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("NotSkewSymmetric: {0}")]
    NotSkewSymmetric(String),
    #[error("NotCompatible: {0}")]
    NotCompatible(String),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("NotTorusFrame: frame values are not based monomials")]
    NotTorusFrame,
    #[error("NegativeExponent: term has negative exponent {exponent} on variable {var}")]
    NegativeExponent { var: usize, exponent: i64 },
    #[error("NotReduced: {0}")]
    NotReduced(String),
    #[error("DegenerateSamples: every sample hit a vanishing denominator")]
    DegenerateSamples,
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotDivisible => "NotDivisible",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotSkewSymmetrizable(_) => "NotSkewSymmetrizable",
            Error::NotSkewSymmetric(_) => "NotSkewSymmetric",
            Error::NotCompatible(_) => "NotCompatible",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NotTorusFrame => "NotTorusFrame",
            Error::NegativeExponent { .. } => "NegativeExponent",
            Error::NotReduced(_) => "NotReduced",
            Error::DegenerateSamples => "DegenerateSamples",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks a 0-based index against `bound`, reporting the 1-based position on failure.
pub(crate) fn check_index(index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: index + 1,
            bound,
        })
    }
}
