use thiserror::Error;

use crate::rootsys::FamilyRank;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("InvalidRank: {0}")]
    InvalidRank(String),
    #[error("DimensionMismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("NotARoot: {0}")]
    NotARoot(String),
    #[error("ZeroNorm: {0}")]
    ZeroNorm(String),
    #[error("NotDominant: {0}")]
    NotDominant(String),
    #[error("IndexOutOfRange: index {index} for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("UnsupportedType: {0}")]
    UnsupportedType(FamilyRank),
    #[error("NonIntegerResult: {0}")]
    NonIntegerResult(String),
    #[error("BudgetExceeded: {count} dominant weights exceed the cap of {cap}")]
    BudgetExceeded { count: usize, cap: usize },
    #[error("SystemMismatch: {0} vs {1}")]
    SystemMismatch(FamilyRank, FamilyRank),
    #[error("ParityArithmetic: {0}")]
    ParityArithmetic(String),
    #[error("NegativeResidual: {0}")]
    NegativeResidual(String),
    #[error("NotSingleSupport: {0}")]
    NotSingleSupport(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("Corpus: {0}")]
    Corpus(String),
}

impl Error {
    /// The variant name, as surfaced by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRank(_) => "InvalidRank",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotARoot(_) => "NotARoot",
            Error::ZeroNorm(_) => "ZeroNorm",
            Error::NotDominant(_) => "NotDominant",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::NonIntegerResult(_) => "NonIntegerResult",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::SystemMismatch(..) => "SystemMismatch",
            Error::ParityArithmetic(_) => "ParityArithmetic",
            Error::NegativeResidual(_) => "NegativeResidual",
            Error::NotSingleSupport(_) => "NotSingleSupport",
            Error::Parse(_) => "Parse",
            Error::Corpus(_) => "Corpus",
        }
    }
}
