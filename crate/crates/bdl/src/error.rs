use thiserror::Error;

use crate::arith::ArithError;
use crate::glk::GlkError;
use crate::ore::OreError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Glk(#[from] GlkError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Failures caused by a non-generic parameter draw (worth resampling).
    pub fn is_non_generic(&self) -> bool {
        matches!(
            self,
            Error::Glk(GlkError::NonGeneric(_)) | Error::Arith(ArithError::VanishingDenominator(_)) | Error::Arith(ArithError::DivisionByZero)
        )
    }
}
