use thiserror::Error;

use crate::fock::ParitySector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode index {index} out of range 1..={d}")]
    ModeOutOfRange { index: usize, d: usize },

    #[error("mode count {d} not supported (allowed 1..={max})")]
    UnsupportedModeCount { d: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not antisymmetric (residual {residual:e})")]
    NotAntisymmetric { residual: f64 },

    #[error("matrix has odd order {0}")]
    OddOrder(usize),

    #[error("isotropic Clifford vector has no inverse")]
    IsotropicVector,

    #[error("state lies in the {0} sector where a fixed parity is required")]
    WrongSector(ParitySector),

    #[error("zero state has no annihilator classification")]
    ZeroState,

    #[error("linearly dependent vectors")]
    LinearlyDependent,

    #[error("premise violated: {0}")]
    Premise(String),

    #[error("invalid input: {0}")]
    Schema(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
