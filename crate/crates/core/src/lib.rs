//! Exact computations on spectral covers and their Higgs-bundle counterparts: norms and direct
//! images of divisors, the spectral correspondence on affine charts, and the structure-group
//! checks that go with it.

pub mod cover;
pub mod divisors;
pub mod groebner;
pub mod kernel;
pub mod spectral;

use kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("not a regular element: {0}")]
    NotRegular(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("degree undefined: {0}")]
    DegreeUndefined(String),
    #[error("not a maximal ideal: {0}")]
    NotMaximal(String),
    #[error("incompatible data: {0}")]
    Incompatible(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("division error: {0}")]
    Division(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("involution undefined: {0}")]
    InvolutionUndefined(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
