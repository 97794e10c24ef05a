//! Exact arithmetic: fields, polynomials, matrices, and normal forms over `k[t]`.

mod field;
pub mod matrix;
mod multipoly;
mod parse;
pub mod pid;
pub mod ring;
mod unipoly;

pub use field::{is_prime, Field, FieldElem};
pub use matrix::Matrix;
pub use multipoly::{Monomial, MultiPoly};
pub use parse::{parse_poly, parse_poly_with_aliases, PolyParser};
pub use ring::{FieldOps, PolyRing, ResidueField, Ring, UniRing};
pub use unipoly::{random_unipoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows of unequal length")]
    Ragged,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
