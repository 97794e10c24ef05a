//! Gröbner bases and ideal arithmetic in polynomial rings and their quotients.

mod buchberger;
mod ideal;
mod order;
mod quotient;
pub mod zerodim;

pub use ideal::{Dimension, Ideal};
pub use order::MonomialOrder;
pub use quotient::QuotientRing;
pub use zerodim::{is_maximal, maximal_ideals_over, radical, ArtinianAlgebra};
