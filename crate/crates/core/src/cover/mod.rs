//! Finite free covers `R -> S` on a chart: element norms and traces, fractional ideals of `S`,
//! and their norms down to the base.

mod chart;
mod fractional;
mod norm;
mod profile;

pub use chart::{CoverChart, CoverForm};
pub use fractional::{lattice_matrix, r_basis, BaseFraction, FractionalIdeal};
pub use norm::{ideal_iso_test, ideal_norm, IsoResult};
pub use profile::NumericProfile;
