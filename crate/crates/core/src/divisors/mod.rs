//! Generalized divisors on a chart: sums, direct images through Fitting ideals, inverse images,
//! and degrees, globally on the chart and at a point.

mod divisor;
mod image;
mod preimage;

pub use divisor::{divisor_sum, local_length, GeneralizedDivisor};
pub use image::{direct_image, fitting_generator, fitting_ideal_minors, inverse_image, pushforward_presentation};
pub use preimage::{find_preimage_divisor, Preimage};
