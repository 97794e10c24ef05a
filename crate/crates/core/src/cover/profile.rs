use crate::{Error, Result};

/// Global integers attached to a spectral cover: rank `r`, genus `g` of the base curve, degree
/// `l` of the twisting line bundle, and degree `d` of the Higgs bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NumericProfile {
    pub r: i64,
    pub g: i64,
    pub l: i64,
    pub d: i64,
}

impl NumericProfile {
    pub fn new(r: i64, g: i64, l: i64, d: i64) -> Result<NumericProfile> {
        if r < 1 {
            return Err(Error::Degenerate(format!("rank {r} < 1")));
        }
        if g < 0 {
            return Err(Error::Degenerate(format!("genus {g} < 0")));
        }
        Ok(NumericProfile { r, g, l, d })
    }
}
