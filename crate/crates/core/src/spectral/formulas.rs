use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cover::NumericProfile;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    GL,
    SL,
    Sp,
    GSp,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::GL, Group::SL, Group::Sp, Group::GSp];

    pub fn as_str(&self) -> &'static str {
        match self {
            Group::GL => "GL",
            Group::SL => "SL",
            Group::Sp => "Sp",
            Group::GSp => "GSp",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group> {
        match s {
            "GL" => Ok(Group::GL),
            "SL" => Ok(Group::SL),
            "Sp" => Ok(Group::Sp),
            "GSp" => Ok(Group::GSp),
            _ => Err(Error::Unsupported(format!("group {s}"))),
        }
    }
}

/// Degree of the spectral sheaf and the numerical invariants of the spectral curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeRecord {
    pub group: Group,
    /// Degree `n` of the spectral cover.
    pub cover_degree: i64,
    /// Degree of the rank-1 sheaf `M` with `π_* M = E`.
    pub d_prime: i64,
    /// `χ(O_X)`.
    pub chi: i64,
    pub deg_omega: i64,
}

/// Closed forms for the spectral data of a Higgs bundle of the profile.
///
/// GL: `E` of rank `r` and degree `d`. SL: as GL with `deg E = 0`, whatever `d` says. Sp: `r`
/// is half the rank and `deg E = 0`. GSp: `r` is half the rank and `E` has degree `r d`, with `d`
/// the degree of the line bundle receiving the form.
pub fn degree_formulas(p: &NumericProfile, group: Group) -> DegreeRecord {
    let (r, g, l, d) = (p.r, p.g, p.l, p.d);
    let n = match group {
        Group::GL | Group::SL => r,
        Group::Sp | Group::GSp => 2 * r,
    };
    let half = n * (n - 1) / 2 * l;
    let d_prime = match group {
        Group::GL => d + half,
        Group::SL => half,
        Group::Sp => r * (2 * r - 1) * l,
        Group::GSp => r * d + r * (2 * r - 1) * l,
    };
    DegreeRecord {
        group,
        cover_degree: n,
        d_prime,
        chi: n * (1 - g) - half,
        deg_omega: 2 * n * (g - 1) + n * (n - 1) * l,
    }
}

/// `Σ rk_i m_i δ_i / Σ m_i δ_i` over the components, with multiplicities `m_i` and polarization
/// degrees `δ_i`.
pub fn polarized_rank(ranks: &[BigRational], mults: &[i64], degs: &[i64]) -> Result<BigRational> {
    if ranks.len() != mults.len() || ranks.len() != degs.len() {
        return Err(Error::Shape(format!("lengths {}, {}, {}", ranks.len(), mults.len(), degs.len())));
    }
    let mut num = BigRational::zero();
    let mut den = BigInt::zero();
    for ((rk, &m), &dg) in ranks.iter().zip(mults).zip(degs) {
        let w = BigInt::from(m) * BigInt::from(dg);
        num += rk * BigRational::from_integer(w.clone());
        den += w;
    }
    if den.is_zero() {
        return Err(Error::Division("total polarized degree is zero".into()));
    }
    Ok(num / BigRational::from_integer(den))
}
