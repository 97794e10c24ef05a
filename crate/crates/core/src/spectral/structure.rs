use rand::Rng;

use super::higgs::cover_coeffs;
use super::module::{fractional_form, ModuleForm, SpectralModule};
use crate::cover::{ideal_iso_test, ideal_norm, r_basis, BaseFraction, CoverChart, FractionalIdeal, IsoResult};
use crate::kernel::{FieldElem, Matrix, MultiPoly, UniPoly};
use crate::{Error, Result};

/// Membership of `M` in the fiber of the norm over the trivial bundle.
#[derive(Clone, Debug, PartialEq)]
pub enum NormFiber {
    /// `det(π_* M) = u det(π_* S)` for the constant `u`.
    InFiber {
        unit: FieldElem,
    },
    NotInFiber {
        norm: BaseFraction,
    },
}

impl NormFiber {
    pub fn is_in_fiber(&self) -> bool {
        matches!(self, NormFiber::InFiber { .. })
    }
}

/// Compares `Nm(M)` with the unit ideal. Over `k[t]` the norm is a principal fractional ideal
/// computed exactly, so the answer is always decided. A twist `M ⊗ π*L^k` changes the norm by
/// `L^(nk)`, which is trivial on the chart.
pub fn norm_fiber_check(chart: &CoverChart, m: &SpectralModule) -> Result<NormFiber> {
    let j = fractional_form(chart, m)?;
    let norm = ideal_norm(chart, &j)?;
    if !norm.is_unit_ideal() {
        return Ok(NormFiber::NotInFiber { norm });
    }
    let det = r_basis(chart, j.numerator()).det().expect("nondegenerate");
    let dnorm = chart.base_to_uni(&chart.element_norm(j.denominator()))?;
    let unit = &det.lead() / &dnorm.lead();
    Ok(NormFiber::InFiber { unit })
}

/// Whether `x^n + a_1 x^(n-1) + ... + a_n` has `n` even and no odd-index coefficients, so that
/// `x -> -x` preserves it.
pub fn sp_parity_check(coeffs: &[UniPoly]) -> bool {
    coeffs.len() % 2 == 0 && coeffs.iter().enumerate().all(|(i, a)| i % 2 == 1 || a.is_zero())
}

/// `σ*M` for `σ(x) = -x` on an even cover.
pub fn sigma_pullback(chart: &CoverChart, m: &SpectralModule) -> Result<SpectralModule> {
    let coeffs = cover_coeffs(chart)?;
    if !sp_parity_check(&coeffs) {
        return Err(Error::InvolutionUndefined(format!("{chart} is not invariant under x -> -x")));
    }
    let images = sigma_images(chart);
    let form = match &m.form {
        ModuleForm::Fractional(j) => ModuleForm::Fractional(j.substitute(chart, &images)?),
        ModuleForm::Presentation(a) => ModuleForm::Presentation(Matrix::from_fn(a.rows(), a.cols(), |i, k| {
            chart.ring().nf(&a.get(i, k).substitute(&images))
        })),
    };
    Ok(SpectralModule { form, twist: m.twist })
}

fn sigma_images(chart: &CoverChart) -> Vec<MultiPoly> {
    let ring = chart.ring();
    (0..ring.nvars()).map(|i| if i == 0 { -&ring.var(0) } else { ring.var(i) }).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpDuality {
    /// `(num/den) M^∨ = σ*M`.
    Holds { num: MultiPoly, den: MultiPoly },
    /// An isomorphism invariant differs.
    Fails { reason: String },
    /// No witness found and no invariant tells the modules apart.
    Undecided,
}

impl SpDuality {
    pub fn witness_display(&self, chart: &CoverChart) -> Option<String> {
        match self {
            SpDuality::Holds { num, den } => {
                IsoResult::Isomorphic { num: num.clone(), den: den.clone() }.witness_display(chart)
            }
            _ => None,
        }
    }
}

/// `M^∨ ≅ σ*M ⊗ π*L^(1-n)` on the chart, where the twist is trivial: computes `(S : M)` and
/// `σ*M` and searches for `g` with `g M^∨ = σ*M`.
pub fn sp_duality_check<R: Rng + ?Sized>(
    chart: &CoverChart,
    m: &SpectralModule,
    trials: usize,
    rng: &mut R,
) -> Result<SpDuality> {
    let j = fractional_form(chart, m)?;
    let sigma = match sigma_pullback(chart, &SpectralModule::fractional(j.clone()))?.form {
        ModuleForm::Fractional(s) => s,
        ModuleForm::Presentation(_) => unreachable!("fractional in, fractional out"),
    };
    let dual = j.dual(chart)?;
    Ok(match ideal_iso_test(chart, &sigma, &dual, trials, rng)? {
        IsoResult::Isomorphic { num, den } => SpDuality::Holds { num, den },
        IsoResult::NotIsomorphic { reason } => SpDuality::Fails { reason },
        IsoResult::Undecided => SpDuality::Undecided,
    })
}

/// Twist exponent of the duality isomorphism for a cover of degree `n`.
pub fn sp_duality_twist(chart: &CoverChart) -> i64 {
    1 - chart.degree() as i64
}

/// Whether `(num/den) M^∨ = σ*M` holds, recomputed from scratch.
pub fn verify_sp_witness(chart: &CoverChart, m: &SpectralModule, num: &MultiPoly, den: &MultiPoly) -> Result<bool> {
    let j = fractional_form(chart, m)?;
    let sigma = j.substitute(chart, &sigma_images(chart))?;
    let dual = j.dual(chart)?;
    let lhs = FractionalIdeal::new(chart, dual.numerator().scale(num), chart.ring().nf(&(dual.denominator() * den)))?;
    Ok(lhs.equals(&sigma))
}
