use rand::Rng;

use super::fractional::{r_basis, BaseFraction, FractionalIdeal};
use super::CoverChart;
use crate::kernel::MultiPoly;
use crate::{Error, Result};

/// `Nm(M) = det(pi_* M)`: the index ideal of the `R`-lattice of the numerator divided by the
/// norm of the denominator. Requires a `k[t]` base; `det(pi_* S)` is trivial in the free basis.
pub fn ideal_norm(chart: &CoverChart, m: &FractionalIdeal) -> Result<BaseFraction> {
    chart.require_principal_base()?;
    let h = r_basis(chart, m.numerator());
    let det =
        h.det().ok_or_else(|| Error::Degenerate("ideal has no regular element (lattice not of full rank)".into()))?;
    let dnorm = chart.base_to_uni(&chart.element_norm(m.denominator()))?;
    BaseFraction::new(&det, &dnorm)
}

/// Outcome of an isomorphism search between fractional ideals.
#[derive(Clone, Debug, PartialEq)]
pub enum IsoResult {
    /// `(num/den) * J2 = J1`.
    Isomorphic {
        num: MultiPoly,
        den: MultiPoly,
    },
    NotIsomorphic {
        reason: String,
    },
    Undecided,
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic { .. })
    }

    pub fn witness_display(&self, chart: &CoverChart) -> Option<String> {
        match self {
            IsoResult::Isomorphic { num, den } => Some(if den.is_one() {
                chart.display(num)
            } else {
                format!("({})/({})", chart.display(num), chart.display(den))
            }),
            _ => None,
        }
    }
}

/// Searches `(J1 : J2)` for `g` with `g * J2 = J1`: generators of the colon numerator first,
/// then `trials` random `k`-combinations of the products `h_i * b_j`.
///
/// `NotIsomorphic` is only returned on an isomorphism invariant that differs: invertibility or
/// the endomorphism ring `(J : J)`.
pub fn ideal_iso_test<R: Rng + ?Sized>(
    chart: &CoverChart,
    j1: &FractionalIdeal,
    j2: &FractionalIdeal,
    trials: usize,
    rng: &mut R,
) -> Result<IsoResult> {
    let ring = chart.ring();
    let r = j2.regular_element(chart).ok_or_else(|| Error::Degenerate("second ideal has no regular element".into()))?;
    // colon numerator H with (J1 : J2) = H / (d1 r)
    let target = j1.numerator().scale(&ring.nf(&(&r * j2.denominator())));
    let h_ideal = target.colon(j2.numerator());
    let den = ring.nf(&(j1.denominator() * &r));
    let check = |h: &MultiPoly| -> bool { !h.is_zero() && j2.numerator().scale(h) == target };

    let gens = h_ideal.canonical_generators();
    let mut candidates: Vec<MultiPoly> = gens.clone();
    let module_gens: Vec<MultiPoly> = gens
        .iter()
        .flat_map(|g| (0..chart.degree()).map(move |j| (g.clone(), j)))
        .map(|(g, j)| ring.nf(&(&g * &chart.basis_element(j))))
        .collect();
    for _ in 0..trials {
        let mut acc = MultiPoly::zero(chart.field(), ring.nvars());
        for g in &module_gens {
            acc = &acc + &g.scale(&chart.field().random(rng));
        }
        candidates.push(ring.nf(&acc));
    }
    for h in candidates {
        if check(&h) {
            let (num, den) = simplify(chart, &h, &den);
            // re-verify through fractional-ideal equality
            let lhs = FractionalIdeal::new(chart, j2.numerator().scale(&num), ring.nf(&(j2.denominator() * &den)))?;
            if lhs.equals(j1) {
                return Ok(IsoResult::Isomorphic { num, den });
            }
        }
    }
    let inv1 = j1.is_invertible(chart)?;
    let inv2 = j2.is_invertible(chart)?;
    if inv1 != inv2 {
        return Ok(IsoResult::NotIsomorphic { reason: format!("invertible: {inv1} vs {inv2}") });
    }
    if !j1.endomorphisms(chart)?.equals(&j2.endomorphisms(chart)?) {
        return Ok(IsoResult::NotIsomorphic { reason: "endomorphism rings differ".into() });
    }
    Ok(IsoResult::Undecided)
}

/// Cancels a common constant factor and normalizes a constant denominator to one.
fn simplify(chart: &CoverChart, num: &MultiPoly, den: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let ring = chart.ring();
    if let Some(inv) = den.constant_value().and_then(|c| c.inv()) {
        return (ring.nf(&num.scale(&inv)), MultiPoly::one(chart.field(), ring.nvars()));
    }
    if let Some(q) = num.div_exact(den) {
        return (ring.nf(&q), MultiPoly::one(chart.field(), ring.nvars()));
    }
    (num.clone(), den.clone())
}
