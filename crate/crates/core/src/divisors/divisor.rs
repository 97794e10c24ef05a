use std::fmt;
use std::sync::Arc;

use crate::groebner::{is_maximal, maximal_ideals_over, Dimension, Ideal, QuotientRing};
use crate::kernel::MultiPoly;
use crate::{Error, Result};

/// A generalized divisor on a chart, `D = D' - (f)`: an integral ideal `I` for the effective
/// part `D'` and an optional regular element `f` for the principal negative part.
#[derive(Clone, Debug)]
pub struct GeneralizedDivisor {
    ideal: Ideal,
    negative: Option<MultiPoly>,
}

impl GeneralizedDivisor {
    pub fn effective(ideal: Ideal) -> GeneralizedDivisor {
        GeneralizedDivisor { ideal, negative: None }
    }

    /// `D' - (f)`; fails unless `f` is a nonzerodivisor.
    pub fn new(ideal: Ideal, negative: Option<MultiPoly>) -> Result<GeneralizedDivisor> {
        let ring = ideal.ring().clone();
        let negative = match negative.map(|f| ring.nf(&f)) {
            Some(f) if f.is_constant() && !f.is_zero() => None,
            Some(f) => {
                if !is_regular(&ring, &f) {
                    return Err(Error::NotRegular(format!("negative part {}", ring.display(&f))));
                }
                Some(f)
            }
            None => None,
        };
        Ok(GeneralizedDivisor { ideal, negative })
    }

    /// The zero divisor, with ideal `(1)`.
    pub fn zero(ring: &Arc<QuotientRing>) -> GeneralizedDivisor {
        GeneralizedDivisor::effective(Ideal::unit(ring))
    }

    /// The principal effective divisor `(f)`.
    pub fn principal(ring: &Arc<QuotientRing>, f: &MultiPoly) -> GeneralizedDivisor {
        GeneralizedDivisor::effective(Ideal::new(ring, vec![f.clone()]))
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.ideal.ring()
    }

    /// Ideal of the effective part.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn negative(&self) -> Option<&MultiPoly> {
        self.negative.as_ref()
    }

    pub fn is_effective(&self) -> bool {
        self.negative.is_none()
    }

    /// Whether the effective part is invertible, `I * (S : I) = S`.
    pub fn is_cartier(&self) -> bool {
        let ring = self.ring();
        let Some(r) = regular_element(&self.ideal) else {
            return false;
        };
        // (S : I) = ((r) : I) / r
        let dual_num = Ideal::new(ring, vec![r.clone()]).colon(&self.ideal);
        self.ideal.product(&dual_num) == Ideal::new(ring, vec![r])
    }

    /// `D1 = D2` iff `I1 * f2 = I2 * f1`.
    pub fn equals(&self, other: &GeneralizedDivisor) -> bool {
        let one = MultiPoly::one(self.ring().field(), self.ring().nvars());
        let f1 = self.negative.as_ref().unwrap_or(&one);
        let f2 = other.negative.as_ref().unwrap_or(&one);
        self.ideal.scale(f2) == other.ideal.scale(f1)
    }

    /// `dim_k S/I - dim_k S/(f)`.
    pub fn chart_degree(&self) -> Result<i64> {
        let pos = artinian_len(&self.ideal)?;
        let neg = match &self.negative {
            Some(f) => artinian_len(&Ideal::new(self.ring(), vec![f.clone()]))?,
            None => 0,
        };
        Ok(pos - neg)
    }

    /// Local degree at a maximal ideal `m`: the length of `S/(I + m^N)` with `N` the exponent at
    /// which `I : m^k` stabilizes, minus the same for the negative part.
    pub fn degree_at_point(&self, m: &Ideal) -> Result<i64> {
        if !is_maximal(m)? {
            return Err(Error::NotMaximal(m.display()));
        }
        let pos = local_length(&self.ideal, m)?;
        let neg = match &self.negative {
            Some(f) => local_length(&Ideal::new(self.ring(), vec![f.clone()]), m)?,
            None => 0,
        };
        Ok(pos - neg)
    }

    /// Maximal ideals where the divisor is supported, sorted by display.
    pub fn support(&self) -> Result<Vec<Ideal>> {
        let mut ideal = self.ideal.clone();
        if let Some(f) = &self.negative {
            ideal = ideal.product(&Ideal::new(self.ring(), vec![f.clone()]));
        }
        if let Dimension::Infinite = ideal.artinian_dim() {
            return Err(Error::DegreeUndefined(format!("{} is not supported at finitely many points", ideal)));
        }
        Ok(maximal_ideals_over(&ideal)?)
    }

    pub fn display(&self) -> String {
        match &self.negative {
            None => self.ideal.display(),
            Some(f) => format!("{} - ({})", self.ideal.display(), self.ring().display(f)),
        }
    }
}

impl fmt::Display for GeneralizedDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// `D1 + D2`: product of effective parts and of negative parts.
pub fn divisor_sum(d1: &GeneralizedDivisor, d2: &GeneralizedDivisor) -> Result<GeneralizedDivisor> {
    if **d1.ring() != **d2.ring() {
        return Err(Error::Incompatible("divisors live on different charts".into()));
    }
    let negative = match (&d1.negative, &d2.negative) {
        (None, None) => None,
        (Some(f), None) | (None, Some(f)) => Some(f.clone()),
        (Some(f), Some(g)) => Some(d1.ring().nf(&(f * g))),
    };
    Ok(GeneralizedDivisor { ideal: d1.ideal.product(&d2.ideal), negative })
}

/// Length of `S/I` at the maximal ideal `m`, times the residue degree.
pub fn local_length(ideal: &Ideal, m: &Ideal) -> Result<i64> {
    let (_, n) = ideal.saturate(m);
    if n == 0 {
        return Ok(0);
    }
    artinian_len(&ideal.sum(&m.power(n)))
}

pub(crate) fn artinian_len(ideal: &Ideal) -> Result<i64> {
    match ideal.artinian_dim() {
        Dimension::Finite(d) => Ok(d as i64),
        Dimension::Infinite => Err(Error::DegreeUndefined(format!("{} has a non-Artinian quotient", ideal))),
    }
}

pub(crate) fn is_regular(ring: &Arc<QuotientRing>, f: &MultiPoly) -> bool {
    !f.is_zero() && Ideal::zero(ring).colon_element(f).is_zero()
}

/// A nonzerodivisor in the ideal: a generator if possible, otherwise a small combination.
pub(crate) fn regular_element(ideal: &Ideal) -> Option<MultiPoly> {
    let ring = ideal.ring();
    let gens = ideal.canonical_generators();
    if let Some(g) = gens.iter().find(|g| is_regular(ring, g)) {
        return Some(g.clone());
    }
    let field = ring.field();
    for k in 1..=8i64 {
        let mut acc = MultiPoly::zero(field, ring.nvars());
        for (i, g) in gens.iter().enumerate() {
            acc = &acc + &g.scale(&field.from_i64(k).pow(i as u64));
        }
        let acc = ring.nf(&acc);
        if is_regular(ring, &acc) {
            return Some(acc);
        }
    }
    None
}
