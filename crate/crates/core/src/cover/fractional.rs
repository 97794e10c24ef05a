use std::fmt;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CoverChart;
use crate::groebner::Ideal;
use crate::kernel::pid::{hermite, Hermite};
use crate::kernel::{Matrix, MultiPoly, UniPoly};
use crate::{Error, Result};

/// A fractional ideal `I/d` of the cover ring: an integral ideal over a regular denominator.
#[derive(Clone, Debug)]
pub struct FractionalIdeal {
    num: Ideal,
    den: MultiPoly,
}

impl FractionalIdeal {
    /// Fails unless `den` is a nonzerodivisor of `S`.
    pub fn new(chart: &CoverChart, num: Ideal, den: MultiPoly) -> Result<FractionalIdeal> {
        let den = chart.ring().nf(&den);
        if !chart.is_regular(&den) {
            return Err(Error::NotRegular(format!("denominator {}", chart.display(&den))));
        }
        Ok(FractionalIdeal { num, den })
    }

    pub fn integral(num: Ideal) -> FractionalIdeal {
        let one = MultiPoly::one(num.ring().field(), num.ring().nvars());
        FractionalIdeal { num, den: one }
    }

    pub fn unit(chart: &CoverChart) -> FractionalIdeal {
        FractionalIdeal::integral(Ideal::unit(chart.ring()))
    }

    pub fn principal(chart: &CoverChart, f: &MultiPoly) -> FractionalIdeal {
        FractionalIdeal::integral(Ideal::new(chart.ring(), vec![f.clone()]))
    }

    /// `f^{-1} S` for a regular `f`.
    pub fn inverse_principal(chart: &CoverChart, f: &MultiPoly) -> Result<FractionalIdeal> {
        FractionalIdeal::new(chart, Ideal::unit(chart.ring()), f.clone())
    }

    pub fn numerator(&self) -> &Ideal {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    /// Whether the denominator is a unit constant, so the ideal lies in `S`.
    pub fn has_trivial_denominator(&self) -> bool {
        self.den.is_constant() && !self.den.is_zero()
    }

    /// Whether the ideal contains a nonzerodivisor.
    pub fn is_nondegenerate(&self, chart: &CoverChart) -> bool {
        if chart.has_principal_base() {
            return r_basis(chart, &self.num).is_full_rank();
        }
        Ideal::zero(chart.ring()).colon(&self.num).is_zero()
    }

    pub fn product(&self, other: &FractionalIdeal) -> FractionalIdeal {
        let ring = self.num.ring();
        FractionalIdeal { num: self.num.product(&other.num), den: ring.nf(&(&self.den * &other.den)) }
    }

    pub fn scale(&self, f: &MultiPoly) -> FractionalIdeal {
        FractionalIdeal { num: self.num.scale(f), den: self.den.clone() }
    }

    /// `I1/d1 = I2/d2` iff `d2 I1 = d1 I2`.
    pub fn equals(&self, other: &FractionalIdeal) -> bool {
        self.num.scale(&other.den) == other.num.scale(&self.den)
    }

    /// A nonzerodivisor in the numerator: generators first, then seeded random combinations.
    pub fn regular_element(&self, chart: &CoverChart) -> Option<MultiPoly> {
        let gens = self.num.canonical_generators();
        if let Some(g) = gens.iter().find(|g| chart.is_regular(g)) {
            return Some(g.clone());
        }
        let field = chart.field();
        let mut rng = ChaCha8Rng::seed_from_u64(0x7265_6775);
        for _ in 0..64 {
            let mut acc = MultiPoly::zero(field, chart.ring().nvars());
            for g in &gens {
                acc = &acc + &g.scale(&field.random(&mut rng));
            }
            let acc = chart.ring().nf(&acc);
            if !acc.is_zero() && chart.is_regular(&acc) {
                return Some(acc);
            }
        }
        None
    }

    /// `(self :_K other) = { f in K : f * other ⊆ self }`.
    ///
    /// With `r` regular in the numerator of `other`, the colon is `(r d2 I1 :_S I2) / (d1 r)`.
    pub fn colon(&self, chart: &CoverChart, other: &FractionalIdeal) -> Result<FractionalIdeal> {
        let r = other
            .regular_element(chart)
            .ok_or_else(|| Error::Degenerate("colon by an ideal without a regular element".into()))?;
        let ring = chart.ring();
        let scaled = self.num.scale(&ring.nf(&(&r * &other.den)));
        let num = scaled.colon(&other.num);
        Ok(FractionalIdeal { num, den: ring.nf(&(&self.den * &r)) })
    }

    /// `(S : self)`.
    pub fn dual(&self, chart: &CoverChart) -> Result<FractionalIdeal> {
        FractionalIdeal::unit(chart).colon(chart, self)
    }

    /// Whether `self * (S : self) = S`.
    pub fn is_invertible(&self, chart: &CoverChart) -> Result<bool> {
        Ok(self.product(&self.dual(chart)?).equals(&FractionalIdeal::unit(chart)))
    }

    /// Endomorphism ring `(self : self)`, an isomorphism invariant.
    pub fn endomorphisms(&self, chart: &CoverChart) -> Result<FractionalIdeal> {
        self.colon(chart, self)
    }

    /// Applies a ring endomorphism of `S` given by images of its variables.
    pub fn substitute(&self, chart: &CoverChart, images: &[MultiPoly]) -> Result<FractionalIdeal> {
        let ring = chart.ring();
        let gens = self.num.generators().iter().map(|g| ring.nf(&g.substitute(images))).collect();
        FractionalIdeal::new(chart, Ideal::new(ring, gens), self.den.substitute(images))
    }

    pub fn display(&self, chart: &CoverChart) -> String {
        if self.has_trivial_denominator() {
            let inv = self.den.constant_value().and_then(|c| c.inv()).expect("unit denominator");
            let n = Ideal::new(self.num.ring(), self.num.generators().iter().map(|g| g.scale(&inv)).collect());
            return n.display();
        }
        format!("{}/({})", self.num.display(), chart.display(&self.den))
    }
}

/// The `R`-lattice matrix of an ideal of `S` over `k[t]`: columns are the coordinates of
/// `g * b_j` for every generator `g` and basis element `b_j`.
pub fn lattice_matrix(chart: &CoverChart, gens: &[MultiPoly]) -> Matrix<UniPoly> {
    let n = chart.degree();
    let mut cols: Vec<Vec<UniPoly>> = Vec::new();
    for g in gens {
        for j in 0..n {
            let v = chart.coords(&chart.ring().nf(&(g * &chart.basis_element(j))));
            cols.push(v.iter().map(|a| a.to_uni(0).expect("univariate base")).collect());
        }
    }
    if cols.is_empty() {
        return Matrix::from_fn(n, 0, |_, _| UniPoly::zero(chart.field()));
    }
    Matrix::from_columns(n, &cols)
}

/// Hermite `R`-basis of an ideal of `S` over a `k[t]` base.
pub fn r_basis(chart: &CoverChart, ideal: &Ideal) -> Hermite {
    hermite(chart.field(), &lattice_matrix(chart, ideal.generators()))
}

/// A fractional ideal of `k[t]`, stored as a reduced fraction of monic polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseFraction {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl BaseFraction {
    pub fn new(num: &UniPoly, den: &UniPoly) -> Result<BaseFraction> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::Degenerate("zero ideal has no norm".into()));
        }
        let g = num.gcd(den);
        let n = num.div_exact(&g).expect("gcd divides").monic();
        let d = den.div_exact(&g).expect("gcd divides").monic();
        Ok(BaseFraction { num: n, den: d })
    }

    pub fn principal(g: &UniPoly) -> Result<BaseFraction> {
        BaseFraction::new(g, &UniPoly::one(g.field()))
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn mul(&self, other: &BaseFraction) -> BaseFraction {
        BaseFraction::new(&(&self.num * &other.num), &(&self.den * &other.den)).expect("nonzero")
    }

    pub fn pow(&self, e: u32) -> BaseFraction {
        BaseFraction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn inverse(&self) -> BaseFraction {
        BaseFraction { num: self.den.clone(), den: self.num.clone() }
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.den.is_one() {
            format!("({})", self.num.display_with(var))
        } else {
            format!("({})/({})", self.num.display_with(var), self.den.display_with(var))
        }
    }
}

impl fmt::Display for BaseFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}
