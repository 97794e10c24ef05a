//! The commutative-ring interface used by the generic matrix algorithms.

use std::fmt::Debug;

use super::{Field, FieldElem, KernelError, MultiPoly, UniPoly};

/// A commutative ring given by value; elements are plain data.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// Whether the ring has no zero divisors; enables fraction-free elimination.
    fn is_domain(&self) -> bool {
        false
    }

    /// `Some(q)` with `a = q*b`, for domains.
    fn div_exact(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, it: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait FieldOps: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

impl Ring for Field {
    type Elem = FieldElem;
    fn zero(&self) -> FieldElem {
        Field::zero(self)
    }
    fn one(&self) -> FieldElem {
        Field::one(self)
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a + b
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a - b
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a * b
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        -a
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> FieldElem {
        Field::from_i64(self, v)
    }
    fn is_domain(&self) -> bool {
        true
    }
    fn div_exact(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        b.inv().map(|i| a * &i)
    }
}

impl FieldOps for Field {
    fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        a.inv()
    }
}

/// `k[t]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniRing(pub Field);

impl Ring for UniRing {
    type Elem = UniPoly;
    fn zero(&self) -> UniPoly {
        UniPoly::zero(self.0)
    }
    fn one(&self) -> UniPoly {
        UniPoly::one(self.0)
    }
    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a + b
    }
    fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a - b
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a * b
    }
    fn neg(&self, a: &UniPoly) -> UniPoly {
        -a
    }
    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> UniPoly {
        UniPoly::constant(self.0.from_i64(v))
    }
    fn is_domain(&self) -> bool {
        true
    }
    fn div_exact(&self, a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
        a.div_exact(b)
    }
}

/// `k[x_1, ..., x_n]` without relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub field: Field,
    pub nvars: usize,
}

impl Ring for PolyRing {
    type Elem = MultiPoly;
    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.field, self.nvars)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.field, self.nvars)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a - b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> MultiPoly {
        MultiPoly::from_i64(self.field, self.nvars, v)
    }
    fn is_domain(&self) -> bool {
        true
    }
    fn div_exact(&self, a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
        a.div_exact(b)
    }
}

/// The residue field `k[t]/(q)` of a closed point of the affine line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    modulus: UniPoly,
}

impl ResidueField {
    /// Fails unless `q` is irreducible.
    pub fn new(q: &UniPoly) -> Result<ResidueField, KernelError> {
        if !q.is_irreducible()? {
            return Err(KernelError::Unsupported(format!("residue field of reducible {q}")));
        }
        Ok(ResidueField { modulus: q.monic() })
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus)
    }
}

impl Ring for ResidueField {
    type Elem = UniPoly;
    fn zero(&self) -> UniPoly {
        UniPoly::zero(self.modulus.field())
    }
    fn one(&self) -> UniPoly {
        UniPoly::one(self.modulus.field()).rem(&self.modulus)
    }
    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a + b
    }
    fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a - b
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        (a * b).rem(&self.modulus)
    }
    fn neg(&self, a: &UniPoly) -> UniPoly {
        -a
    }
    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> UniPoly {
        UniPoly::constant(self.modulus.field().from_i64(v)).rem(&self.modulus)
    }
    fn is_domain(&self) -> bool {
        true
    }
    fn div_exact(&self, a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
        self.inv(b).map(|i| self.mul(a, &i))
    }
}

impl FieldOps for ResidueField {
    fn inv(&self, a: &UniPoly) -> Option<UniPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        g.is_one().then(|| s.rem(&self.modulus))
    }
}
