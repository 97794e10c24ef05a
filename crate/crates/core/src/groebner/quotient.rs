use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use super::buchberger::{groebner, reduce, OPoly};
use super::MonomialOrder;
use crate::kernel::{parse_poly_with_aliases, Field, KernelError, MultiPoly, Ring};

/// `k[x_1, ..., x_n] / (relations)`; elements are kept as normal forms modulo the relations.
#[derive(Debug)]
pub struct QuotientRing {
    field: Field,
    names: Vec<String>,
    relations: Vec<MultiPoly>,
    order: MonomialOrder,
    rel_basis: OnceLock<Vec<OPoly>>,
}

impl Clone for QuotientRing {
    fn clone(&self) -> Self {
        QuotientRing {
            field: self.field,
            names: self.names.clone(),
            relations: self.relations.clone(),
            order: self.order,
            rel_basis: self.rel_basis.clone(),
        }
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.names == other.names
            && self.order == other.order
            && self.relation_basis() == other.relation_basis()
    }
}

impl QuotientRing {
    pub fn new(field: Field, names: Vec<String>, relations: Vec<MultiPoly>) -> QuotientRing {
        QuotientRing::with_order(field, names, relations, MonomialOrder::GrevLex)
    }

    pub fn with_order(
        field: Field,
        names: Vec<String>,
        relations: Vec<MultiPoly>,
        order: MonomialOrder,
    ) -> QuotientRing {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        QuotientRing { field, names, relations, order, rel_basis: OnceLock::new() }
    }

    pub fn polynomial(field: Field, names: Vec<String>) -> QuotientRing {
        QuotientRing::new(field, names, Vec::new())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    /// True when there are no relations.
    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub(crate) fn relation_opolys(&self) -> &[OPoly] {
        self.rel_basis.get_or_init(|| {
            let gens: Vec<OPoly> = self.relations.iter().map(|r| OPoly::from_multi(r, self.order)).collect();
            groebner(&gens, self.order)
        })
    }

    /// Reduced Gröbner basis of the relation ideal.
    pub fn relation_basis(&self) -> Vec<MultiPoly> {
        self.relation_opolys().iter().map(|p| p.to_multi(self.field, self.nvars())).collect()
    }

    /// Normal form modulo the relations.
    pub fn nf(&self, p: &MultiPoly) -> MultiPoly {
        if self.relations.is_empty() {
            return p.clone();
        }
        let r = reduce(&OPoly::from_multi(p, self.order), self.relation_opolys(), self.order);
        r.to_multi(self.field, self.nvars())
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        self.nf(&MultiPoly::var(self.field, self.nvars(), i))
    }

    pub fn var_by_name(&self, name: &str) -> Option<MultiPoly> {
        self.names.iter().position(|n| n == name).map(|i| self.var(i))
    }

    pub fn constant(&self, c: i64) -> MultiPoly {
        self.nf(&MultiPoly::from_i64(self.field, self.nvars(), c))
    }

    pub fn parse(&self, src: &str) -> Result<MultiPoly, KernelError> {
        self.parse_with_aliases(src, &HashMap::new())
    }

    pub fn parse_with_aliases(
        &self,
        src: &str,
        aliases: &HashMap<String, MultiPoly>,
    ) -> Result<MultiPoly, KernelError> {
        Ok(self.nf(&parse_poly_with_aliases(src, self.field, &self.names, aliases)?))
    }

    pub fn display(&self, p: &MultiPoly) -> String {
        p.display_with(&self.names)
    }

    /// Whether the ring is zero, i.e. the relations generate `(1)`.
    pub fn is_zero_ring(&self) -> bool {
        self.relation_opolys().iter().any(|p| p.lm().iter().all(|&e| e == 0))
    }
}

impl Ring for QuotientRing {
    type Elem = MultiPoly;
    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.field, self.nvars())
    }
    fn one(&self) -> MultiPoly {
        self.constant(1)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a - b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.nf(&(a * b))
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> MultiPoly {
        self.constant(v)
    }
    fn is_domain(&self) -> bool {
        self.relations.is_empty()
    }
    fn div_exact(&self, a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
        if self.relations.is_empty() {
            a.div_exact(b)
        } else {
            None
        }
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.names.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.display(r)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}
