use std::fmt;
use std::sync::{Arc, OnceLock};

use super::buchberger::{groebner, is_groebner, reduce, OPoly};
use super::order::divides;
use super::{MonomialOrder, QuotientRing};
use crate::kernel::{Field, Monomial, MultiPoly};

/// `k`-dimension of a quotient, or `Infinite` when it is not Artinian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dimension::Finite(d) => Some(d),
            Dimension::Infinite => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// An ideal of a [`QuotientRing`], presented by generators. The reduced Gröbner basis of
/// generators plus relations is computed once and cached.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<QuotientRing>,
    gens: Vec<MultiPoly>,
    basis: OnceLock<Vec<OPoly>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.basis_opolys() == other.basis_opolys()
    }
}

const STANDARD_MONOMIAL_LIMIT: u64 = 5_000_000;

impl Ideal {
    pub fn new(ring: &Arc<QuotientRing>, gens: Vec<MultiPoly>) -> Ideal {
        let gens = gens.into_iter().map(|g| ring.nf(&g)).filter(|g| !g.is_zero()).collect();
        Ideal { ring: Arc::clone(ring), gens, basis: OnceLock::new() }
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, vec![MultiPoly::one(ring.field(), ring.nvars())])
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    fn field(&self) -> Field {
        self.ring.field()
    }

    fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    /// Generators, reduced modulo the relations; zero generators are dropped.
    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub(crate) fn basis_opolys(&self) -> &[OPoly] {
        self.basis.get_or_init(|| {
            let order = self.order();
            let mut all: Vec<OPoly> = self.ring.relation_opolys().to_vec();
            all.extend(self.gens.iter().map(|g| OPoly::from_multi(g, order)));
            groebner(&all, order)
        })
    }

    /// Reduced Gröbner basis of generators plus relations in the ambient polynomial ring.
    pub fn groebner_basis(&self) -> Vec<MultiPoly> {
        self.basis_opolys().iter().map(|p| p.to_multi(self.field(), self.nvars())).collect()
    }

    /// Whether the cached basis passes Buchberger's S-polynomial criterion.
    pub fn basis_is_groebner(&self) -> bool {
        is_groebner(self.basis_opolys(), self.order())
    }

    /// Canonical generators: the reduced basis minus elements of the relation ideal, in normal
    /// form modulo the relations, leading terms descending.
    pub fn canonical_generators(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = self
            .basis_opolys()
            .iter()
            .rev()
            .map(|p| self.ring.nf(&p.to_multi(self.field(), self.nvars())))
            .filter(|p| !p.is_zero())
            .collect();
        out.dedup();
        if out.is_empty() && self.is_unit() {
            out.push(MultiPoly::one(self.field(), self.nvars()));
        }
        out
    }

    /// Normal form modulo the ideal.
    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let order = self.order();
        reduce(&OPoly::from_multi(f, order), self.basis_opolys(), order).to_multi(self.field(), self.nvars())
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.basis_opolys().iter().any(|p| p.lm().iter().all(|&e| e == 0))
    }

    /// Whether the ideal is zero in the quotient ring.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        let prod = Ideal::new(&self.ring, g);
        // replace by the reduced basis to keep generator lists small
        Ideal::new(&self.ring, prod.canonical_generators())
    }

    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    pub fn scale(&self, f: &MultiPoly) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g * f).collect())
    }

    /// Intersection, by eliminating `w` from `w*I + (1-w)*J`.
    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let mut a: Vec<MultiPoly> = self.ring.relations().to_vec();
        a.extend(self.gens.iter().cloned());
        let mut b: Vec<MultiPoly> = self.ring.relations().to_vec();
        b.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, intersect_polys(self.field(), self.nvars(), &a, &b))
    }

    /// `(I : f) = { g : g*f in I }`.
    pub fn colon_element(&self, f: &MultiPoly) -> Ideal {
        let f = self.ring.nf(f);
        if self.contains(&f) {
            return Ideal::unit(&self.ring);
        }
        let mut a: Vec<MultiPoly> = self.ring.relations().to_vec();
        a.extend(self.gens.iter().cloned());
        let inter = intersect_polys(self.field(), self.nvars(), &a, std::slice::from_ref(&f));
        let quotients = inter.iter().map(|h| h.div_exact(&f).expect("intersection with (f) lies in (f)")).collect();
        Ideal::new(&self.ring, quotients)
    }

    /// `(I : J) = { g : g*J in I }`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let c = self.colon_element(g);
            acc = Some(match acc {
                None => c,
                Some(a) if a.is_unit() => c,
                Some(a) if c.is_unit() => a,
                Some(a) => a.intersection(&c),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring))
    }

    /// `I : m^infinity` and the number of strict steps in the chain `I : m^k`.
    pub fn saturate(&self, m: &Ideal) -> (Ideal, u32) {
        let mut cur = self.clone();
        let mut n = 0;
        loop {
            let next = cur.colon(m);
            if next == cur {
                return (cur, n);
            }
            cur = next;
            n += 1;
        }
    }

    /// Leading monomials of the Gröbner basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis_opolys().iter().map(|p| p.lm().clone()).collect()
    }

    /// Standard monomials of the quotient, ascending; `None` when the quotient is not Artinian.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let leads = self.leading_monomials();
        let n = self.nvars();
        let mut bounds = vec![0u32; n];
        for (i, b) in bounds.iter_mut().enumerate() {
            *b = leads.iter().filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0)).map(|m| m[i]).min()?;
        }
        if bounds.iter().map(|&b| b as u64).product::<u64>() > STANDARD_MONOMIAL_LIMIT {
            panic!("standard monomial staircase exceeds {STANDARD_MONOMIAL_LIMIT} cells");
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        enumerate_box(&bounds, 0, &mut cur, &leads, &mut out);
        let order = self.order();
        out.sort_by(|a, b| order.cmp(a, b));
        Some(out)
    }

    /// `dim_k` of the quotient by the ideal.
    pub fn artinian_dim(&self) -> Dimension {
        if self.is_unit() {
            return Dimension::Finite(0);
        }
        match self.standard_monomials() {
            Some(s) => Dimension::Finite(s.len() as u64),
            None => Dimension::Infinite,
        }
    }

    /// The ideal in another ring, through the variable renaming `var_map`.
    pub fn map_to(&self, ring: &Arc<QuotientRing>, var_map: &[usize]) -> Ideal {
        Ideal::new(ring, self.gens.iter().map(|g| g.embed(ring.nvars(), var_map)).collect())
    }

    /// Canonical generators with redundant ones removed, largest leading term first.
    pub fn minimal_generators(&self) -> Vec<MultiPoly> {
        let mut kept = self.canonical_generators();
        let mut i = 0;
        while i < kept.len() && kept.len() > 1 {
            let others: Vec<MultiPoly> =
                kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            if Ideal::new(&self.ring, others).contains(&kept[i]) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        kept.iter().map(|g| self.ring.nf(g)).collect()
    }

    pub fn display(&self) -> String {
        let gens: Vec<String> = self.minimal_generators().iter().map(|g| self.ring.display(g)).collect();
        format!("({})", gens.join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

fn enumerate_box(bounds: &[u32], i: usize, cur: &mut Vec<u32>, leads: &[Monomial], out: &mut Vec<Monomial>) {
    if leads.iter().any(|l| divides(l, cur)) {
        return;
    }
    if i == bounds.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..bounds[i] {
        cur[i] = e;
        enumerate_box(bounds, i + 1, cur, leads, out);
        if leads.iter().any(|l| divides(l, cur)) {
            break;
        }
    }
    cur[i] = 0;
}

/// Generators of `(A) ∩ (B)` in `k[x_1..x_n]` (no relations).
pub(crate) fn intersect_polys(field: Field, nvars: usize, a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let order = MonomialOrder::Block(1);
    let shift: Vec<usize> = (1..=nvars).collect();
    let w = MultiPoly::var(field, nvars + 1, 0);
    let one_minus_w = &MultiPoly::one(field, nvars + 1) - &w;
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(OPoly::from_multi(&(&w * &f.embed(nvars + 1, &shift)), order));
    }
    for g in b {
        gens.push(OPoly::from_multi(&(&one_minus_w * &g.embed(nvars + 1, &shift)), order));
    }
    let gb = groebner(&gens, order);
    gb.iter()
        .filter(|p| p.terms.iter().all(|(m, _)| m[0] == 0))
        .map(|p| MultiPoly::from_terms(field, nvars, p.terms.iter().map(|(m, c)| (m[1..].to_vec(), c.clone()))))
        .collect()
}
