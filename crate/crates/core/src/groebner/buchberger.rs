//! Buchberger's algorithm on term lists kept sorted by a fixed monomial order.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::order::{divides, lcm, quotient, MonomialOrder};
use crate::kernel::{Field, FieldElem, Monomial, MultiPoly};

/// Terms in ascending order, so the leading term is last.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct OPoly {
    pub terms: Vec<(Monomial, FieldElem)>,
}

impl OPoly {
    pub fn from_multi(p: &MultiPoly, order: MonomialOrder) -> OPoly {
        let mut terms: Vec<(Monomial, FieldElem)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        OPoly { terms }
    }

    pub fn to_multi(&self, field: Field, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(field, nvars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    pub fn lc(&self) -> &FieldElem {
        &self.terms.last().expect("nonzero").1
    }

    pub fn monic(mut self) -> OPoly {
        if let Some(inv) = self.terms.last().and_then(|t| t.1.inv()) {
            for t in self.terms.iter_mut() {
                t.1 = &t.1 * &inv;
            }
        }
        self
    }

    /// `self - c * x^shift * g`.
    pub fn sub_shifted(&self, c: &FieldElem, shift: &[u32], g: &OPoly, order: MonomialOrder) -> OPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(m, a)| {
            let mm: Monomial = m.iter().zip(shift).map(|(x, y)| x + y).collect();
            (mm, -&(a * c))
        });
        let mut next_g = gi.next();
        loop {
            match (self.terms.get(i), next_g.take()) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b);
                    next_g = gi.next();
                }
                (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                    Ordering::Less => {
                        out.push(a.clone());
                        i += 1;
                        next_g = Some(b);
                    }
                    Ordering::Greater => {
                        out.push(b);
                        next_g = gi.next();
                    }
                    Ordering::Equal => {
                        let s = &a.1 + &b.1;
                        if !s.is_zero() {
                            out.push((b.0, s));
                        }
                        i += 1;
                        next_g = gi.next();
                    }
                },
            }
        }
        OPoly { terms: out }
    }
}

/// Full reduction of `f` modulo `basis` (whose elements are monic).
pub(crate) fn reduce(f: &OPoly, basis: &[OPoly], order: MonomialOrder) -> OPoly {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, FieldElem)> = Vec::new();
    while let Some((m, c)) = p.terms.last().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &m)) {
            Some(g) => {
                let shift = quotient(&m, g.lm());
                let coef = &c * &g.lc().inv().expect("nonzero lead");
                p = p.sub_shifted(&coef, &shift, g, order);
            }
            None => {
                p.terms.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    OPoly { terms: rem }
}

fn spoly(f: &OPoly, g: &OPoly, order: MonomialOrder) -> OPoly {
    let l = lcm(f.lm(), g.lm());
    let sf = quotient(&l, f.lm());
    let sg = quotient(&l, g.lm());
    let inv_f = f.lc().inv().expect("nonzero lead");
    let inv_g = g.lc().inv().expect("nonzero lead");
    let zero = OPoly { terms: Vec::new() };
    let a = zero.sub_shifted(&-&inv_f, &sf, f, order);
    a.sub_shifted(&inv_g, &sg, g, order)
}

/// Reduced Gröbner basis, monic, sorted by ascending leading monomial.
pub(crate) fn groebner(gens: &[OPoly], order: MonomialOrder) -> Vec<OPoly> {
    let mut g: Vec<OPoly> = Vec::new();
    for f in gens {
        if !f.is_zero() {
            let r = reduce(f, &g, order);
            if !r.is_zero() {
                g.push(r.monic());
            }
        }
    }
    if g.iter().any(|p| p.lm().iter().all(|&e| e == 0)) {
        return vec![g.into_iter().find(|p| p.lm().iter().all(|&e| e == 0)).unwrap()];
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal selection strategy, degree first for stability under lex
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lcm(g[a.0].lm(), g[a.1].lm());
                let lb = lcm(g[b.0].lm(), g[b.1].lm());
                let da: u32 = la.iter().sum();
                let db: u32 = lb.iter().sum();
                da.cmp(&db).then_with(|| order.cmp(&la, &lb)).then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let l = lcm(g[i].lm(), g[j].lm());
        // product criterion
        if g[i].lm().iter().zip(g[j].lm()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // chain criterion
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        if (0..g.len()).any(|k| {
            k != i && k != j && divides(g[k].lm(), &l) && !pending.contains(&key(i, k)) && !pending.contains(&key(j, k))
        }) {
            continue;
        }
        let s = spoly(&g[i], &g[j], order);
        let r = reduce(&s, &g, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.lm().iter().all(|&e| e == 0) {
            return vec![r];
        }
        let n = g.len();
        g.push(r);
        for k in 0..n {
            pending.insert((k, n));
        }
    }
    interreduce(g, order)
}

fn interreduce(g: Vec<OPoly>, order: MonomialOrder) -> Vec<OPoly> {
    let mut g = g;
    g.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<OPoly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| divides(q.lm(), p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lead = minimal[i].terms.last().cloned().unwrap();
        let tail = OPoly { terms: minimal[i].terms[..minimal[i].terms.len() - 1].to_vec() };
        let mut red = reduce(&tail, &others, order);
        red.terms.push(lead);
        out.push(red.monic());
    }
    out
}

/// Whether every S-polynomial of `basis` reduces to zero.
pub(crate) fn is_groebner(basis: &[OPoly], order: MonomialOrder) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            if !reduce(&spoly(&basis[i], &basis[j], order), basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}
