//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::unipoly::push_term;
use super::{Field, FieldElem, UniPoly};

/// Exponent vector; its length is the arity of the ambient ring.
pub type Monomial = Vec<u32>;

/// A polynomial as a map from exponent vectors to nonzero coefficients.
///
/// Keys are ordered lexicographically with variable 0 most significant, so the last key is the
/// lex-leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> MultiPoly {
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElem, nvars: usize) -> MultiPoly {
        MultiPoly::monomial(c, vec![0; nvars])
    }

    pub fn one(field: Field, nvars: usize) -> MultiPoly {
        MultiPoly::constant(field.one(), nvars)
    }

    pub fn from_i64(field: Field, nvars: usize, c: i64) -> MultiPoly {
        MultiPoly::constant(field.from_i64(c), nvars)
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(field.one(), e)
    }

    pub fn monomial(c: FieldElem, exps: Monomial) -> MultiPoly {
        let field = c.field();
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { field, nvars, terms }
    }

    pub fn from_terms(field: Field, nvars: usize, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> MultiPoly {
        let mut p = MultiPoly::zero(field, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// Embeds `u(t)` with `t` mapped to variable `i`.
    pub fn from_uni(u: &UniPoly, nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::from_terms(
            u.field(),
            nvars,
            u.coeffs().iter().enumerate().map(|(d, c)| {
                let mut e = vec![0; nvars];
                e[i] = d as u32;
                (e, c.clone())
            }),
        )
    }

    /// The univariate polynomial in variable `i`, if no other variable occurs.
    pub fn to_uni(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(j, &e)| j != i && e != 0) {
                return None;
            }
            let d = m[i] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, self.field.zero());
            }
            coeffs[d] = c.clone();
        }
        Some(UniPoly::new(self.field, coeffs))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    /// Whether variable `i` occurs.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    pub fn scale(&self, c: &FieldElem) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &FieldElem, mono: &[u32]) -> MultiPoly {
        MultiPoly::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.iter().zip(mono).map(|(x, y)| x + y).collect(), a * c)),
        )
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; all images share one ambient ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let (field, target) = match images.first() {
            Some(p) => (p.field, p.nvars),
            None => (self.field, 0),
        };
        let mut cache: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.nvars];
        let mut out = MultiPoly::zero(field, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(MultiPoly::one(field, target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Renames variables into an ambient ring with `nvars` variables: variable `i` becomes
    /// variable `var_map[i]`.
    pub fn embed(&self, nvars: usize, var_map: &[usize]) -> MultiPoly {
        MultiPoly::from_terms(
            self.field,
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (e, c.clone())
            }),
        )
    }

    /// Evaluates at a point of `k^n`.
    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                t = &t * &x.pow(e as u64);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficients as a polynomial in variable `i`: `self = sum_d out[d] * x_i^d`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for (m, c) in &self.terms {
            let d = m[i] as usize;
            while out.len() <= d {
                out.push(MultiPoly::zero(self.field, self.nvars));
            }
            let mut rest = m.clone();
            rest[i] = 0;
            out[d].add_term(rest, c.clone());
        }
        out
    }

    /// Exact division in the polynomial ring (no relations): `Some(q)` iff `self = q * d`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.terms.iter().next_back()?;
        let inv = dc.inv()?;
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.field, self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if m.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(dm).map(|(a, b)| a - b).collect();
            let qc = c * &inv;
            rem = &rem - &d.mul_monomial(&qc, &qm);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Canonical infix rendering with the given variable names, lex-descending terms.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &FieldElem)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut s = String::new();
        for (m, c) in terms {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            push_term(&mut s, c, &mono.join("*"));
        }
        s
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.iter().zip(mb).map(|(x, y)| x + y).collect(), a * b);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}
