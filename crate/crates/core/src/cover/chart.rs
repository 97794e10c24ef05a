use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::groebner::{MonomialOrder, QuotientRing};
use crate::kernel::matrix::{det, Matrix};
use crate::kernel::{Field, MultiPoly, Ring, UniPoly};
use crate::{Error, Result};

/// How the cover ring is presented over the base.
#[derive(Clone, Debug, PartialEq)]
pub enum CoverForm {
    /// `R[x]/(x^n + a_1 x^(n-1) + ... + a_n)` with basis `1, x, ..., x^(n-1)`.
    Monic { var: String, coeffs: Vec<MultiPoly> },
    /// Free basis `1, e_2, ..., e_n` with `table[i][j]` the coordinates of `b_i * b_j`.
    Free { names: Vec<String>, table: Vec<Vec<Vec<MultiPoly>>> },
}

/// A finite free cover `R -> S` on an affine chart.
///
/// `S` is presented as a quotient of `k[cover variables, base variables]`; the cover variables
/// come first.
#[derive(Clone, Debug)]
pub struct CoverChart {
    base: Arc<QuotientRing>,
    form: CoverForm,
    degree: usize,
    table: Vec<Vec<Vec<MultiPoly>>>,
    ring: Arc<QuotientRing>,
    /// The twisting line bundle is trivialized on the chart; twists survive only as exponents
    /// carried by the objects built on it.
    pub twist_trivialized: bool,
}

impl PartialEq for CoverChart {
    fn eq(&self, other: &Self) -> bool {
        *self.base == *other.base && self.form == other.form
    }
}

impl CoverChart {
    /// `S = R[x]/(P)` for `P = x^n + coeffs[0] x^(n-1) + ... + coeffs[n-1]`.
    pub fn monic(base: Arc<QuotientRing>, var: &str, coeffs: Vec<MultiPoly>) -> Result<CoverChart> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::InvalidCover("monic cover of degree 0".into()));
        }
        if base.names().iter().any(|b| b == var) {
            return Err(Error::InvalidCover(format!("cover variable {var} clashes with the base")));
        }
        let coeffs: Vec<MultiPoly> = coeffs.iter().map(|a| base.nf(a)).collect();
        // coordinates of x^k for k < 2n - 1; x^n = -(a_1 x^(n-1) + ... + a_n)
        let mut powers: Vec<Vec<MultiPoly>> = Vec::new();
        for k in 0..n {
            let mut v = vec![base.zero(); n];
            v[k] = base.one();
            powers.push(v);
        }
        let top: Vec<MultiPoly> = (0..n).map(|j| base.neg(&coeffs[n - 1 - j])).collect();
        while powers.len() < 2 * n - 1 {
            let prev = powers.last().unwrap().clone();
            let mut next = vec![base.zero(); n];
            next[1..n].clone_from_slice(&prev[..(n - 1)]);
            for j in 0..n {
                next[j] = base.add(&next[j], &base.mul(&prev[n - 1], &top[j]));
            }
            powers.push(next);
        }
        let table: Vec<Vec<Vec<MultiPoly>>> = (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect();
        let form = CoverForm::Monic { var: var.to_string(), coeffs };
        CoverChart::assemble(base, form, table)
    }

    /// `S = k[t][x]/(x^n + a_1 x^(n-1) + ... + a_n)` with the `a_i` given as literals in `t`.
    pub fn monic_over_line(field: Field, coeffs: &[&str]) -> Result<CoverChart> {
        let base = Arc::new(QuotientRing::polynomial(field, vec!["t".into()]));
        let a = coeffs.iter().map(|c| base.parse(c)).collect::<std::result::Result<Vec<_>, _>>()?;
        CoverChart::monic(base, "x", a)
    }

    /// Free cover with basis `1, names...`; `table[i][j]` gives `b_i * b_j` for the full basis
    /// including `b_0 = 1`.
    pub fn free(base: Arc<QuotientRing>, names: Vec<String>, table: Vec<Vec<Vec<MultiPoly>>>) -> Result<CoverChart> {
        let n = names.len() + 1;
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|c| c.len() != n)) {
            return Err(Error::InvalidCover(format!("multiplication table must be {n}x{n} with {n} coordinates")));
        }
        if let Some(clash) = names.iter().find(|e| base.names().contains(e)) {
            return Err(Error::InvalidCover(format!("basis name {clash} clashes with the base")));
        }
        let table: Vec<Vec<Vec<MultiPoly>>> =
            table.iter().map(|row| row.iter().map(|c| c.iter().map(|a| base.nf(a)).collect()).collect()).collect();
        for i in 0..n {
            let mut unit = vec![base.zero(); n];
            unit[i] = base.one();
            if table[0][i] != unit || table[i][0] != unit {
                return Err(Error::InvalidCover(format!("b_0 must act as the identity on b_{i}")));
            }
            for j in 0..n {
                if table[i][j] != table[j][i] {
                    return Err(Error::InvalidCover(format!("table is not commutative at ({i}, {j})")));
                }
            }
        }
        let form = CoverForm::Free { names, table: table.clone() };
        let chart = CoverChart::assemble(base, form, table)?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ei = chart.unit_coords(i);
                    let ej = chart.unit_coords(j);
                    let ek = chart.unit_coords(k);
                    let lhs = chart.mul_coords(&chart.mul_coords(&ei, &ej), &ek);
                    let rhs = chart.mul_coords(&ei, &chart.mul_coords(&ej, &ek));
                    if lhs != rhs {
                        return Err(Error::InvalidCover(format!("table is not associative at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(chart)
    }

    fn assemble(base: Arc<QuotientRing>, form: CoverForm, table: Vec<Vec<Vec<MultiPoly>>>) -> Result<CoverChart> {
        let degree = table.len();
        let cover_names: Vec<String> = match &form {
            CoverForm::Monic { var, .. } => vec![var.clone()],
            CoverForm::Free { names, .. } => names.clone(),
        };
        let c = cover_names.len();
        let nb = base.nvars();
        let mut names = cover_names;
        names.extend(base.names().iter().cloned());
        let total = names.len();
        let shift: Vec<usize> = (c..c + nb).collect();
        let field = base.field();
        let mut rels: Vec<MultiPoly> = base.relations().iter().map(|r| r.embed(total, &shift)).collect();
        match &form {
            CoverForm::Monic { coeffs, .. } => {
                let x = MultiPoly::var(field, total, 0);
                let mut p = x.pow(degree as u32);
                for (i, a) in coeffs.iter().enumerate() {
                    p = &p + &(&a.embed(total, &shift) * &x.pow((degree - 1 - i) as u32));
                }
                rels.push(p);
            }
            CoverForm::Free { .. } => {
                for i in 1..degree {
                    for j in i..degree {
                        let mut r = &MultiPoly::var(field, total, i - 1) * &MultiPoly::var(field, total, j - 1);
                        for (k, a) in table[i][j].iter().enumerate() {
                            let bk =
                                if k == 0 { MultiPoly::one(field, total) } else { MultiPoly::var(field, total, k - 1) };
                            r = &r - &(&a.embed(total, &shift) * &bk);
                        }
                        rels.push(r);
                    }
                }
            }
        }
        // block order: normal forms are reduced in the cover variables first
        let ring = Arc::new(QuotientRing::with_order(field, names, rels, MonomialOrder::Block(c)));
        Ok(CoverChart { base, form, degree, table, ring, twist_trivialized: true })
    }

    pub fn base(&self) -> &Arc<QuotientRing> {
        &self.base
    }

    /// The cover ring `S`.
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn form(&self) -> &CoverForm {
        &self.form
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of cover variables in the ambient presentation of `S`.
    pub fn cover_vars(&self) -> usize {
        match &self.form {
            CoverForm::Monic { .. } => 1,
            CoverForm::Free { names, .. } => names.len(),
        }
    }

    /// Whether the base is `k[t]`, a principal ideal domain.
    pub fn has_principal_base(&self) -> bool {
        self.base.nvars() == 1 && self.base.is_free()
    }

    pub(crate) fn require_principal_base(&self) -> Result<()> {
        if self.has_principal_base() {
            Ok(())
        } else {
            Err(Error::UnsupportedBase(format!("{} is not k[t]", self.base)))
        }
    }

    /// `a_1, ..., a_n` of a monic cover.
    pub fn coefficients(&self) -> Option<&[MultiPoly]> {
        match &self.form {
            CoverForm::Monic { coeffs, .. } => Some(coeffs),
            CoverForm::Free { .. } => None,
        }
    }

    /// The cover variable `x` of a monic cover, as an element of `S`.
    pub fn x(&self) -> Option<MultiPoly> {
        match &self.form {
            CoverForm::Monic { .. } => Some(self.ring.var(0)),
            CoverForm::Free { .. } => None,
        }
    }

    /// Index map from base variables into the variables of `S`.
    pub fn base_embedding(&self) -> Vec<usize> {
        let c = self.cover_vars();
        (c..c + self.base.nvars()).collect()
    }

    /// The structure map `R -> S`.
    pub fn embed_base(&self, a: &MultiPoly) -> MultiPoly {
        self.ring.nf(&a.embed(self.ring.nvars(), &self.base_embedding()))
    }

    /// Basis element `b_j` as an element of `S`.
    pub fn basis_element(&self, j: usize) -> MultiPoly {
        let (f, n) = (self.field(), self.ring.nvars());
        match &self.form {
            CoverForm::Monic { .. } => self.ring.nf(&MultiPoly::var(f, n, 0).pow(j as u32)),
            CoverForm::Free { .. } if j == 0 => MultiPoly::one(f, n),
            CoverForm::Free { .. } => MultiPoly::var(f, n, j - 1),
        }
    }

    pub fn unit_coords(&self, j: usize) -> Vec<MultiPoly> {
        let mut v = vec![self.base.zero(); self.degree];
        v[j] = self.base.one();
        v
    }

    pub fn mul_coords(&self, a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
        let n = self.degree;
        let mut out = vec![self.base.zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for k in 0..n {
                    if !self.table[i][j][k].is_zero() {
                        out[k] = &out[k] + &(&ab * &self.table[i][j][k]);
                    }
                }
            }
        }
        out.iter().map(|c| self.base.nf(c)).collect()
    }

    /// Coordinates over `R` of an element of `S` in the free basis.
    pub fn coords(&self, f: &MultiPoly) -> Vec<MultiPoly> {
        let c = self.cover_vars();
        let nb = self.base.nvars();
        let var_coords: Vec<Vec<MultiPoly>> = match &self.form {
            CoverForm::Monic { coeffs, .. } => {
                if self.degree == 1 {
                    vec![vec![self.base.neg(&coeffs[0])]]
                } else {
                    vec![self.unit_coords(1)]
                }
            }
            CoverForm::Free { .. } => (1..self.degree).map(|j| self.unit_coords(j)).collect(),
        };
        let mut cache: HashMap<Vec<u32>, Vec<MultiPoly>> = HashMap::new();
        let mut out = vec![self.base.zero(); self.degree];
        for (m, coef) in f.terms() {
            let cover_part = m[..c].to_vec();
            let base_mono = MultiPoly::monomial(coef.clone(), m[c..].to_vec());
            debug_assert_eq!(base_mono.nvars(), nb);
            let v = cache
                .entry(cover_part.clone())
                .or_insert_with(|| {
                    let mut acc = self.unit_coords(0);
                    for (i, &e) in cover_part.iter().enumerate() {
                        for _ in 0..e {
                            acc = self.mul_coords(&acc, &var_coords[i]);
                        }
                    }
                    acc
                })
                .clone();
            for k in 0..self.degree {
                if !v[k].is_zero() {
                    out[k] = &out[k] + &(&v[k] * &base_mono);
                }
            }
        }
        out.iter().map(|a| self.base.nf(a)).collect()
    }

    /// The element `sum_j coords[j] * b_j` of `S`.
    pub fn from_coords(&self, coords: &[MultiPoly]) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.field(), self.ring.nvars());
        for (j, a) in coords.iter().enumerate() {
            acc = &acc + &(&a.embed(self.ring.nvars(), &self.base_embedding()) * &self.basis_element(j));
        }
        self.ring.nf(&acc)
    }

    /// Matrix of multiplication by `f` over `R`; column `j` holds the coordinates of `f * b_j`.
    pub fn multiplication_matrix(&self, f: &MultiPoly) -> Matrix<MultiPoly> {
        let fc = self.coords(f);
        let cols: Vec<Vec<MultiPoly>> = (0..self.degree).map(|j| self.mul_coords(&fc, &self.unit_coords(j))).collect();
        Matrix::from_columns(self.degree, &cols)
    }

    /// `Nm(f) = det(multiplication by f)`.
    pub fn element_norm(&self, f: &MultiPoly) -> MultiPoly {
        det(&*self.base, &self.multiplication_matrix(f)).expect("square")
    }

    pub fn element_trace(&self, f: &MultiPoly) -> MultiPoly {
        self.multiplication_matrix(f).trace(&*self.base).expect("square")
    }

    /// Whether `f` is a nonzerodivisor of `S`.
    pub fn is_regular(&self, f: &MultiPoly) -> bool {
        if self.base.is_free() {
            // S is free over a domain: f is regular iff its norm is nonzero
            return !self.element_norm(f).is_zero();
        }
        crate::groebner::Ideal::zero(&self.ring).colon_element(f).is_zero()
    }

    /// An element of the base `k[t]` as a univariate polynomial.
    pub fn base_to_uni(&self, a: &MultiPoly) -> Result<UniPoly> {
        self.require_principal_base()?;
        Ok(a.to_uni(0).expect("single variable"))
    }

    pub fn uni_to_base(&self, u: &UniPoly) -> MultiPoly {
        MultiPoly::from_uni(u, self.base.nvars(), 0)
    }

    /// `P(x)` of a monic cover, as a polynomial with base coefficients: `[1, a_1, ..., a_n]`.
    pub fn cover_polynomial(&self) -> Option<Vec<MultiPoly>> {
        self.coefficients().map(|c| {
            let mut v = vec![self.base.one()];
            v.extend(c.iter().cloned());
            v
        })
    }

    pub fn display(&self, f: &MultiPoly) -> String {
        self.ring.display(f)
    }
}

impl fmt::Display for CoverChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.ring, self.base)
    }
}
