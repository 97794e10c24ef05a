use std::fmt;
use std::sync::Arc;

use crate::cover::CoverChart;
use crate::groebner::QuotientRing;
use crate::kernel::matrix::{char_poly, det};
use crate::kernel::{Field, Matrix, MultiPoly, UniPoly, UniRing};
use crate::{Error, Result};

/// A Higgs field on a chart of the line with `L` trivialized: an `n x n` matrix over `k[t]`.
///
/// `twist` is the exponent `k` when the matrix describes `E ⊗ L^k` rather than `E`; it is
/// bookkeeping only and never enters the arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct HiggsChart {
    field: Field,
    phi: Matrix<UniPoly>,
    pub twist: i32,
}

impl HiggsChart {
    pub fn new(field: Field, phi: Matrix<UniPoly>) -> Result<HiggsChart> {
        if !phi.is_square() || phi.rows() == 0 {
            return Err(Error::Shape(format!("Higgs matrix is {}x{}", phi.rows(), phi.cols())));
        }
        if phi.to_rows().iter().flatten().any(|a| a.field() != field) {
            return Err(Error::Incompatible(format!("entries not over {field}")));
        }
        Ok(HiggsChart { field, phi, twist: 0 })
    }

    /// Parses rows of polynomial literals in `t`.
    pub fn parse(field: Field, rows: &[Vec<String>]) -> Result<HiggsChart> {
        let ring = QuotientRing::polynomial(field, vec!["t".into()]);
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for src in row {
                out.push(ring.parse(src)?.to_uni(0).expect("one variable"));
            }
            parsed.push(out);
        }
        HiggsChart::new(field, Matrix::from_rows(parsed)?)
    }

    pub fn with_twist(mut self, twist: i32) -> HiggsChart {
        self.twist = twist;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.phi.rows()
    }

    pub fn matrix(&self) -> &Matrix<UniPoly> {
        &self.phi
    }

    /// Largest degree in `t` of an entry; 0 for the zero matrix.
    pub fn max_entry_degree(&self) -> usize {
        self.phi.to_rows().iter().flatten().filter_map(|a| a.degree()).max().unwrap_or(0)
    }

    /// `(a_1, ..., a_n)` with `det(x - Φ) = x^n + a_1 x^(n-1) + ... + a_n`.
    pub fn char_coeffs(&self) -> Vec<UniPoly> {
        char_poly(&UniRing(self.field), &self.phi).expect("square")[1..].to_vec()
    }

    pub fn trace(&self) -> UniPoly {
        self.phi.trace(&UniRing(self.field)).expect("square")
    }

    pub fn display(&self) -> String {
        matrix_display(&self.phi)
    }
}

impl fmt::Display for HiggsChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// `[[a, b], [c, d]]` with entries in `t`.
pub fn matrix_display(m: &Matrix<UniPoly>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|a| a.display_with("t")).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// The spectral cover `k[t][x]/(det(x - Φ))`.
pub fn spectral_cover(phi: &HiggsChart) -> Result<CoverChart> {
    cover_from_coeffs(phi.field, &phi.char_coeffs())
}

/// `k[t][x]/(x^n + a_1 x^(n-1) + ... + a_n)`.
pub fn cover_from_coeffs(field: Field, coeffs: &[UniPoly]) -> Result<CoverChart> {
    let base = Arc::new(QuotientRing::polynomial(field, vec!["t".into()]));
    CoverChart::monic(base, "x", coeffs.iter().map(|a| MultiPoly::from_uni(a, 1, 0)).collect())
}

/// Coefficients `a_1..a_n` of a monic cover over `k[t]`.
pub fn cover_coeffs(chart: &CoverChart) -> Result<Vec<UniPoly>> {
    chart.require_principal_base()?;
    let coeffs = chart
        .coefficients()
        .ok_or_else(|| Error::Unsupported("the cover is not presented by a monic polynomial in x".into()))?;
    coeffs.iter().map(|a| chart.base_to_uni(a)).collect()
}

/// Multiplication by `x` on `S` in the basis `1, x, ..., x^(n-1)`: the companion matrix of `P`.
pub fn companion(chart: &CoverChart) -> Result<Matrix<UniPoly>> {
    cover_coeffs(chart)?;
    let x = chart.x().expect("monic cover");
    Ok(chart.multiplication_matrix(&x).map(|a| a.to_uni(0).expect("one variable")))
}

/// Discriminant of `x^n + a_1 x^(n-1) + ... + a_n` up to sign: the resultant of `P` and `P'`.
pub fn discriminant(field: Field, coeffs: &[UniPoly]) -> UniPoly {
    let n = coeffs.len();
    if n <= 1 {
        return UniPoly::one(field);
    }
    // P and P' with highest coefficient first
    let mut p = vec![UniPoly::one(field)];
    p.extend(coeffs.iter().cloned());
    let dp: Vec<UniPoly> = (0..n).map(|i| p[i].scale(&field.from_i64((n - i) as i64))).collect();
    let size = 2 * n - 1;
    let ring = UniRing(field);
    let mut s = Matrix::zeros(&ring, size, size);
    for r in 0..n - 1 {
        for (j, a) in p.iter().enumerate() {
            s.set(r, r + j, a.clone());
        }
    }
    for r in 0..n {
        for (j, a) in dp.iter().enumerate() {
            s.set(n - 1 + r, r + j, a.clone());
        }
    }
    det(&ring, &s).expect("square")
}

/// `(Φ', μ)` with `μ = tr Φ / n` and `Φ' = Φ - μ I` traceless.
pub fn gsp_translate(phi: &HiggsChart) -> Result<(HiggsChart, UniPoly)> {
    let n = phi.rank();
    if n % 2 == 1 {
        return Err(Error::Shape(format!("rank {n} is odd")));
    }
    let inv = phi
        .field
        .from_i64(n as i64)
        .inv()
        .ok_or_else(|| Error::Division(format!("characteristic {} divides {n}", phi.field.characteristic())))?;
    let mu = phi.trace().scale(&inv);
    let shifted = Matrix::from_fn(n, n, |i, j| {
        let a = phi.phi.get(i, j);
        if i == j {
            a - &mu
        } else {
            a.clone()
        }
    });
    Ok((HiggsChart { field: phi.field, phi: shifted, twist: phi.twist }, mu))
}

/// `P(x + μ)` for `P = x^n + a_1 x^(n-1) + ... + a_n`, returned in the same `a` form.
pub fn taylor_shift(field: Field, coeffs: &[UniPoly], mu: &UniPoly) -> Vec<UniPoly> {
    let n = coeffs.len();
    // ascending powers of x; Horner in x + μ
    let mut acc: Vec<UniPoly> = vec![UniPoly::one(field)];
    for a in coeffs {
        let mut next = vec![UniPoly::zero(field); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] + &(c * mu);
        }
        next[0] = &next[0] + a;
        acc = next;
    }
    (0..n).map(|i| acc[n - 1 - i].clone()).collect()
}

/// `χ_Φ(x + μ) = χ_Φ'(x)` with both sides computed independently.
pub fn gsp_char_identity(phi: &HiggsChart, shifted: &HiggsChart, mu: &UniPoly) -> bool {
    taylor_shift(phi.field, &phi.char_coeffs(), mu) == shifted.char_coeffs()
}
