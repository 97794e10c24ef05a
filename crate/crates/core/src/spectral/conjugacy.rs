use rand::Rng;

use super::higgs::HiggsChart;
use crate::kernel::matrix::{det, kernel};
use crate::kernel::{Field, FieldElem, Matrix, UniPoly, UniRing};
use crate::{Error, Result};

/// Outcome of a bounded search for `g ∈ GL_n(k[t])` with `g Φ = Φ' g`.
#[derive(Clone, Debug, PartialEq)]
pub enum ConjugacyResult {
    /// `g Φ = Φ' g` and `det g` is a nonzero constant.
    Found { g: Matrix<UniPoly>, degree: usize },
    /// Characteristic polynomials differ.
    NotConjugate { reason: String },
    /// No invertible solution with entries of degree at most `bound`.
    Undecided { bound: usize },
}

impl ConjugacyResult {
    pub fn is_found(&self) -> bool {
        matches!(self, ConjugacyResult::Found { .. })
    }
}

/// Default degree bound: twice the largest entry degree of either matrix, at least 1.
pub fn default_bound(phi: &HiggsChart, psi: &HiggsChart) -> usize {
    (2 * phi.max_entry_degree().max(psi.max_entry_degree())).max(1)
}

/// Solves `g Φ = Φ' g` over a finite field with entries of `g` of degree `<= d`, for
/// `d = 0, 1, ..., bound`. At each `d` the kernel basis vectors are tried first, then every
/// projective point of a small kernel, then `trials` random combinations. A candidate is kept
/// when `det g` is a nonzero constant.
pub fn conjugacy_search<R: Rng + ?Sized>(
    phi: &HiggsChart,
    psi: &HiggsChart,
    bound: usize,
    trials: usize,
    rng: &mut R,
) -> Result<ConjugacyResult> {
    let field = phi.field();
    if !field.is_finite() {
        return Err(Error::Unsupported("conjugacy search needs a finite field".into()));
    }
    if phi.rank() != psi.rank() {
        return Err(Error::Shape(format!("ranks {} and {}", phi.rank(), psi.rank())));
    }
    if phi.char_coeffs() != psi.char_coeffs() {
        return Ok(ConjugacyResult::NotConjugate { reason: "characteristic polynomials differ".into() });
    }
    let n = phi.rank();
    let ring = UniRing(field);
    for d in 0..=bound {
        let sys = linear_system(field, phi.matrix(), psi.matrix(), d);
        let basis = kernel(&field, &sys);
        if basis.is_empty() {
            continue;
        }
        let to_matrix = |v: &[FieldElem]| -> Matrix<UniPoly> {
            Matrix::from_fn(n, n, |a, b| {
                let off = (a * n + b) * (d + 1);
                UniPoly::new(field, v[off..off + d + 1].to_vec())
            })
        };
        let accept = |g: &Matrix<UniPoly>| -> bool {
            let dg = det(&ring, g).expect("square");
            !dg.is_zero() && dg.is_constant()
        };
        let mut candidates: Vec<Vec<FieldElem>> = basis.clone();
        candidates.extend(projective_points(field, &basis, 400));
        for _ in 0..trials {
            candidates.push(combine(field, &basis, &basis.iter().map(|_| field.random(rng)).collect::<Vec<_>>()));
        }
        for v in candidates {
            let g = to_matrix(&v);
            if accept(&g) && g.mul(&ring, phi.matrix())? == psi.matrix().mul(&ring, &g)? {
                return Ok(ConjugacyResult::Found { g, degree: d });
            }
        }
    }
    Ok(ConjugacyResult::Undecided { bound })
}

/// Coefficient matrix of `g Φ - Φ' g` in the unknown coefficients of `g`; unknown
/// `(a, b, e)` is the coefficient of `t^e` in `g_ab`.
fn linear_system(field: Field, phi: &Matrix<UniPoly>, psi: &Matrix<UniPoly>, d: usize) -> Matrix<FieldElem> {
    let n = phi.rows();
    let deg = |m: &Matrix<UniPoly>| m.to_rows().iter().flatten().filter_map(|a| a.degree()).max().unwrap_or(0);
    let top = d + deg(phi).max(deg(psi)) + 1;
    let rows = n * n * top;
    let cols = n * n * (d + 1);
    let mut m = Matrix::from_fn(rows, cols, |_, _| field.zero());
    let var = |a: usize, b: usize, e: usize| (a * n + b) * (d + 1) + e;
    let eq = |a: usize, c: usize, f: usize| (a * n + c) * top + f;
    for a in 0..n {
        for c in 0..n {
            for b in 0..n {
                // + g_ab Φ_bc
                for (k, coef) in phi.get(b, c).coeffs().iter().enumerate() {
                    for e in 0..=d {
                        let (r, col) = (eq(a, c, e + k), var(a, b, e));
                        m.set(r, col, m.get(r, col) + coef);
                    }
                }
                // - Φ'_ab g_bc
                for (k, coef) in psi.get(a, b).coeffs().iter().enumerate() {
                    for e in 0..=d {
                        let (r, col) = (eq(a, c, e + k), var(b, c, e));
                        m.set(r, col, m.get(r, col) - coef);
                    }
                }
            }
        }
    }
    m
}

fn combine(field: Field, basis: &[Vec<FieldElem>], coeffs: &[FieldElem]) -> Vec<FieldElem> {
    let mut out = vec![field.zero(); basis[0].len()];
    for (v, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(v) {
            *o = &*o + &(a * c);
        }
    }
    out
}

/// Every combination with first nonzero coefficient 1, if there are at most `limit` of them.
fn projective_points(field: Field, basis: &[Vec<FieldElem>], limit: usize) -> Vec<Vec<FieldElem>> {
    let p = field.characteristic() as usize;
    let k = basis.len();
    let count: Option<usize> =
        (0..k).try_fold(0usize, |acc, i| p.checked_pow(i as u32).and_then(|x| acc.checked_add(x)));
    if k < 2 || count.map_or(true, |c| c > limit) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for lead in 0..k {
        // coefficient 1 at `lead`, zero before, anything after
        let free = k - lead - 1;
        for code in 0..p.pow(free as u32) {
            let mut coeffs = vec![field.zero(); k];
            coeffs[lead] = field.one();
            let mut c = code;
            for slot in coeffs.iter_mut().skip(lead + 1) {
                *slot = field.from_i64((c % p) as i64);
                c /= p;
            }
            out.push(combine(field, basis, &coeffs));
        }
    }
    out
}
