use crate::cover::{r_basis, CoverChart};
use crate::groebner::Ideal;
use crate::kernel::matrix::det;
use crate::kernel::{Matrix, MultiPoly, UniPoly};
use crate::{Error, Result};

use super::GeneralizedDivisor;

/// Presentation matrix of `pi_*(S/I)` over the base: column `(g, j)` holds the coordinates of
/// `g * b_j` in the free basis.
pub fn pushforward_presentation(chart: &CoverChart, ideal: &Ideal) -> Matrix<MultiPoly> {
    let n = chart.degree();
    let mut cols: Vec<Vec<MultiPoly>> = Vec::new();
    for g in ideal.canonical_generators() {
        for j in 0..n {
            let c = chart.coords(&chart.ring().nf(&(&g * &chart.basis_element(j))));
            if c.iter().any(|a| !a.is_zero()) && !cols.contains(&c) {
                cols.push(c);
            }
        }
    }
    Matrix::from_columns(n, &cols)
}

/// `Fitt_0(pi_*(S/I))` as the ideal of maximal minors of the presentation matrix.
pub fn fitting_ideal_minors(chart: &CoverChart, ideal: &Ideal) -> Ideal {
    let base = chart.base();
    let m = pushforward_presentation(chart, ideal);
    let n = m.rows();
    let rows: Vec<usize> = (0..n).collect();
    let mut minors = Vec::new();
    for cols in subsets(m.cols(), n) {
        let d = det(&**base, &m.select(&rows, &cols)).expect("square minor");
        if !d.is_zero() {
            minors.push(d);
        }
    }
    Ideal::new(base, minors)
}

/// `Fitt_0(pi_*(S/I))` over `k[t]`: the determinant of the Hermite basis of `I` as a lattice.
pub fn fitting_generator(chart: &CoverChart, ideal: &Ideal) -> Result<UniPoly> {
    chart.require_principal_base()?;
    r_basis(chart, ideal)
        .det()
        .ok_or_else(|| Error::Degenerate(format!("{} has no regular element; S/I is not torsion", ideal)))
}

/// `pi_*(D) = Fitt_0(pi_*(S/I)) - (Nm f)` for `D = D' - (f)`.
pub fn direct_image(chart: &CoverChart, d: &GeneralizedDivisor) -> Result<GeneralizedDivisor> {
    if **d.ring() != **chart.ring() {
        return Err(Error::Incompatible("divisor is not on the cover".into()));
    }
    let base = chart.base();
    let fitt = if chart.has_principal_base() {
        Ideal::new(base, vec![chart.uni_to_base(&fitting_generator(chart, d.ideal())?)])
    } else {
        let f = fitting_ideal_minors(chart, d.ideal());
        if f.is_zero() {
            return Err(Error::Degenerate(format!("{} has a zero Fitting ideal", d.ideal())));
        }
        f
    };
    let negative = d.negative().map(|f| chart.element_norm(f));
    GeneralizedDivisor::new(fitt, negative)
}

/// `pi^*(D)`: the extension of the ideal and of the negative part to `S`.
pub fn inverse_image(chart: &CoverChart, d: &GeneralizedDivisor) -> Result<GeneralizedDivisor> {
    if **d.ring() != **chart.base() {
        return Err(Error::Incompatible("divisor is not on the base".into()));
    }
    let gens = d.ideal().generators().iter().map(|g| chart.embed_base(g)).collect();
    let negative = d.negative().map(|f| chart.embed_base(f));
    GeneralizedDivisor::new(Ideal::new(chart.ring(), gens), negative)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
