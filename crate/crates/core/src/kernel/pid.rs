//! Hermite and Smith normal forms over the principal ideal domain `k[t]`.

use super::matrix::Matrix;
use super::ring::UniRing;
use super::{Field, KernelError, UniPoly};

/// Column Hermite form of the lattice spanned by the columns of a matrix.
///
/// `basis` has one column per pivot. Column `i` vanishes above row `pivots[i]`, its entry there
/// is monic, and entries of earlier columns in that row are reduced modulo it.
#[derive(Clone, Debug, PartialEq)]
pub struct Hermite {
    pub basis: Matrix<UniPoly>,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether the lattice has full rank in the ambient free module.
    pub fn is_full_rank(&self) -> bool {
        self.pivots.len() == self.basis.rows()
    }

    /// Monic generator of the index ideal; `None` unless full rank.
    pub fn det(&self) -> Option<UniPoly> {
        if !self.is_full_rank() {
            return None;
        }
        let f = self.basis.get(0, 0).field();
        Some((0..self.rank()).fold(UniPoly::one(f), |acc, i| &acc * self.basis.get(i, i)))
    }
}

fn col_axpy(cols: &mut [Vec<UniPoly>], dst: usize, q: &UniPoly, src: usize) {
    // cols[dst] -= q * cols[src]
    for r in 0..cols[dst].len() {
        if !cols[src][r].is_zero() {
            cols[dst][r] = &cols[dst][r] - &(q * &cols[src][r]);
        }
    }
}

/// Hermite basis of the `k[t]`-span of the columns of `m`.
pub fn hermite(field: Field, m: &Matrix<UniPoly>) -> Hermite {
    let rows = m.rows();
    let mut work: Vec<Vec<UniPoly>> = (0..m.cols()).map(|j| m.column(j)).collect();
    work.retain(|c| c.iter().any(|a| !a.is_zero()));
    let mut done: Vec<Vec<UniPoly>> = Vec::new();
    let mut pivots = Vec::new();
    for r in 0..rows {
        // Euclid across the column entries in row r
        loop {
            let nz: Vec<usize> = (0..work.len()).filter(|&j| !work[j][r].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let best = *nz.iter().min_by_key(|&&j| work[j][r].degree()).unwrap();
            for &j in &nz {
                if j == best {
                    continue;
                }
                let (q, _) = work[j][r].divrem(&work[best][r]).expect("nonzero divisor");
                col_axpy(&mut work, j, &q, best);
            }
        }
        if let Some(j) = (0..work.len()).find(|&j| !work[j][r].is_zero()) {
            let mut c = work.swap_remove(j);
            let inv = c[r].lead().inv().expect("nonzero lead");
            for a in c.iter_mut() {
                *a = a.scale(&inv);
            }
            pivots.push(r);
            done.push(c);
        }
        work.retain(|c| c.iter().any(|a| !a.is_zero()));
    }
    // reduce entries left of each pivot
    for i in 0..done.len() {
        let p = pivots[i];
        for j in 0..i {
            if done[j][p].is_zero() {
                continue;
            }
            let (q, _) = done[j][p].divrem(&done[i][p]).expect("nonzero pivot");
            if !q.is_zero() {
                col_axpy(&mut done, j, &q, i);
            }
        }
    }
    let basis =
        if done.is_empty() { Matrix::zeros(&UniRing(field), rows, 0) } else { Matrix::from_columns(rows, &done) };
    Hermite { basis, pivots }
}

/// Smith form `U * M * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct Smith {
    pub u: Matrix<UniPoly>,
    pub d: Matrix<UniPoly>,
    pub v: Matrix<UniPoly>,
}

impl Smith {
    /// Nonzero diagonal entries; monic, each dividing the next.
    pub fn invariants(&self) -> Vec<UniPoly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).filter(|a| !a.is_zero()).collect()
    }
}

pub fn smith(field: Field, m: &Matrix<UniPoly>) -> Smith {
    let ring = UniRing(field);
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut u = Matrix::identity(&ring, nr).to_rows();
    let mut v = Matrix::identity(&ring, nc).to_rows();

    fn row_axpy(a: &mut [Vec<UniPoly>], dst: usize, q: &UniPoly, src: usize) {
        for j in 0..a[dst].len() {
            if !a[src][j].is_zero() {
                a[dst][j] = &a[dst][j] - &(q * &a[src][j]);
            }
        }
    }
    fn col_op(a: &mut [Vec<UniPoly>], dst: usize, q: &UniPoly, src: usize) {
        for row in a.iter_mut() {
            if !row[src].is_zero() {
                row[dst] = &row[dst] - &(q * &row[src]);
            }
        }
    }
    fn swap_cols(a: &mut [Vec<UniPoly>], x: usize, y: usize) {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }

    for t in 0..nr.min(nc) {
        let mut min: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && min.is_none_or(|(bi, bj)| a[i][j].degree() < a[bi][bj].degree()) {
                    min = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = min else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].divrem(&a[t][t]).expect("nonzero pivot");
                row_axpy(&mut a, i, &q, t);
                row_axpy(&mut u, i, &q, t);
                if !r.is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].divrem(&a[t][t]).expect("nonzero pivot");
                col_op(&mut a, j, &q, t);
                col_op(&mut v, j, &q, t);
                if !r.is_zero() {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[t][t].divides(&a[i][j])));
            match bad {
                Some(i) => {
                    let minus_one = UniPoly::constant(field.from_i64(-1));
                    row_axpy(&mut a, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        let inv = a[t][t].lead().inv().expect("nonzero pivot");
        for x in a[t].iter_mut() {
            *x = x.scale(&inv);
        }
        for x in u[t].iter_mut() {
            *x = x.scale(&inv);
        }
    }
    let to_m = |rows: Vec<Vec<UniPoly>>, r: usize, c: usize| {
        if r == 0 || c == 0 {
            Matrix::zeros(&ring, r, c)
        } else {
            Matrix::from_rows(rows).expect("rectangular")
        }
    };
    Smith { u: to_m(u, nr, nr), d: to_m(a, nr, nc), v: to_m(v, nc, nc) }
}

/// Solves `L y = b` over `k[t]` for lower-triangular `L` with nonzero diagonal; `None` if the
/// solution is not polynomial.
pub fn solve_lower_triangular(l: &Matrix<UniPoly>, b: &[UniPoly]) -> Option<Vec<UniPoly>> {
    let n = l.rows();
    let mut y: Vec<UniPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = b[i].clone();
        for (j, yj) in y.iter().enumerate() {
            acc = &acc - &(l.get(i, j) * yj);
        }
        y.push(acc.div_exact(l.get(i, i))?);
    }
    Some(y)
}

/// Inverse of a matrix over `k[t]` whose determinant is a nonzero constant.
pub fn unimodular_inverse(field: Field, m: &Matrix<UniPoly>) -> Result<Option<Matrix<UniPoly>>, KernelError> {
    let ring = UniRing(field);
    let d = super::matrix::det(&ring, m)?;
    let Some(dinv) = d.constant_inverse() else { return Ok(None) };
    let adj = super::matrix::adjugate(&ring, m)?;
    Ok(Some(adj.map(|a| a.scale(&dinv))))
}

/// Weak Popov form for columns: a basis of the same lattice whose columns have distinct leading
/// rows, the leading row of a column being the last row where its degree is attained. Column
/// degrees of such a basis are minimal.
pub fn column_reduce(m: &Matrix<UniPoly>) -> Matrix<UniPoly> {
    let mut cols: Vec<Vec<UniPoly>> = (0..m.cols()).map(|c| m.column(c)).collect();
    let lead = |v: &[UniPoly]| -> Option<(usize, usize)> {
        let d = v.iter().filter_map(|a| a.degree()).max()?;
        let i = (0..v.len()).rev().find(|&i| v[i].degree() == Some(d))?;
        Some((i, d))
    };
    loop {
        let leads: Vec<Option<(usize, usize)>> = cols.iter().map(|v| lead(v)).collect();
        let clash = (0..cols.len()).find_map(|j| {
            let (i, dj) = leads[j]?;
            (0..cols.len())
                .find(|&k| k != j && matches!(leads[k], Some((ik, dk)) if ik == i && dk <= dj))
                .map(|k| (j, k, i, dj))
        });
        let Some((j, k, i, dj)) = clash else { break };
        let dk = leads[k].expect("nonzero column").1;
        let c = &cols[j][i].lead() / &cols[k][i].lead();
        let shift = UniPoly::monomial(c, dj - dk);
        let sub: Vec<UniPoly> = cols[k].iter().map(|a| a * &shift).collect();
        for (a, s) in cols[j].iter_mut().zip(&sub) {
            *a = &*a - s;
        }
    }
    Matrix::from_columns(m.rows(), &cols)
}

/// The solution of `m y = b` over `k[t]` for square nonsingular `m`, if it is polynomial.
pub fn solve_square(field: Field, m: &Matrix<UniPoly>, b: &[UniPoly]) -> Result<Option<Vec<UniPoly>>, KernelError> {
    let ring = UniRing(field);
    let d = super::matrix::det(&ring, m)?;
    if d.is_zero() {
        return Err(KernelError::DivisionByZero);
    }
    let adj = super::matrix::adjugate(&ring, m)?;
    Ok(adj.mul_vec(&ring, b).iter().map(|a| a.div_exact(&d)).collect())
}
