//! Dense matrices over any [`Ring`] and the exact algorithms on them.

use std::fmt::Debug;

use super::ring::{FieldOps, Ring};
use super::KernelError;

/// Row-major rectangular matrix. Ring operations take the ring by reference, so the same
/// storage serves `k`, `k[t]`, quotient rings, and residue fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, KernelError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(KernelError::Ragged);
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: Clone + PartialEq + Debug>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Delete row `i` and column `j`.
    pub fn minor_matrix(&self, i: usize, j: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select(&rows, &cols)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Matrix<E>) -> Result<Matrix<E>, KernelError> {
        if self.cols != rhs.rows {
            return Err(KernelError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, rhs.get(k, j)));
            }
            acc
        }))
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(self.get(i, k), &v[k]))))
            .collect()
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Matrix<E>) -> Result<Matrix<E>, KernelError> {
        self.check_same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| ring.add(self.get(i, j), rhs.get(i, j))))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Matrix<E>) -> Result<Matrix<E>, KernelError> {
        self.check_same_shape(rhs)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| ring.sub(self.get(i, j), rhs.get(i, j))))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Matrix<E> {
        self.map(|a| ring.mul(a, c))
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> Result<E, KernelError> {
        self.check_square()?;
        Ok((0..self.rows).fold(ring.zero(), |acc, i| ring.add(&acc, self.get(i, i))))
    }

    fn check_same_shape(&self, rhs: &Matrix<E>) -> Result<(), KernelError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(KernelError::DimensionMismatch { expected: self.rows * self.cols, found: rhs.rows * rhs.cols });
        }
        Ok(())
    }

    pub(crate) fn check_square(&self) -> Result<(), KernelError> {
        if !self.is_square() {
            return Err(KernelError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }
}

/// Exact determinant: fraction-free Bareiss elimination over domains, cofactor expansion
/// otherwise.
pub fn det<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<R::Elem, KernelError> {
    m.check_square()?;
    if ring.is_domain() {
        Ok(det_bareiss(ring, m))
    } else {
        Ok(det_cofactor(ring, m))
    }
}

fn det_bareiss<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(a.get(k, k)) {
            match (k + 1..n).find(|&i| !ring.is_zero(a.get(i, k))) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(a.get(i, j), a.get(k, k)), &ring.mul(a.get(i, k), a.get(k, j)));
                let q = ring.div_exact(&num, &prev).expect("Bareiss division is exact over a domain");
                a.set(i, j, q);
            }
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        ring.neg(&d)
    } else {
        d
    }
}

/// Division-free Laplace expansion, memoized over column subsets: `O(n 2^n)` ring products.
pub fn det_cofactor<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows();
    assert!(n < 24, "cofactor expansion is limited to small matrices");
    let mut dp: Vec<Option<R::Elem>> = vec![None; 1 << n];
    dp[0] = Some(ring.one());
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].clone() else { continue };
        if ring.is_zero(&cur) {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let a = m.get(row, j);
            if ring.is_zero(a) {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let mut term = ring.mul(&cur, a);
            if above % 2 == 1 {
                term = ring.neg(&term);
            }
            let next = mask | (1 << j);
            dp[next] = Some(match dp[next].take() {
                Some(old) => ring.add(&old, &term),
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].clone().unwrap_or_else(|| ring.zero())
}

/// Adjugate `adj(M)`, so that `M adj(M) = det(M) I`.
pub fn adjugate<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>, KernelError> {
    m.check_square()?;
    let n = m.rows();
    if n == 1 {
        return Ok(Matrix::identity(ring, 1));
    }
    let mut out = Matrix::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let c = det(ring, &m.minor_matrix(i, j))?;
            out.set(j, i, if (i + j) % 2 == 1 { ring.neg(&c) } else { c });
        }
    }
    Ok(out)
}

/// Characteristic polynomial `det(x I - M)` as `[1, a_1, ..., a_n]`, so that
/// `x^n + a_1 x^(n-1) + ... + a_n`; division-free (Berkowitz), valid over any commutative ring.
pub fn char_poly<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<Vec<R::Elem>, KernelError> {
    m.check_square()?;
    let n = m.rows();
    let mut p = vec![ring.one()];
    for k in 0..n {
        // leading (k+1)x(k+1) block: A = first k rows/cols, R = row k, S = column k
        let mut col = vec![ring.one(), ring.neg(m.get(k, k))];
        if k > 0 {
            let idx: Vec<usize> = (0..k).collect();
            let a = m.select(&idx, &idx);
            let r: Vec<R::Elem> = (0..k).map(|j| m.get(k, j).clone()).collect();
            let mut s: Vec<R::Elem> = (0..k).map(|i| m.get(i, k).clone()).collect();
            for _ in 0..k {
                let rs = r.iter().zip(&s).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
                col.push(ring.neg(&rs));
                s = a.mul_vec(ring, &s);
            }
        }
        // Toeplitz product: new[i] = sum_j col[i-j] * p[j]
        let mut next = vec![ring.zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if j <= i && i - j < col.len() {
                    *slot = ring.add(slot, &ring.mul(&col[i - j], pj));
                }
            }
        }
        p = next;
    }
    Ok(p)
}

/// Reduced row echelon form over a field; returns the pivot columns.
pub fn rref<R: FieldOps>(ring: &R, m: &Matrix<R::Elem>) -> (Matrix<R::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !ring.is_zero(a.get(i, col))) else { continue };
        a.swap_rows(row, p);
        let inv = ring.inv(a.get(row, col)).expect("nonzero pivot");
        for j in 0..a.cols() {
            let v = ring.mul(a.get(row, j), &inv);
            a.set(row, j, v);
        }
        for i in 0..a.rows() {
            if i == row || ring.is_zero(a.get(i, col)) {
                continue;
            }
            let f = a.get(i, col).clone();
            for j in 0..a.cols() {
                let v = ring.sub(a.get(i, j), &ring.mul(&f, a.get(row, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<R: FieldOps>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    rref(ring, m).1.len()
}

/// Basis of the right kernel `{v : M v = 0}`.
pub fn kernel<R: FieldOps>(ring: &R, m: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
    let (a, pivots) = rref(ring, m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); m.cols()];
            v[f] = ring.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = ring.neg(a.get(r, f));
            }
            v
        })
        .collect()
}

/// One solution of `M v = b`, if any.
pub fn solve<R: FieldOps>(ring: &R, m: &Matrix<R::Elem>, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let aug =
        Matrix::from_fn(m.rows(), m.cols() + 1, |i, j| if j < m.cols() { m.get(i, j).clone() } else { b[i].clone() });
    let (a, pivots) = rref(ring, &aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut v = vec![ring.zero(); m.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = a.get(r, m.cols()).clone();
    }
    Some(v)
}

pub fn inverse<R: FieldOps>(ring: &R, m: &Matrix<R::Elem>) -> Result<Option<Matrix<R::Elem>>, KernelError> {
    m.check_square()?;
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            ring.one()
        } else {
            ring.zero()
        }
    });
    let (a, pivots) = rref(ring, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    Ok(Some(Matrix::from_fn(n, n, |i, j| a.get(i, n + j).clone())))
}
