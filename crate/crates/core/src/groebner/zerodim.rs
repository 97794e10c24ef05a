//! Zero-dimensional ideals: the finite algebra `k[x]/I`, minimal polynomials, radicals, and the
//! maximal ideals containing `I`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Dimension, Ideal};
use crate::kernel::matrix::{rank, solve, Matrix};
use crate::kernel::{FieldElem, KernelError, Monomial, MultiPoly, UniPoly};

/// `k[x]/I` for an Artinian ideal, with its standard-monomial basis.
pub struct ArtinianAlgebra<'a> {
    ideal: &'a Ideal,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<'a> ArtinianAlgebra<'a> {
    pub fn new(ideal: &'a Ideal) -> Result<ArtinianAlgebra<'a>, KernelError> {
        let basis = if ideal.is_unit() {
            Vec::new()
        } else {
            ideal.standard_monomials().ok_or_else(|| KernelError::Unsupported("quotient is not Artinian".into()))?
        };
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(ArtinianAlgebra { ideal, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn coordinates(&self, f: &MultiPoly) -> Vec<FieldElem> {
        let field = self.ideal.ring().field();
        let mut v = vec![field.zero(); self.dim()];
        for (m, c) in self.ideal.reduce(f).terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Matrix of multiplication by `f`; column `j` holds the coordinates of `f * basis[j]`.
    pub fn multiplication_matrix(&self, f: &MultiPoly) -> Matrix<FieldElem> {
        let field = self.ideal.ring().field();
        let cols: Vec<Vec<FieldElem>> =
            self.basis.iter().map(|m| self.coordinates(&f.mul_monomial(&field.one(), m))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Monic minimal polynomial of `f` acting on the algebra.
    pub fn min_poly(&self, f: &MultiPoly) -> UniPoly {
        let field = self.ideal.ring().field();
        let nv = self.ideal.ring().nvars();
        let mut powers: Vec<Vec<FieldElem>> = Vec::new();
        let mut cur = MultiPoly::one(field, nv);
        loop {
            let v = self.coordinates(&cur);
            if !powers.is_empty() {
                let m = Matrix::from_columns(self.dim(), &powers);
                if let Some(sol) = solve(&field, &m, &v) {
                    let mut coeffs: Vec<FieldElem> = sol.iter().map(|c| -c).collect();
                    coeffs.push(field.one());
                    return UniPoly::new(field, coeffs);
                }
            } else if v.iter().all(|c| c.is_zero()) {
                return UniPoly::one(field);
            }
            powers.push(v);
            cur = self.ideal.reduce(&(&cur * f));
        }
    }

    /// Rank of multiplication by `f`.
    pub fn rank_of(&self, f: &MultiPoly) -> usize {
        rank(&self.ideal.ring().field(), &self.multiplication_matrix(f))
    }
}

/// `u(f)` reduced modulo `ideal`.
pub fn eval_uni_at(u: &UniPoly, f: &MultiPoly, ideal: &Ideal) -> MultiPoly {
    let field = ideal.ring().field();
    let nv = ideal.ring().nvars();
    let mut acc = MultiPoly::zero(field, nv);
    for c in u.coeffs().iter().rev() {
        acc = ideal.reduce(&(&(&acc * f) + &MultiPoly::constant(c.clone(), nv)));
    }
    acc
}

/// Radical of a zero-dimensional ideal over a perfect field: adjoin the squarefree part of the
/// minimal polynomial of every variable.
pub fn radical(ideal: &Ideal) -> Result<Ideal, KernelError> {
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let alg = ArtinianAlgebra::new(ideal)?;
    let ring = ideal.ring();
    let mut extra = Vec::new();
    for i in 0..ring.nvars() {
        let x = MultiPoly::var(ring.field(), ring.nvars(), i);
        let mu = alg.min_poly(&x);
        let sq = mu.squarefree_part()?;
        if sq != mu {
            extra.push(eval_uni_at(&sq, &x, ideal));
        }
    }
    if extra.is_empty() {
        return Ok(ideal.clone());
    }
    let mut gens = ideal.generators().to_vec();
    gens.extend(extra);
    Ok(Ideal::new(ring, gens))
}

const SPLIT_TRIES: usize = 60;

fn candidates(ideal: &Ideal, rng: &mut ChaCha8Rng) -> Vec<MultiPoly> {
    let ring = ideal.ring();
    let (f, n) = (ring.field(), ring.nvars());
    let mut out: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(f, n, i)).collect();
    for _ in 0..SPLIT_TRIES {
        let mut p = MultiPoly::zero(f, n);
        for i in 0..n {
            p = &p + &MultiPoly::var(f, n, i).scale(&f.random(rng));
        }
        out.push(p);
    }
    out
}

fn split(ideal: Ideal, rng: &mut ChaCha8Rng, out: &mut Vec<Ideal>) -> Result<(), KernelError> {
    if ideal.is_unit() {
        return Ok(());
    }
    let d = ArtinianAlgebra::new(&ideal)?.dim();
    for a in candidates(&ideal, rng) {
        let mu = ArtinianAlgebra::new(&ideal)?.min_poly(&a);
        let factors = mu.factor()?;
        if factors.len() == 1 && factors[0].1 == 1 {
            if mu.degree() == Some(d) {
                out.push(ideal);
                return Ok(());
            }
            continue;
        }
        for (q, _) in factors {
            let piece = ideal.sum(&Ideal::new(ideal.ring(), vec![eval_uni_at(&q, &a, &ideal)]));
            split(piece, rng, out)?;
        }
        return Ok(());
    }
    Err(KernelError::Unsupported("no separating element found for a zero-dimensional ideal".into()))
}

/// The maximal ideals containing a zero-dimensional ideal, each given by a radical basis.
/// Results are sorted by their canonical display for determinism.
pub fn maximal_ideals_over(ideal: &Ideal) -> Result<Vec<Ideal>, KernelError> {
    if let Dimension::Infinite = ideal.artinian_dim() {
        return Err(KernelError::Unsupported("support of a non-Artinian quotient".into()));
    }
    let rad = radical(ideal)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_7869);
    let mut out = Vec::new();
    split(rad, &mut rng, &mut out)?;
    let mut out: Vec<Ideal> = out.into_iter().map(|m| Ideal::new(m.ring(), m.canonical_generators())).collect();
    out.sort_by_key(|m| m.display());
    out.dedup();
    Ok(out)
}

/// Whether `m` is a maximal ideal (zero-dimensional, radical, and its quotient a field).
pub fn is_maximal(m: &Ideal) -> Result<bool, KernelError> {
    let d = match m.artinian_dim() {
        Dimension::Finite(0) | Dimension::Infinite => return Ok(false),
        Dimension::Finite(d) => d,
    };
    if radical(m)? != *m {
        return Ok(false);
    }
    let maxes = maximal_ideals_over(m)?;
    Ok(maxes.len() == 1 && maxes[0].artinian_dim() == Dimension::Finite(d))
}
