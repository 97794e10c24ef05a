use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::higgs::{companion, cover_coeffs, HiggsChart};
use crate::cover::{r_basis, CoverChart, FractionalIdeal};
use crate::groebner::Ideal;
use crate::kernel::matrix::{adjugate, det};
use crate::kernel::pid::{column_reduce, smith, solve_square, unimodular_inverse};
use crate::kernel::{Field, Matrix, MultiPoly, UniPoly, UniRing};
use crate::{Error, Result};

/// How a rank-1 module over the cover is given.
#[derive(Clone, Debug)]
pub enum ModuleForm {
    Fractional(FractionalIdeal),
    /// `S^r` modulo the columns of an `r x m` matrix over `S`.
    Presentation(Matrix<MultiPoly>),
}

/// A generically rank-1 module on the spectral cover.
///
/// `twist = k` records that the module stands for `M ⊗ π*L^k`; on a chart the twist is trivial.
#[derive(Clone, Debug)]
pub struct SpectralModule {
    pub form: ModuleForm,
    pub twist: i32,
}

impl SpectralModule {
    pub fn fractional(ideal: FractionalIdeal) -> SpectralModule {
        SpectralModule { form: ModuleForm::Fractional(ideal), twist: 0 }
    }

    pub fn integral(ideal: Ideal) -> SpectralModule {
        SpectralModule::fractional(FractionalIdeal::integral(ideal))
    }

    /// The structure sheaf `S`.
    pub fn structure(chart: &CoverChart) -> SpectralModule {
        SpectralModule::fractional(FractionalIdeal::unit(chart))
    }

    pub fn presentation(matrix: Matrix<MultiPoly>) -> SpectralModule {
        SpectralModule { form: ModuleForm::Presentation(matrix), twist: 0 }
    }

    pub fn with_twist(mut self, twist: i32) -> SpectralModule {
        self.twist = twist;
        self
    }

    pub fn display(&self, chart: &CoverChart) -> String {
        match &self.form {
            ModuleForm::Fractional(j) => j.display(chart),
            ModuleForm::Presentation(a) => {
                let rows: Vec<String> = a
                    .to_rows()
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|e| chart.display(e)).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("coker [{}]", rows.join(", "))
            }
        }
    }
}

/// `π_* M` with its Higgs field, and for presentations the projection onto the chosen basis.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub higgs: HiggsChart,
    /// `n x (r n)` matrix sending coordinates of an element of `S^r` (entry `k`, power `x^i` at
    /// index `k n + i`) to the coordinates of its class. `None` for fractional modules.
    pub projection: Option<Matrix<UniPoly>>,
}

impl Pushforward {
    /// Coordinates of the class of `v ∈ S^r` in the basis of the pushforward.
    pub fn class_of(&self, chart: &CoverChart, v: &[MultiPoly]) -> Option<Vec<UniPoly>> {
        let p = self.projection.as_ref()?;
        let flat = flatten(chart, v);
        Some(p.mul_vec(&UniRing(chart.field()), &flat))
    }
}

/// The Higgs field of `π_* M`: multiplication by `x` in an `R`-basis of `M`.
///
/// Fractional modules use [`module_basis`]. Presentations are reduced over `R` by unit pivots and
/// then a Smith form; every nonzero invariant factor must be a unit and the free rank must be the
/// degree of the cover.
pub fn module_to_higgs(chart: &CoverChart, m: &SpectralModule) -> Result<HiggsChart> {
    Ok(pushforward(chart, m)?.higgs)
}

pub fn pushforward(chart: &CoverChart, m: &SpectralModule) -> Result<Pushforward> {
    let x_mat = companion(chart)?;
    let field = chart.field();
    let ring = UniRing(field);
    let n = chart.degree();
    match &m.form {
        ModuleForm::Fractional(j) => {
            let v = module_basis(chart, j)?;
            let xv = x_mat.mul(&ring, &v)?;
            let mut cols = Vec::with_capacity(n);
            for c in 0..n {
                let y = solve_square(field, &v, &xv.column(c))?.expect("the lattice is stable under x");
                cols.push(y);
            }
            let phi = HiggsChart::new(field, Matrix::from_columns(n, &cols))?.with_twist(m.twist);
            Ok(Pushforward { higgs: phi, projection: None })
        }
        ModuleForm::Presentation(a) => {
            let r = a.rows();
            let size = r * n;
            let mut rels: Vec<Vec<UniPoly>> = Vec::new();
            for c in 0..a.cols() {
                let col = a.column(c);
                for i in 0..n {
                    let xi = chart.basis_element(i);
                    let shifted: Vec<MultiPoly> = col.iter().map(|e| chart.ring().nf(&(e * &xi))).collect();
                    let flat = flatten(chart, &shifted);
                    if flat.iter().any(|e| !e.is_zero()) {
                        rels.push(flat);
                    }
                }
            }
            let rel = if rels.is_empty() {
                Matrix::from_fn(size, 1, |_, _| UniPoly::zero(field))
            } else {
                Matrix::from_columns(size, &rels)
            };
            let (proj, lift) = free_cokernel(field, &rel, n)?;
            let xbig = Matrix::from_fn(size, size, |i, j| {
                if i / n == j / n {
                    x_mat.get(i % n, j % n).clone()
                } else {
                    UniPoly::zero(field)
                }
            });
            let t = proj.mul(&ring, &xbig)?.mul(&ring, &lift)?;
            let phi = HiggsChart::new(field, t)?.with_twist(m.twist);
            Ok(Pushforward { higgs: phi, projection: Some(proj) })
        }
    }
}

/// Projection `R^size -> R^n` onto the cokernel of `rel` and a section `R^n -> R^size`, when the
/// cokernel is free of rank `n`.
///
/// Unit pivots are eliminated first, taking rows of high `x`-power first: for a presentation
/// `Φ - x` the columns `x^i (Φ - x) e_k` with `i < n - 1` have a `-1` at `x^(i+1) e_k`, so this
/// leaves exactly the `x^0` coordinates. Smith form on what is left would blow up in degree
/// otherwise. Anything that survives goes through `smith`.
fn free_cokernel(field: Field, rel: &Matrix<UniPoly>, n: usize) -> Result<(Matrix<UniPoly>, Matrix<UniPoly>)> {
    let ring = UniRing(field);
    let size = rel.rows();
    let mut a = rel.to_rows();
    let cols = rel.cols();
    let mut row_done = vec![false; size];
    let mut col_done = vec![false; cols];
    // (row, col, entries of that column at the time of elimination)
    let mut rules: Vec<(usize, usize, Vec<UniPoly>)> = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..size {
            if row_done[i] {
                continue;
            }
            if let Some(j) = (0..cols).find(|&j| !col_done[j] && a[i][j].is_unit()) {
                let better = match best {
                    None => true,
                    Some((bi, _)) => i % n > bi % n,
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        let inv = a[pi][pj].constant_inverse().expect("unit pivot");
        for c in 0..cols {
            if c == pj || col_done[c] || a[pi][c].is_zero() {
                continue;
            }
            let f = a[pi][c].scale(&inv);
            for i in 0..size {
                if !a[i][pj].is_zero() {
                    a[i][c] = &a[i][c] - &(&f * &a[i][pj]);
                }
            }
        }
        row_done[pi] = true;
        col_done[pj] = true;
        rules.push((pi, pj, (0..size).map(|i| a[i][pj].clone()).collect()));
    }
    let rest: Vec<usize> = (0..size).filter(|&i| !row_done[i]).collect();
    let open: Vec<usize> = (0..cols).filter(|&j| !col_done[j]).collect();
    // class of each standard vector in the coordinates `rest`
    let zero_class = || vec![UniPoly::zero(field); rest.len()];
    let mut class: Vec<Vec<UniPoly>> = vec![zero_class(); size];
    for (k, &i) in rest.iter().enumerate() {
        class[i][k] = UniPoly::one(field);
    }
    for (pi, _, col) in rules.iter().rev() {
        let inv = col[*pi].constant_inverse().expect("unit pivot");
        let mut acc = zero_class();
        for (i, e) in col.iter().enumerate() {
            if i == *pi || e.is_zero() {
                continue;
            }
            let f = e.scale(&-&inv);
            for (slot, v) in acc.iter_mut().zip(&class[i]) {
                *slot = &*slot + &(&f * v);
            }
        }
        class[*pi] = acc;
    }
    let proj0 = Matrix::from_columns(rest.len(), &class);
    let lift0 =
        Matrix::from_fn(size, rest.len(), |i, k| if rest[k] == i { UniPoly::one(field) } else { UniPoly::zero(field) });
    let residual = Matrix::from_fn(rest.len(), open.len(), |k, j| a[rest[k]][open[j]].clone());
    if residual.is_zero(&ring) {
        if rest.len() != n {
            return Err(Error::Degenerate(format!("cokernel has rank {} over the base, expected {n}", rest.len())));
        }
        return Ok((proj0, lift0));
    }
    let s = smith(field, &residual);
    let inv = s.invariants();
    if let Some(bad) = inv.iter().find(|d| !d.is_unit()) {
        return Err(Error::Degenerate(format!("cokernel has torsion: invariant factor {}", bad.display_with("t"))));
    }
    let k0 = inv.len();
    if rest.len() - k0 != n {
        return Err(Error::Degenerate(format!("cokernel has rank {} over the base, expected {n}", rest.len() - k0)));
    }
    let uinv = unimodular_inverse(field, &s.u)?.expect("Smith transforms are unimodular");
    let keep: Vec<usize> = (k0..rest.len()).collect();
    let all: Vec<usize> = (0..rest.len()).collect();
    let proj = s.u.select(&keep, &all).mul(&ring, &proj0)?;
    let lift = lift0.mul(&ring, &uinv.select(&all, &keep))?;
    Ok((proj, lift))
}

/// The `R`-basis of the numerator used for pushforwards: its Hermite basis, column reduced so that
/// the Higgs field comes out with small degrees.
pub fn module_basis(chart: &CoverChart, j: &FractionalIdeal) -> Result<Matrix<UniPoly>> {
    let n = chart.degree();
    let h = r_basis(chart, j.numerator());
    if !h.is_full_rank() {
        return Err(Error::Degenerate(format!(
            "{} has rank {} over the base, expected {n}",
            j.display(chart),
            h.rank()
        )));
    }
    Ok(column_reduce(&h.basis))
}

/// Coordinates over `R` of a vector in `S^r`, entry `k` and power `x^i` at index `k n + i`.
fn flatten(chart: &CoverChart, v: &[MultiPoly]) -> Vec<UniPoly> {
    v.iter().flat_map(|e| chart.coords(e).into_iter().map(|a| a.to_uni(0).expect("one variable"))).collect()
}

/// The cokernel of `Φ - x` on `S^n`, which is `M ⊗ π*L` for the module `M` with `π_* M = E`.
pub fn higgs_to_module(chart: &CoverChart, phi: &HiggsChart) -> Result<SpectralModule> {
    let coeffs = cover_coeffs(chart)?;
    if phi.char_coeffs() != coeffs {
        return Err(Error::Incompatible(format!(
            "characteristic polynomial of {} does not define {}",
            phi.display(),
            chart
        )));
    }
    let n = phi.rank();
    let x = chart.x().expect("monic cover");
    let a = Matrix::from_fn(n, n, |i, j| {
        let e = chart.embed_base(&chart.uni_to_base(phi.matrix().get(i, j)));
        if i == j {
            chart.ring().nf(&(&e - &x))
        } else {
            e
        }
    });
    Ok(SpectralModule::presentation(a).with_twist(phi.twist + 1))
}

/// A fractional ideal isomorphic to the module whose pushforward is `(E, Φ)`, from a cyclic
/// vector `w`: with `K = [w, Φw, ..., Φ^(n-1) w]` invertible over `k(t)`, `K^{-1} E` is an
/// `x`-stable lattice in `S ⊗ k(t)` spanned by the columns of `adj K` over `det K`.
#[derive(Clone, Debug)]
pub struct KrylovForm {
    pub ideal: FractionalIdeal,
    pub vector: Vec<UniPoly>,
    pub krylov: Matrix<UniPoly>,
}

pub fn krylov_form(chart: &CoverChart, phi: &HiggsChart) -> Result<KrylovForm> {
    let coeffs = cover_coeffs(chart)?;
    if phi.char_coeffs() != coeffs {
        return Err(Error::Incompatible("Higgs field does not match the cover".into()));
    }
    let field = chart.field();
    let ring = UniRing(field);
    let n = phi.rank();
    let mut tries: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { UniPoly::one(field) } else { UniPoly::zero(field) }).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_796c);
    for _ in 0..32 {
        tries.push((0..n).map(|_| UniPoly::constant(field.random(&mut rng))).collect());
    }
    for _ in 0..32 {
        tries.push((0..n).map(|_| UniPoly::new(field, vec![field.random(&mut rng), field.random(&mut rng)])).collect());
    }
    for w in tries {
        let mut cols = vec![w.clone()];
        for _ in 1..n {
            let next = phi.matrix().mul_vec(&ring, cols.last().unwrap());
            cols.push(next);
        }
        let k = Matrix::from_columns(n, &cols);
        let delta = det(&ring, &k)?;
        if delta.is_zero() {
            continue;
        }
        let adj = adjugate(&ring, &k)?;
        let gens: Vec<MultiPoly> = (0..n)
            .map(|c| {
                let coords: Vec<MultiPoly> = adj.column(c).iter().map(|a| chart.uni_to_base(a)).collect();
                chart.from_coords(&coords)
            })
            .collect();
        let den = chart.embed_base(&chart.uni_to_base(&delta));
        let ideal = FractionalIdeal::new(chart, Ideal::new(chart.ring(), gens), den)?;
        return Ok(KrylovForm { ideal, vector: w, krylov: k });
    }
    Err(Error::Degenerate(format!("no cyclic vector found for {}", phi.display())))
}

impl KrylovForm {
    /// `g = V^{-1} adj(K)` with `V` the basis of the numerator from [`module_basis`]: it satisfies
    /// `g Φ = Φ'' g` for `Φ''` the Higgs field of the fractional module.
    pub fn conjugator(&self, chart: &CoverChart) -> Result<Matrix<UniPoly>> {
        let field = chart.field();
        let ring = UniRing(field);
        let v = module_basis(chart, &self.ideal)?;
        let adj = adjugate(&ring, &self.krylov)?;
        let n = adj.cols();
        let cols: Option<Vec<Vec<UniPoly>>> =
            (0..n).map(|c| solve_square(field, &v, &adj.column(c))).collect::<std::result::Result<_, _>>()?;
        let cols = cols.ok_or_else(|| Error::Degenerate("adjugate columns outside the Hermite lattice".into()))?;
        Ok(Matrix::from_columns(n, &cols))
    }
}

/// The module as a fractional ideal; presentations pass through their pushforward.
pub fn fractional_form(chart: &CoverChart, m: &SpectralModule) -> Result<FractionalIdeal> {
    match &m.form {
        ModuleForm::Fractional(j) => Ok(j.clone()),
        ModuleForm::Presentation(_) => {
            let phi = module_to_higgs(chart, m)?;
            Ok(krylov_form(chart, &phi)?.ideal)
        }
    }
}
