use rand::seq::SliceRandom;
use rand::Rng;

use super::higgs::{companion, cover_coeffs, discriminant, HiggsChart};
use super::module::{module_basis, pushforward, ModuleForm, SpectralModule};
use crate::cover::CoverChart;
use crate::kernel::matrix::rank;
use crate::kernel::pid::solve_square;
use crate::kernel::{Field, FieldElem, Matrix, MultiPoly, ResidueField, UniPoly, UniRing};
use crate::{Error, Result};

/// The maps of `0 -> M ⊗ π*L^(1-r) -> π*E -> π*(E ⊗ L) -> M ⊗ π*L -> 0` over `R`, with `L`
/// trivialized. `S ⊗_R M` has basis `x^i ⊗ m_k` at index `i r + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BnrMatrices {
    /// `Ψ = x̄ - x`: multiplication by `x` through `M` minus multiplication through `S`.
    pub psi: Matrix<UniPoly>,
    /// `Q(m) = sum_i x^i ⊗ (sum_j a_j Φ^(r-1-i-j)) m`, with `a_0 = 1`.
    pub q: Matrix<UniPoly>,
    /// `x^i ⊗ m -> Φ^i m`.
    pub ev: Matrix<UniPoly>,
}

pub fn bnr_matrices(chart: &CoverChart, phi: &HiggsChart) -> Result<BnrMatrices> {
    let coeffs = cover_coeffs(chart)?;
    let x = companion(chart)?;
    let field = chart.field();
    let ring = UniRing(field);
    let r = phi.rank();
    if r != chart.degree() {
        return Err(Error::Shape(format!("Higgs rank {r} on a cover of degree {}", chart.degree())));
    }
    let f = phi.matrix();
    let mut a = vec![UniPoly::one(field)];
    a.extend(coeffs);
    let mut powers = vec![Matrix::identity(&ring, r)];
    for _ in 1..r {
        let next = powers.last().unwrap().mul(&ring, f)?;
        powers.push(next);
    }
    let zero = UniPoly::zero(field);
    let psi = Matrix::from_fn(r * r, r * r, |row, col| {
        let (i, k) = (row / r, row % r);
        let (i2, k2) = (col / r, col % r);
        let mut v = if i == i2 { f.get(k, k2).clone() } else { zero.clone() };
        if k == k2 {
            v = &v - x.get(i, i2);
        }
        v
    });
    let mut blocks = Vec::with_capacity(r);
    for i in 0..r {
        let mut acc = Matrix::zeros(&ring, r, r);
        for j in 0..r - i {
            acc = acc.add(&ring, &powers[r - 1 - i - j].scale(&ring, &a[j]))?;
        }
        blocks.push(acc);
    }
    let q = Matrix::from_fn(r * r, r, |row, col| blocks[row / r].get(row % r, col).clone());
    let ev = Matrix::from_fn(r, r * r, |row, col| powers[col / r].get(row, col % r).clone());
    Ok(BnrMatrices { psi, q, ev })
}

/// `Q(m)` for `m` given by coordinates in the `R`-basis of `M`.
pub fn bnr_q_coords(chart: &CoverChart, phi: &HiggsChart, m: &[UniPoly]) -> Result<Vec<UniPoly>> {
    let b = bnr_matrices(chart, phi)?;
    Ok(b.q.mul_vec(&UniRing(chart.field()), m))
}

/// `Q(m)` for an element `m` of a fractional module `I/d`, given by its numerator in `I`, shown
/// as `sum_i x^i ⊗ m_i` with each `m_i` written as an element of `S` over `d`.
pub fn bnr_q_map(chart: &CoverChart, module: &SpectralModule, m: &MultiPoly) -> Result<String> {
    let ModuleForm::Fractional(j) = &module.form else {
        return Err(Error::Unsupported("Q on elements needs a fractional module".into()));
    };
    let push = pushforward(chart, module)?;
    let v = module_basis(chart, j)?;
    let coords: Vec<UniPoly> =
        chart.coords(&chart.ring().nf(m)).iter().map(|a| chart.base_to_uni(a)).collect::<Result<_>>()?;
    if !j.numerator().contains(m) {
        return Err(Error::Incompatible(format!("{} is not in the module", chart.display(m))));
    }
    let y = solve_square(chart.field(), &v, &coords)?.expect("elements of the ideal lie in its lattice");
    let out = bnr_q_coords(chart, &push.higgs, &y)?;
    let r = chart.degree();
    let ring = UniRing(chart.field());
    let mut terms = Vec::new();
    for i in 0..r {
        let mi = v.mul_vec(&ring, &out[i * r..(i + 1) * r]);
        let elem = chart.from_coords(&mi.iter().map(|a| chart.uni_to_base(a)).collect::<Vec<_>>());
        if elem.is_zero() {
            continue;
        }
        let mut shown = chart.display(&elem);
        if elem.num_terms() > 1 {
            shown = format!("({shown})");
        }
        if !j.has_trivial_denominator() {
            shown = format!("{shown}/({})", chart.display(j.denominator()));
        }
        terms.push(format!("{} ⊗ {shown}", chart.display(&chart.basis_element(i))));
    }
    Ok(if terms.is_empty() { "0".into() } else { terms.join(" + ") })
}

/// Ranks of the sequence after base change to the residue field of a closed point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCheck {
    pub point: UniPoly,
    pub rank_psi: usize,
    pub rank_q: usize,
    pub rank_ev: usize,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BnrStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl BnrStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BnrStatus::Pass => "PASS",
            BnrStatus::Fail => "FAIL",
            BnrStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BnrReport {
    pub rank: usize,
    pub psi_q_zero: bool,
    pub ev_psi_zero: bool,
    /// Sorted by degree, then coefficients.
    pub points: Vec<PointCheck>,
    pub status: BnrStatus,
    pub transcript: Vec<String>,
}

/// Checks the sequence for `M`: `Ψ Q = 0` and `ev Ψ = 0` over `R`, then at closed points where
/// the fiber is reduced, `rank Q = r`, `rank Ψ = r^2 - r` and `rank ev = r`, which with the
/// vanishing compositions is exactness at every term.
pub fn verify_bnr_sequence<R: Rng + ?Sized>(
    chart: &CoverChart,
    module: &SpectralModule,
    min_points: usize,
    rng: &mut R,
) -> Result<BnrReport> {
    let phi = pushforward(chart, module)?.higgs;
    let b = bnr_matrices(chart, &phi)?;
    let field = chart.field();
    let ring = UniRing(field);
    let r = phi.rank();
    let psi_q_zero = b.psi.mul(&ring, &b.q)?.is_zero(&ring);
    let ev_psi_zero = b.ev.mul(&ring, &b.psi)?.is_zero(&ring);
    let mut transcript = vec![
        format!("Higgs field of M: {}", phi.display()),
        format!("Psi Q = 0: {psi_q_zero}"),
        format!("ev Psi = 0: {ev_psi_zero}"),
    ];
    let disc = discriminant(field, &cover_coeffs(chart)?);
    let points = closed_points(field, &disc, min_points, rng);
    let mut checks = Vec::with_capacity(points.len());
    for q in points {
        let kq = ResidueField::new(&q)?;
        let red = |m: &Matrix<UniPoly>| m.map(|a| kq.reduce(a));
        let rank_psi = rank(&kq, &red(&b.psi));
        let rank_q = rank(&kq, &red(&b.q));
        let rank_ev = rank(&kq, &red(&b.ev));
        let exact = rank_psi == r * r - r && rank_q == r && rank_ev == r;
        if !exact {
            transcript.push(format!(
                "point ({}): rank Psi {rank_psi}, rank Q {rank_q}, rank ev {rank_ev}",
                q.display_with("t")
            ));
        }
        checks.push(PointCheck { point: q, rank_psi, rank_q, rank_ev, exact });
    }
    checks.sort_by_key(|c| point_key(&c.point));
    let status = if !psi_q_zero || !ev_psi_zero || checks.iter().any(|c| !c.exact) {
        BnrStatus::Fail
    } else if checks.len() < min_points {
        transcript.push(format!("only {} reduced fibers found, wanted {min_points}", checks.len()));
        BnrStatus::Inconclusive
    } else {
        BnrStatus::Pass
    };
    transcript.push(format!("{} specializations checked", checks.len()));
    Ok(BnrReport { rank: r, psi_q_zero, ev_psi_zero, points: checks, status, transcript })
}

fn point_key(q: &UniPoly) -> (usize, Vec<num_rational::BigRational>) {
    (q.degree().unwrap_or(0), q.coeffs().iter().rev().map(|c| c.to_rational()).collect())
}

/// Monic irreducible `q` coprime to `disc`: every rational point when the field is small,
/// then random points of degree 2 and 3 until `count` are found.
pub fn closed_points<R: Rng + ?Sized>(field: Field, disc: &UniPoly, count: usize, rng: &mut R) -> Vec<UniPoly> {
    let good = |q: &UniPoly| q.gcd(disc).is_one();
    let linear = |c: FieldElem| UniPoly::new(field, vec![-c, field.one()]);
    let mut out: Vec<UniPoly> = Vec::new();
    if !field.is_finite() {
        let mut k = 0i64;
        while out.len() < count && k < 64 * count as i64 {
            // 0, 1, -1, 2, -2, ...
            let c = if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 };
            let q = linear(field.from_i64(c));
            if good(&q) {
                out.push(q);
            }
            k += 1;
        }
        return out;
    }
    let p = field.characteristic();
    if p <= 64 {
        let mut all: Vec<UniPoly> = (0..p as i64).map(|c| linear(field.from_i64(c))).filter(|q| good(q)).collect();
        if all.len() > count {
            all.shuffle(rng);
            all.truncate(count);
        }
        out = all;
    } else {
        let mut tries = 0;
        while out.len() < count && tries < 16 * count {
            let q = linear(field.random(rng));
            if good(&q) && !out.contains(&q) {
                out.push(q);
            }
            tries += 1;
        }
    }
    for deg in 2..=3usize {
        let mut tries = 0;
        while out.len() < count && tries < 64 * count {
            tries += 1;
            let mut c: Vec<_> = (0..deg).map(|_| field.random(rng)).collect();
            c.push(field.one());
            let q = UniPoly::new(field, c);
            if out.contains(&q) || !good(&q) || !q.is_irreducible().unwrap_or(false) {
                continue;
            }
            out.push(q);
        }
    }
    out
}
