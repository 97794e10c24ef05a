#![allow(dead_code)]

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use spectral_core::cover::CoverChart;
use spectral_core::groebner::{Ideal, QuotientRing};
use spectral_core::kernel::{random_unipoly, Field, MultiPoly, Ring};

pub fn f7() -> Field {
    Field::prime(7).unwrap()
}

/// `k[t][x]/(x^2 - t)`.
pub fn sqrt_t(field: Field) -> CoverChart {
    CoverChart::monic_over_line(field, &["0", "-t"]).unwrap()
}

/// `A = k[x,y]/(y^2 - x^4)` over `B = k[s,t]/(t^2 - s^2)` with basis `{1, x}`: `x^2 = s`, `y = t`.
pub fn tacnode(field: Field) -> CoverChart {
    let free = QuotientRing::polynomial(field, vec!["s".into(), "t".into()]);
    let rel = free.parse("t^2 - s^2").unwrap();
    let base = Arc::new(QuotientRing::new(field, vec!["s".into(), "t".into()], vec![rel]));
    let (z, o, s) = (base.zero(), base.one(), base.parse("s").unwrap());
    let table =
        vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o]], vec![vec![z.clone(), base.one()], vec![s, z]]];
    CoverChart::free(base, vec!["x".into()], table).unwrap()
}

pub fn elem(chart: &CoverChart, s: &str) -> MultiPoly {
    chart.ring().parse(s).unwrap()
}

pub fn ideal(ring: &Arc<QuotientRing>, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| ring.parse(g).unwrap()).collect())
}

pub fn random_element(chart: &CoverChart, max_deg: usize, rng: &mut ChaCha8Rng) -> MultiPoly {
    let coords: Vec<MultiPoly> =
        (0..chart.degree()).map(|_| chart.uni_to_base(&random_unipoly(chart.field(), max_deg, rng))).collect();
    chart.from_coords(&coords)
}

/// A random monic cover of degree `n` over `k[t]` with coefficients of degree at most 2.
pub fn random_cover(field: Field, n: usize, rng: &mut ChaCha8Rng) -> CoverChart {
    let base = Arc::new(QuotientRing::polynomial(field, vec!["t".into()]));
    let coeffs = (0..n).map(|_| MultiPoly::from_uni(&random_unipoly(field, 2, rng), 1, 0)).collect();
    CoverChart::monic(base, "x", coeffs).unwrap()
}
