use crate::cover::CoverChart;
use crate::groebner::{maximal_ideals_over, Ideal};
use crate::kernel::{MultiPoly, UniPoly};
use crate::{Error, Result};

use super::divisor::artinian_len;
use super::{direct_image, GeneralizedDivisor};

/// An effective divisor on the cover with prescribed direct image, and how it was found.
#[derive(Clone, Debug)]
pub struct Preimage {
    pub divisor: GeneralizedDivisor,
    pub transcript: Vec<String>,
}

/// Finds an effective `D` on the cover with `pi_*(D) = (e)`.
///
/// Over each prime factor `q^a` of `e`, fiber points `P` are chosen (rational points first) with
/// local lengths summing to `a * deg q`; each local piece is `P^c` enlarged by socle elements of
/// `P` until its colength is exact. The result is checked by recomputing the direct image.
pub fn find_preimage_divisor(chart: &CoverChart, e: &UniPoly) -> Result<Preimage> {
    chart.require_principal_base()?;
    if e.is_zero() {
        return Err(Error::Degenerate("E = (0) is not a divisor".into()));
    }
    let ring = chart.ring();
    let mut transcript = Vec::new();
    let mut ideal = Ideal::unit(ring);
    for (q, a) in e.factor()? {
        let qs = chart.embed_base(&chart.uni_to_base(&q));
        let target = a as i64 * q.degree().unwrap_or(0) as i64;
        let mut points: Vec<(Ideal, i64)> = maximal_ideals_over(&Ideal::new(ring, vec![qs]))?
            .into_iter()
            .map(|p| {
                let f = artinian_len(&p).expect("maximal ideals have finite colength");
                (p, f)
            })
            .collect();
        points.sort_by_cached_key(|(p, f)| (*f, point_coordinates(p), p.display()));
        let degrees: Vec<i64> = points.iter().map(|(_, f)| *f).collect();
        let Some(mults) = split_length(&degrees, target) else {
            return Err(Error::Unsupported(format!(
                "no effective divisor of length {target} over ({}) from fiber degrees {degrees:?}",
                q.display_with("t")
            )));
        };
        for ((p, f), c) in points.iter().zip(mults) {
            if c == 0 {
                continue;
            }
            let local = primary_of_length(p, c * f)?;
            transcript.push(format!(
                "over ({})^{a}: point {} of degree {f}, local ideal {} of length {}",
                q.display_with("t"),
                p.display(),
                local.display(),
                c * f
            ));
            ideal = ideal.product(&local);
        }
    }
    let divisor = GeneralizedDivisor::effective(ideal);
    let image = direct_image(chart, &divisor)?;
    let expected = Ideal::new(chart.base(), vec![chart.uni_to_base(e)]);
    if *image.ideal() != expected || !image.is_effective() {
        return Err(Error::Incompatible(format!("direct image {} differs from {}", image, expected)));
    }
    transcript.push(format!("direct image of {} is {}", divisor.display(), image.display()));
    Ok(Preimage { divisor, transcript })
}

/// Values of the variables at a rational point over `F_p`, for a stable point order.
fn point_coordinates(p: &Ideal) -> Vec<Option<u64>> {
    let ring = p.ring();
    (0..ring.nvars())
        .map(|i| {
            let v = p.reduce(&MultiPoly::var(ring.field(), ring.nvars(), i));
            v.constant_value().and_then(|c| c.residue()).or(if v.is_zero() { Some(0) } else { None })
        })
        .collect()
}

/// Non-negative `c_i` with `sum c_i * d_i = target`, favoring earlier entries.
fn split_length(degrees: &[i64], target: i64) -> Option<Vec<i64>> {
    if degrees.is_empty() {
        return (target == 0).then(Vec::new);
    }
    let d = degrees[0];
    let mut c = target / d;
    loop {
        if let Some(mut rest) = split_length(&degrees[1..], target - c * d) {
            rest.insert(0, c);
            return Some(rest);
        }
        if c == 0 {
            return None;
        }
        c -= 1;
    }
}

/// A `P`-primary ideal of colength `len`, a multiple of the residue degree of `P`.
fn primary_of_length(p: &Ideal, len: i64) -> Result<Ideal> {
    let f = artinian_len(p)?;
    let mut q = p.power((len / f) as u32);
    let mut cur = artinian_len(&q)?;
    while cur > len {
        // adding an element of (Q : P) \ Q lowers the colength by exactly deg P
        let socle = q.colon(p);
        let g = socle
            .canonical_generators()
            .into_iter()
            .find(|g| !q.contains(g))
            .expect("Q : P strictly contains Q for P-primary Q");
        q = q.sum(&Ideal::new(p.ring(), vec![g]));
        cur = artinian_len(&q)?;
    }
    Ok(q)
}
