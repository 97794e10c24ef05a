mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spectral_core::cover::CoverChart;
use spectral_core::divisors::{
    direct_image, divisor_sum, find_preimage_divisor, fitting_generator, fitting_ideal_minors, inverse_image,
    local_length, GeneralizedDivisor,
};
use spectral_core::groebner::{Dimension, Ideal};
use spectral_core::kernel::{random_unipoly, Field, UniPoly};
use spectral_core::Error;

use common::{elem, f7, ideal, random_cover, random_element, sqrt_t, tacnode};

fn eff(chart: &CoverChart, gens: &[&str]) -> GeneralizedDivisor {
    GeneralizedDivisor::effective(ideal(chart.ring(), gens))
}

fn base_div(chart: &CoverChart, gens: &[&str]) -> GeneralizedDivisor {
    GeneralizedDivisor::effective(ideal(chart.base(), gens))
}

fn random_effective(chart: &CoverChart, rng: &mut ChaCha8Rng) -> GeneralizedDivisor {
    let a = random_element(chart, 1, rng);
    let mut b = random_unipoly(chart.field(), 2, rng);
    if b.is_zero() {
        b = UniPoly::from_i64s(chart.field(), &[1, 1]);
    }
    let b = chart.embed_base(&chart.uni_to_base(&b));
    GeneralizedDivisor::effective(Ideal::new(chart.ring(), vec![a, b]))
}

#[test]
fn tacnode_direct_images() {
    let c = tacnode(Field::Rational);
    // y = t in the presentation of A over B
    let d = eff(&c, &["x^2", "t"]);
    let img = direct_image(&c, &d).unwrap();
    assert_eq!(*img.ideal(), ideal(c.base(), &["s^2", "s*t", "t^2"]));
    assert_eq!(d.chart_degree().unwrap(), 2);
    assert_eq!(img.chart_degree().unwrap(), 3);

    let dx = eff(&c, &["x"]);
    let img = direct_image(&c, &dx).unwrap();
    assert_eq!(*img.ideal(), ideal(c.base(), &["s"]));
    assert_eq!(dx.chart_degree().unwrap(), 2);
    assert_eq!(img.chart_degree().unwrap(), 2);
}

#[test]
fn direct_image_of_pullback_on_line() {
    let c = sqrt_t(f7());
    let d = eff(&c, &["t - 1"]);
    assert_eq!(*direct_image(&c, &d).unwrap().ideal(), ideal(c.base(), &["(t - 1)^2"]));
}

#[test]
fn inverse_image_examples() {
    let c = sqrt_t(f7());
    assert!(inverse_image(&c, &base_div(&c, &["1"])).unwrap().ideal().is_unit());
    assert_eq!(*inverse_image(&c, &base_div(&c, &["t"])).unwrap().ideal(), ideal(c.ring(), &["x^2"]));
    let tac = tacnode(Field::Rational);
    assert_eq!(*inverse_image(&tac, &base_div(&tac, &["s"])).unwrap().ideal(), ideal(tac.ring(), &["x^2"]));
    assert!(inverse_image(&c, &eff(&c, &["x"])).is_err());
}

#[test]
fn divisor_sum_examples() {
    let tac = tacnode(Field::Rational);
    let dx = eff(&tac, &["x"]);
    let zero = GeneralizedDivisor::zero(tac.ring());
    assert!(divisor_sum(&dx, &zero).unwrap().equals(&dx));
    let twice = divisor_sum(&dx, &dx).unwrap();
    assert_eq!(*twice.ideal(), ideal(tac.ring(), &["x^2"]));
    assert!(twice.is_effective());
    assert!(dx.is_cartier());
    assert!(!eff(&tac, &["x^2", "t"]).is_cartier());
}

#[test]
fn non_effective_direct_image() {
    let c = sqrt_t(f7());
    // (x - 1) - (x + 1): both push forward to (t - 1)
    let d = GeneralizedDivisor::new(ideal(c.ring(), &["x - 1"]), Some(elem(&c, "x + 1"))).unwrap();
    assert!(!d.is_effective());
    let img = direct_image(&c, &d).unwrap();
    assert!(img.equals(&GeneralizedDivisor::zero(c.base())));
    assert_eq!(d.chart_degree().unwrap(), 0);
    assert_eq!(img.chart_degree().unwrap(), 0);
}

#[test]
fn zero_divisor_negative_part_rejected() {
    let tac = tacnode(Field::Rational);
    let err = GeneralizedDivisor::new(Ideal::unit(tac.ring()), Some(elem(&tac, "t - s"))).unwrap_err();
    assert!(matches!(err, Error::NotRegular(_)));
}

#[test]
fn chart_degree_examples() {
    let c = sqrt_t(f7());
    assert_eq!(GeneralizedDivisor::zero(c.ring()).chart_degree().unwrap(), 0);
    let tac = tacnode(Field::Rational);
    assert_eq!(eff(&tac, &["x^2", "t"]).chart_degree().unwrap(), 2);
    let push = GeneralizedDivisor::effective(ideal(tac.base(), &["s^2", "s*t", "t^2"]));
    assert_eq!(push.chart_degree().unwrap(), 3);
    assert!(matches!(eff(&tac, &["t - s"]).chart_degree(), Err(Error::DegreeUndefined(_))));
}

#[test]
fn degree_at_point_examples() {
    let c = sqrt_t(f7());
    let d = base_div(&c, &["t^2*(t - 1)"]);
    assert_eq!(d.degree_at_point(&ideal(c.base(), &["t"])).unwrap(), 2);
    assert_eq!(d.degree_at_point(&ideal(c.base(), &["t - 1"])).unwrap(), 1);
    assert_eq!(d.degree_at_point(&ideal(c.base(), &["t - 2"])).unwrap(), 0);
    // t^2 + 1 is irreducible over F_7: one point of residue degree 2
    let e = base_div(&c, &["(t^2 + 1)^2"]);
    assert_eq!(e.degree_at_point(&ideal(c.base(), &["t^2 + 1"])).unwrap(), 4);
    assert!(matches!(d.degree_at_point(&ideal(c.base(), &["t^2"])), Err(Error::NotMaximal(_))));
}

#[test]
fn tacnode_degree_at_points() {
    let tac = tacnode(Field::Rational);
    let d = eff(&tac, &["x^2", "t"]);
    let support = d.support().unwrap();
    assert_eq!(support, vec![ideal(tac.ring(), &["x", "s", "t"])]);
    assert_eq!(d.degree_at_point(&support[0]).unwrap(), 2);
}

#[test]
fn find_preimage_examples() {
    let c = sqrt_t(f7());
    let one = find_preimage_divisor(&c, &UniPoly::one(f7())).unwrap();
    assert!(one.divisor.ideal().is_unit());

    let p = find_preimage_divisor(&c, &UniPoly::from_i64s(f7(), &[-1, 1])).unwrap();
    assert_eq!(*p.divisor.ideal(), ideal(c.ring(), &["x - 1", "t - 1"]));
    assert!(!p.transcript.is_empty());

    let p = find_preimage_divisor(&c, &UniPoly::from_i64s(f7(), &[0, 0, 1])).unwrap();
    assert_eq!(*p.divisor.ideal(), ideal(c.ring(), &["x^2"]));
    assert_eq!(*direct_image(&c, &p.divisor).unwrap().ideal(), ideal(c.base(), &["t^2"]));
}

#[test]
fn find_preimage_needs_a_point_of_the_right_degree() {
    // 3 is not a square mod 7, so the fiber over t = 3 is one point of degree 2
    let c = sqrt_t(f7());
    let err = find_preimage_divisor(&c, &UniPoly::from_i64s(f7(), &[-3, 1])).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
    let p = find_preimage_divisor(&c, &UniPoly::from_i64s(f7(), &[-3, 1]).pow(2)).unwrap();
    assert_eq!(*p.divisor.ideal(), ideal(c.ring(), &["t - 3"]));
}

#[test]
fn find_preimage_over_singular_fiber() {
    // cusp x^2 = t^3: the point over t = 0 is singular, lengths of P^k jump
    let c = CoverChart::monic_over_line(f7(), &["0", "-t^3"]).unwrap();
    for k in 1..=4 {
        let e = UniPoly::from_i64s(f7(), &[0, 1]).pow(k);
        let p = find_preimage_divisor(&c, &e).unwrap();
        assert_eq!(p.divisor.chart_degree().unwrap(), k as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fitting_routes_agree(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), n, &mut rng);
        let d = random_effective(&c, &mut rng);
        let g = fitting_generator(&c, d.ideal()).unwrap();
        prop_assert_eq!(fitting_ideal_minors(&c, d.ideal()), Ideal::new(c.base(), vec![c.uni_to_base(&g)]));
    }

    #[test]
    fn direct_image_of_inverse_image_is_n_times(n in 2usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), n, &mut rng);
        let g = random_unipoly(f7(), 3, &mut rng);
        prop_assume!(!g.is_zero());
        let d = GeneralizedDivisor::principal(c.base(), &c.uni_to_base(&g));
        let back = direct_image(&c, &inverse_image(&c, &d).unwrap()).unwrap();
        prop_assert_eq!(back.ideal().clone(), Ideal::new(c.base(), vec![c.uni_to_base(&g.pow(n as u32))]));
    }

    #[test]
    fn direct_image_is_linear_in_principal_summands(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), n, &mut rng);
        let d = random_effective(&c, &mut rng);
        let f = random_element(&c, 1, &mut rng);
        prop_assume!(c.is_regular(&f));
        let e = GeneralizedDivisor::principal(c.ring(), &f);
        let lhs = direct_image(&c, &divisor_sum(&d, &e).unwrap()).unwrap();
        let rhs = divisor_sum(&direct_image(&c, &d).unwrap(), &direct_image(&c, &e).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
        // principal consistency: pi_*((f)) = (Nm f)
        let nm = GeneralizedDivisor::principal(c.base(), &c.element_norm(&f));
        prop_assert!(direct_image(&c, &e).unwrap().equals(&nm));
    }

    #[test]
    fn degree_is_preserved_over_the_line(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), n, &mut rng);
        let d = random_effective(&c, &mut rng);
        let img = direct_image(&c, &d).unwrap();
        prop_assert_eq!(img.chart_degree().unwrap(), d.chart_degree().unwrap());
    }

    #[test]
    fn degrees_at_points_sum_to_total(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), n, &mut rng);
        let d = random_effective(&c, &mut rng);
        let total = d.chart_degree().unwrap();
        let mut sum = 0;
        for m in d.support().unwrap() {
            let local = d.degree_at_point(&m).unwrap();
            // oracle: dim S/I - dim S/(I : m^inf)
            let (sat, _) = d.ideal().saturate(&m);
            let oracle = match (d.ideal().artinian_dim(), sat.artinian_dim()) {
                (Dimension::Finite(a), Dimension::Finite(b)) => a as i64 - b as i64,
                _ => unreachable!("effective divisors here are Artinian"),
            };
            prop_assert_eq!(local, oracle);
            prop_assert_eq!(local_length(d.ideal(), &m).unwrap(), local);
            sum += local;
        }
        prop_assert_eq!(sum, total);
    }

    #[test]
    fn fitting_ideal_commutes_with_specialization(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), n, &mut rng);
        let d = random_effective(&c, &mut rng);
        let g = fitting_generator(&c, d.ideal()).unwrap();
        for v in 0..7 {
            let cv = f7().from_i64(v);
            let fiber = d.ideal().sum(&Ideal::new(c.ring(), vec![elem(&c, &format!("t - {v}"))]));
            let nonempty = fiber.artinian_dim() != Dimension::Finite(0);
            prop_assert_eq!(g.eval(&cv).is_zero(), nonempty);
        }
    }

    #[test]
    fn find_preimage_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), 2, &mut rng);
        let e = random_unipoly(f7(), 3, &mut rng);
        prop_assume!(!e.is_zero());
        match find_preimage_divisor(&c, &e) {
            Ok(p) => {
                let img = direct_image(&c, &p.divisor).unwrap();
                prop_assert_eq!(img.ideal().clone(), Ideal::new(c.base(), vec![c.uni_to_base(&e)]));
            }
            Err(Error::Unsupported(_)) => {}
            Err(other) => prop_assert!(false, "{other}"),
        }
    }
}
