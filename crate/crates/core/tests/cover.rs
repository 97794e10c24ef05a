mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spectral_core::cover::{ideal_iso_test, ideal_norm, BaseFraction, CoverChart, FractionalIdeal, IsoResult};
use spectral_core::groebner::Ideal;
use spectral_core::kernel::{random_unipoly, Field, MultiPoly, UniPoly};

use common::{elem, f7, random_cover, random_element, sqrt_t, tacnode};

fn uni(chart: &CoverChart, f: &MultiPoly) -> UniPoly {
    chart.base_to_uni(f).unwrap()
}

fn t_poly(field: Field, coeffs: &[i64]) -> UniPoly {
    UniPoly::from_i64s(field, coeffs)
}

#[test]
fn element_norm_examples() {
    let c = sqrt_t(f7());
    assert!(c.element_norm(&elem(&c, "1")).is_one());
    assert_eq!(c.element_norm(&elem(&c, "x")), c.base().parse("-t").unwrap());
    assert_eq!(c.element_norm(&elem(&c, "3")), c.base().parse("9").unwrap());
    let tac = tacnode(Field::Rational);
    assert_eq!(tac.element_norm(&elem(&tac, "x")), tac.base().parse("-s").unwrap());
}

#[test]
fn element_trace_examples() {
    let c = sqrt_t(f7());
    assert_eq!(c.element_trace(&elem(&c, "1")), c.base().parse("2").unwrap());
    assert!(c.element_trace(&elem(&c, "x")).is_zero());
    let f = elem(&c, "t^2 + 3 + (t - 1)*x");
    assert_eq!(c.element_trace(&f), c.base().parse("2*t^2 + 6").unwrap());
}

#[test]
fn ideal_norm_examples() {
    let c = sqrt_t(f7());
    let one = BaseFraction::principal(&UniPoly::one(f7())).unwrap();
    assert_eq!(ideal_norm(&c, &FractionalIdeal::unit(&c)).unwrap(), one);
    let x = FractionalIdeal::principal(&c, &elem(&c, "x"));
    assert_eq!(ideal_norm(&c, &x).unwrap(), BaseFraction::principal(&t_poly(f7(), &[0, 1])).unwrap());
    let g = elem(&c, "t^2 + 3*t + 1");
    let ext = FractionalIdeal::principal(&c, &g);
    let g2 = t_poly(f7(), &[1, 3, 1]).pow(2);
    assert_eq!(ideal_norm(&c, &ext).unwrap(), BaseFraction::principal(&g2).unwrap());
    let inv = FractionalIdeal::inverse_principal(&c, &elem(&c, "x")).unwrap();
    assert_eq!(ideal_norm(&c, &inv).unwrap().to_string(), "(1)/(t)");
}

#[test]
fn ideal_norm_needs_principal_base() {
    let tac = tacnode(Field::Rational);
    assert!(ideal_norm(&tac, &FractionalIdeal::unit(&tac)).is_err());
}

#[test]
fn nonregular_denominator_rejected() {
    let tac = tacnode(Field::Rational);
    // y - x^2 = t - s is a zero divisor in A
    assert!(FractionalIdeal::new(&tac, Ideal::unit(tac.ring()), elem(&tac, "t - s")).is_err());
}

#[test]
fn iso_test_examples() {
    let c = sqrt_t(f7());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let j = FractionalIdeal::integral(Ideal::new(c.ring(), vec![elem(&c, "x"), elem(&c, "t - 1")]));
    let res = ideal_iso_test(&c, &j, &j, 20, &mut rng).unwrap();
    assert_eq!(res.witness_display(&c).as_deref(), Some("1"));

    let x = FractionalIdeal::principal(&c, &elem(&c, "x"));
    let xinv = FractionalIdeal::inverse_principal(&c, &elem(&c, "x")).unwrap();
    let res = ideal_iso_test(&c, &x, &xinv, 20, &mut rng).unwrap();
    assert_eq!(res.witness_display(&c).as_deref(), Some("t"));

    // (1) = x^{-1} (x): the two are isomorphic on the chart
    let unit = FractionalIdeal::unit(&c);
    let res = ideal_iso_test(&c, &unit, &x, 20, &mut rng).unwrap();
    match &res {
        IsoResult::Isomorphic { num, den } => {
            let lhs = FractionalIdeal::new(&c, x.numerator().scale(num), den.clone()).unwrap();
            assert!(lhs.equals(&unit));
        }
        other => panic!("expected isomorphic, got {other:?}"),
    }
}

#[test]
fn iso_test_detects_non_invertible() {
    let c = CoverChart::monic_over_line(Field::Rational, &["0", "-t^2"]).unwrap();
    let m = FractionalIdeal::integral(Ideal::new(c.ring(), vec![elem(&c, "x"), elem(&c, "t")]));
    assert!(!m.is_invertible(&c).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let res = ideal_iso_test(&c, &FractionalIdeal::unit(&c), &m, 20, &mut rng).unwrap();
    assert!(matches!(res, IsoResult::NotIsomorphic { .. }), "{res:?}");
}

#[test]
fn fractional_ideal_arithmetic() {
    let c = sqrt_t(f7());
    let x = FractionalIdeal::principal(&c, &elem(&c, "x"));
    let dual = x.dual(&c).unwrap();
    assert!(dual.equals(&FractionalIdeal::inverse_principal(&c, &elem(&c, "x")).unwrap()));
    assert!(x.product(&dual).equals(&FractionalIdeal::unit(&c)));
    assert!(x.is_invertible(&c).unwrap());
}

fn check_norm_multiplicative(n: usize, seed: u64) {
    let field = Field::prime(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = random_cover(field, n, &mut rng);
    let f = random_element(&c, 2, &mut rng);
    let g = random_element(&c, 2, &mut rng);
    let fg = c.ring().nf(&(&f * &g));
    assert_eq!(c.element_norm(&fg), c.base().nf(&(&c.element_norm(&f) * &c.element_norm(&g))));
    let mu = c.uni_to_base(&random_unipoly(field, 2, &mut rng));
    let muf = c.ring().nf(&(&c.embed_base(&mu) * &f));
    let expected = c.base().nf(&(&mu.pow(n as u32) * &c.element_norm(&f)));
    assert_eq!(c.element_norm(&muf), expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_is_multiplicative(n in 2usize..=4, seed in any::<u64>()) {
        check_norm_multiplicative(n, seed);
    }

    #[test]
    fn principal_ideal_norm_matches_element_norm(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), n, &mut rng);
        let f = random_element(&c, 2, &mut rng);
        let nm = c.element_norm(&f);
        prop_assume!(!nm.is_zero());
        let got = ideal_norm(&c, &FractionalIdeal::principal(&c, &f)).unwrap();
        prop_assert_eq!(got, BaseFraction::principal(&uni(&c, &nm)).unwrap());
    }

    #[test]
    fn ideal_norm_multiplicative_with_invertible_factor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), 2, &mut rng);
        let a = random_element(&c, 1, &mut rng);
        let b = c.embed_base(&c.uni_to_base(&random_unipoly(f7(), 1, &mut rng)));
        let j1 = FractionalIdeal::integral(Ideal::new(c.ring(), vec![a, b]));
        prop_assume!(j1.is_nondegenerate(&c));
        let f = random_element(&c, 1, &mut rng);
        prop_assume!(c.is_regular(&f));
        let j2 = FractionalIdeal::principal(&c, &f);
        let lhs = ideal_norm(&c, &j1.product(&j2)).unwrap();
        let rhs = ideal_norm(&c, &j1).unwrap().mul(&ideal_norm(&c, &j2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn iso_witness_is_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(f7(), 2, &mut rng);
        let g = random_element(&c, 1, &mut rng);
        prop_assume!(c.is_regular(&g));
        let a = random_element(&c, 1, &mut rng);
        let b = c.embed_base(&c.uni_to_base(&random_unipoly(f7(), 1, &mut rng)));
        let j2 = FractionalIdeal::integral(Ideal::new(c.ring(), vec![a, b]));
        prop_assume!(j2.is_nondegenerate(&c));
        let j1 = j2.scale(&g);
        if let IsoResult::Isomorphic { num, den } = ideal_iso_test(&c, &j1, &j2, 10, &mut rng).unwrap() {
            let lhs = FractionalIdeal::new(&c, j2.numerator().scale(&num), c.ring().nf(&(j2.denominator() * &den))).unwrap();
            prop_assert!(lhs.equals(&j1));
        }
    }
}
