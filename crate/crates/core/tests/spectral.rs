mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spectral_core::cover::{ideal_iso_test, ideal_norm, BaseFraction, CoverChart, FractionalIdeal, NumericProfile};
use spectral_core::groebner::{Ideal, QuotientRing};
use spectral_core::kernel::matrix::det;
use spectral_core::kernel::{random_unipoly, Field, Matrix, MultiPoly, Ring, UniPoly, UniRing};
use spectral_core::spectral::*;

use common::{elem, f7, ideal, sqrt_t};

fn higgs(field: Field, rows: &[&[&str]]) -> HiggsChart {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    HiggsChart::parse(field, &rows).unwrap()
}

fn t_poly(field: Field, coeffs: &[i64]) -> UniPoly {
    UniPoly::from_i64s(field, coeffs)
}

fn random_higgs(field: Field, r: usize, max_deg: usize, rng: &mut ChaCha8Rng) -> HiggsChart {
    HiggsChart::new(field, Matrix::from_fn(r, r, |_, _| random_unipoly(field, max_deg, rng))).unwrap()
}

/// A random Higgs field whose characteristic polynomial is squarefree.
fn random_reduced_higgs(field: Field, r: usize, max_deg: usize, rng: &mut ChaCha8Rng) -> HiggsChart {
    loop {
        let phi = random_higgs(field, r, max_deg, rng);
        if !discriminant(field, &phi.char_coeffs()).is_zero() {
            return phi;
        }
    }
}

fn is_conjugator(g: &Matrix<UniPoly>, phi: &HiggsChart, psi: &HiggsChart) -> bool {
    let ring = UniRing(phi.field());
    let d = det(&ring, g).unwrap();
    !d.is_zero() && d.is_constant() && g.mul(&ring, phi.matrix()).unwrap() == psi.matrix().mul(&ring, g).unwrap()
}

fn module(chart: &CoverChart, gens: &[&str]) -> SpectralModule {
    SpectralModule::integral(ideal(chart.ring(), gens))
}

#[test]
fn char_coeffs_examples() {
    let zero = higgs(f7(), &[&["0", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]);
    assert!(zero.char_coeffs().iter().all(|a| a.is_zero()));
    assert_eq!(zero.char_coeffs().len(), 3);

    let c = sqrt_t(f7());
    let x = HiggsChart::new(f7(), companion(&c).unwrap()).unwrap();
    assert_eq!(x.char_coeffs(), vec![UniPoly::zero(f7()), t_poly(f7(), &[0, -1])]);

    let d = higgs(f7(), &[&["t + 1", "0"], &["0", "t^2"]]);
    let (f, g) = (t_poly(f7(), &[1, 1]), t_poly(f7(), &[0, 0, 1]));
    assert_eq!(d.char_coeffs(), vec![-&(&f + &g), &f * &g]);
}

#[test]
fn higgs_display() {
    let phi = higgs(f7(), &[&["0", "1"], &["t", "0"]]);
    assert_eq!(phi.display(), "[[0, 1], [t, 0]]");
    assert_eq!(phi.max_entry_degree(), 1);
}

#[test]
fn parse_rejects_non_square() {
    let rows = vec![vec!["1".to_string(), "t".to_string()]];
    assert!(HiggsChart::parse(f7(), &rows).is_err());
}

#[test]
fn pushforward_of_structure_sheaf_is_companion() {
    let c = sqrt_t(f7());
    let phi = module_to_higgs(&c, &SpectralModule::structure(&c)).unwrap();
    assert_eq!(phi.matrix(), &companion(&c).unwrap());
    assert_eq!(phi.display(), "[[0, t], [1, 0]]");
}

#[test]
fn pushforward_of_point_ideal() {
    let c = sqrt_t(f7());
    let phi = module_to_higgs(&c, &module(&c, &["x", "t"])).unwrap();
    assert_eq!(phi.display(), "[[0, 1], [t, 0]]");
    assert_eq!(phi.char_coeffs(), cover_coeffs(&c).unwrap());
}

#[test]
fn rank_one_pushforward_is_scalar() {
    let c = CoverChart::monic_over_line(f7(), &["-t^2 - 1"]).unwrap();
    let phi = module_to_higgs(&c, &SpectralModule::structure(&c)).unwrap();
    assert_eq!(phi.display(), "[[t^2 + 1]]");
    let back = higgs_to_module(&c, &phi).unwrap();
    assert_eq!(module_to_higgs(&c, &back).unwrap().matrix(), phi.matrix());
}

#[test]
fn twist_is_recorded() {
    let c = sqrt_t(f7());
    let phi = HiggsChart::new(f7(), companion(&c).unwrap()).unwrap();
    let m = higgs_to_module(&c, &phi).unwrap();
    assert_eq!(m.twist, 1);
    assert_eq!(module_to_higgs(&c, &m).unwrap().twist, 1);
}

#[test]
fn higgs_to_module_rejects_wrong_cover() {
    let c = sqrt_t(f7());
    let phi = higgs(f7(), &[&["0", "1"], &["t + 1", "0"]]);
    assert!(higgs_to_module(&c, &phi).is_err());
}

#[test]
fn companion_corresponds_to_structure_sheaf() {
    let c = sqrt_t(f7());
    let phi = HiggsChart::new(f7(), companion(&c).unwrap()).unwrap();
    let k = krylov_form(&c, &phi).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let res = ideal_iso_test(&c, &k.ideal, &FractionalIdeal::unit(&c), 20, &mut rng).unwrap();
    assert!(res.is_isomorphic());
}

#[test]
fn presentation_display() {
    let c = sqrt_t(f7());
    let phi = higgs(f7(), &[&["0", "1"], &["t", "0"]]);
    let m = higgs_to_module(&c, &phi).unwrap();
    assert_eq!(m.display(&c), "coker [[-x, 1], [t, -x]]");
}

#[test]
fn torsion_presentation_rejected() {
    let c = sqrt_t(f7());
    // S / (t) has no free part
    let m = SpectralModule::presentation(Matrix::from_fn(1, 1, |_, _| elem(&c, "t")));
    assert!(module_to_higgs(&c, &m).is_err());
}

#[test]
fn bnr_q_on_elements() {
    let c = sqrt_t(f7());
    let s = SpectralModule::structure(&c);
    assert_eq!(bnr_q_map(&c, &s, &elem(&c, "1")).unwrap(), "1 ⊗ x + x ⊗ 1");
    assert_eq!(bnr_q_map(&c, &s, &elem(&c, "x")).unwrap(), "1 ⊗ t + x ⊗ x");
    assert!(bnr_q_map(&c, &module(&c, &["x", "t"]), &elem(&c, "1")).is_err());
}

#[test]
fn bnr_sequence_passes_on_examples() {
    let c = sqrt_t(f7());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in [SpectralModule::structure(&c), module(&c, &["x", "t"]), module(&c, &["x - 2", "t - 4"])] {
        let rep = verify_bnr_sequence(&c, &m, 6, &mut rng).unwrap();
        assert_eq!(rep.status, BnrStatus::Pass, "{:?}", rep.transcript);
        assert!(rep.points.len() >= 6);
        assert!(rep.points.iter().all(|p| p.rank_psi == 2 && p.rank_q == 2 && p.rank_ev == 2));
    }
}

#[test]
fn bnr_fibers_avoid_branch_points() {
    let c = sqrt_t(f7());
    let disc = discriminant(f7(), &cover_coeffs(&c).unwrap());
    assert_eq!(disc.degree(), Some(1));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pts = closed_points(f7(), &disc, 10, &mut rng);
    assert_eq!(pts.len(), 10);
    assert!(pts.iter().all(|q| q.gcd(&disc).is_one() && q.is_irreducible().unwrap()));
    assert!(!pts.contains(&t_poly(f7(), &[0, 1])));
}

#[test]
fn closed_points_over_rationals() {
    let disc = t_poly(Field::Rational, &[0, 4]);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let pts = closed_points(Field::Rational, &disc, 3, &mut rng);
    let shown: Vec<String> = pts.iter().map(|q| q.display_with("t")).collect();
    assert_eq!(shown, vec!["t - 1", "t + 1", "t - 2"]);
}

#[test]
fn norm_fiber_examples() {
    let c = sqrt_t(f7());
    assert!(norm_fiber_check(&c, &SpectralModule::structure(&c)).unwrap().is_in_fiber());
    match norm_fiber_check(&c, &module(&c, &["x"])).unwrap() {
        NormFiber::NotInFiber { norm } => assert_eq!(norm.to_string(), "(t)"),
        other => panic!("{other:?}"),
    }
    // P^2 / (t - 4) for the point P = (x - 2, t - 4)
    let p = FractionalIdeal::integral(ideal(c.ring(), &["x - 2", "t - 4"]));
    let balanced = FractionalIdeal::new(&c, p.product(&p).numerator().clone(), elem(&c, "t - 4")).unwrap();
    assert!(norm_fiber_check(&c, &SpectralModule::fractional(balanced.clone())).unwrap().is_in_fiber());
    let shifted = balanced.scale(&elem(&c, "t + 3"));
    assert!(!norm_fiber_check(&c, &SpectralModule::fractional(shifted)).unwrap().is_in_fiber());
}

#[test]
fn norm_fiber_unit_of_unit_ideal() {
    let c = sqrt_t(f7());
    match norm_fiber_check(&c, &SpectralModule::fractional(FractionalIdeal::principal(&c, &elem(&c, "3")))).unwrap() {
        NormFiber::InFiber { unit } => assert!(unit.is_one()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sp_parity_examples() {
    let c = sqrt_t(f7());
    assert!(sp_parity_check(&cover_coeffs(&c).unwrap()));
    let odd = CoverChart::monic_over_line(f7(), &["t", "0"]).unwrap();
    assert!(!sp_parity_check(&cover_coeffs(&odd).unwrap()));
    let cubic = CoverChart::monic_over_line(f7(), &["0", "t", "0"]).unwrap();
    assert!(!sp_parity_check(&cover_coeffs(&cubic).unwrap()));
}

#[test]
fn sigma_examples() {
    let c = sqrt_t(f7());
    let m = module(&c, &["x - 2", "t - 4"]);
    let s = sigma_pullback(&c, &m).unwrap();
    let expected = FractionalIdeal::integral(ideal(c.ring(), &["x + 2", "t - 4"]));
    assert!(fractional_form(&c, &s).unwrap().equals(&expected));
    let back = sigma_pullback(&c, &s).unwrap();
    assert!(fractional_form(&c, &back).unwrap().equals(&fractional_form(&c, &m).unwrap()));

    let odd = CoverChart::monic_over_line(f7(), &["t", "0"]).unwrap();
    assert!(sigma_pullback(&odd, &SpectralModule::structure(&odd)).is_err());
}

#[test]
fn sp_duality_examples() {
    let c = sqrt_t(f7());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = [(vec!["1"], "1"), (vec!["x"], "t"), (vec!["x - 3"], "t - 2")];
    for (gens, witness) in cases {
        let m = module(&c, &gens);
        let res = sp_duality_check(&c, &m, 20, &mut rng).unwrap();
        assert_eq!(res.witness_display(&c).as_deref(), Some(witness), "{gens:?}");
        let SpDuality::Holds { num, den } = res else { unreachable!() };
        assert!(verify_sp_witness(&c, &m, &num, &den).unwrap());
    }
    assert_eq!(sp_duality_twist(&c), -1);
}

#[test]
fn sp_duality_for_non_principal_point() {
    let c = sqrt_t(f7());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = module(&c, &["x - 2", "t - 4"]);
    let res = sp_duality_check(&c, &m, 20, &mut rng).unwrap();
    let SpDuality::Holds { num, den } = res else { panic!("{res:?}") };
    assert!(verify_sp_witness(&c, &m, &num, &den).unwrap());
}

#[test]
fn gsp_translate_example() {
    let phi = higgs(f7(), &[&["2", "0"], &["0", "0"]]);
    let (shifted, mu) = gsp_translate(&phi).unwrap();
    assert!(mu.is_one());
    assert_eq!(shifted.display(), "[[1, 0], [0, -1]]");
    assert!(gsp_char_identity(&phi, &shifted, &mu));
}

#[test]
fn gsp_translate_rejects_odd_rank_and_small_characteristic() {
    let odd = higgs(f7(), &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
    assert!(gsp_translate(&odd).is_err());
    let f2 = Field::prime(2).unwrap();
    assert!(gsp_translate(&higgs(f2, &[&["1", "0"], &["0", "0"]])).is_err());
}

#[test]
fn taylor_shift_example() {
    // (x + 1)^2 - t = x^2 + 2x + 1 - t
    let c = sqrt_t(f7());
    let shifted = taylor_shift(f7(), &cover_coeffs(&c).unwrap(), &UniPoly::one(f7()));
    assert_eq!(shifted, vec![t_poly(f7(), &[2]), t_poly(f7(), &[1, -1])]);
}

fn profile(r: i64, g: i64, l: i64, d: i64) -> NumericProfile {
    NumericProfile::new(r, g, l, d).unwrap()
}

#[test]
fn degree_formula_examples() {
    let gl = degree_formulas(&profile(2, 2, 3, 0), Group::GL);
    assert_eq!((gl.cover_degree, gl.d_prime, gl.chi, gl.deg_omega), (2, 3, -5, 10));
    let line = degree_formulas(&profile(1, 3, 2, 5), Group::GL);
    assert_eq!((line.d_prime, line.chi, line.deg_omega), (5, -2, 4));
    let sp = degree_formulas(&profile(1, 0, 2, 0), Group::Sp);
    assert_eq!((sp.cover_degree, sp.d_prime), (2, 2));
    let sl = degree_formulas(&profile(2, 2, 3, 7), Group::SL);
    assert_eq!(sl.d_prime, 3);
    let gsp = degree_formulas(&profile(1, 0, 2, 3), Group::GSp);
    assert_eq!(gsp.d_prime, 5);
}

#[test]
fn group_names_round_trip() {
    for g in Group::ALL {
        assert_eq!(g.as_str().parse::<Group>().unwrap(), g);
    }
    assert!("PGL".parse::<Group>().is_err());
}

/// `deg M` from Riemann-Roch on both curves, with the genus of the spectral curve from
/// adjunction: `ω_X = π*(ω_C ⊗ L^(n-1))`.
fn genus_route(p: &NumericProfile, group: Group) -> (BigRational, BigRational) {
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let n = match group {
        Group::GL | Group::SL => p.r,
        Group::Sp | Group::GSp => 2 * p.r,
    };
    let deg_e = match group {
        Group::GL => q(p.d),
        Group::SL | Group::Sp => q(0),
        Group::GSp => q(p.r * p.d),
    };
    let deg_omega_x = q(n) * q(2 * p.g - 2) + q(n * (n - 1)) * q(p.l);
    let genus_x = q(1) + deg_omega_x / q(2);
    let chi_x = q(1) - genus_x;
    (deg_e + q(n) * q(1 - p.g) - chi_x.clone(), chi_x)
}

#[test]
fn degree_formulas_match_genus_route() {
    for r in 1..=5 {
        for g in 0..=4 {
            for l in 0..=6 {
                for d in -3..=3 {
                    let p = profile(r, g, l, d);
                    for group in Group::ALL {
                        let rec = degree_formulas(&p, group);
                        let (d_prime, chi) = genus_route(&p, group);
                        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
                        assert_eq!(q(rec.d_prime), d_prime, "{group} {p:?}");
                        assert_eq!(q(rec.chi), chi, "{group} {p:?}");
                        assert_eq!(2 * rec.chi, -rec.deg_omega);
                    }
                }
            }
        }
    }
}

#[test]
fn polarized_rank_examples() {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    assert_eq!(polarized_rank(&[q(1, 1), q(0, 1)], &[1, 1], &[1, 1]).unwrap(), q(1, 2));
    assert_eq!(polarized_rank(&[q(1, 1), q(1, 1), q(1, 1)], &[1, 1, 1], &[1, 1, 1]).unwrap(), q(1, 1));
    assert_eq!(polarized_rank(&[q(1, 1), q(0, 1)], &[2, 1], &[1, 3]).unwrap(), q(2, 5));
    assert!(polarized_rank(&[q(1, 1)], &[1, 1], &[1]).is_err());
    assert!(polarized_rank(&[q(1, 1)], &[0], &[1]).is_err());
}

/// `P(x)` as a polynomial in `x, t` with no relation.
fn cover_polynomial_free(field: Field, coeffs: &[UniPoly]) -> (Arc<QuotientRing>, MultiPoly) {
    let ring = Arc::new(QuotientRing::polynomial(field, vec!["x".into(), "t".into()]));
    let n = coeffs.len();
    let x = ring.var(0);
    let mut p = ring.var(0).pow(n as u32);
    for (i, a) in coeffs.iter().enumerate() {
        p = &p + &(&MultiPoly::from_uni(a, 2, 1) * &x.pow((n - 1 - i) as u32));
    }
    (ring, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_recovers_conjugacy_class(seed in any::<u64>(), r in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_reduced_higgs(f7(), r, 3, &mut rng);
        let chart = spectral_cover(&phi).unwrap();
        let m = higgs_to_module(&chart, &phi).unwrap();

        // presentation route: the classes of the standard vectors conjugate Φ to the result
        let push = pushforward(&chart, &m).unwrap();
        prop_assert_eq!(push.higgs.char_coeffs(), phi.char_coeffs());
        let cols: Vec<Vec<UniPoly>> = (0..r).map(|k| {
            let v: Vec<MultiPoly> = (0..r).map(|i| if i == k { chart.ring().one() } else { chart.ring().zero() }).collect();
            push.class_of(&chart, &v).unwrap()
        }).collect();
        let g = Matrix::from_columns(r, &cols);
        prop_assert!(is_conjugator(&g, &phi, &push.higgs));

        // fractional route: the Krylov conjugator, and the bounded search
        let k = krylov_form(&chart, &phi).unwrap();
        let back = module_to_higgs(&chart, &SpectralModule::fractional(k.ideal.clone())).unwrap();
        prop_assert_eq!(back.char_coeffs(), phi.char_coeffs());
        prop_assert!(is_conjugator(&k.conjugator(&chart).unwrap(), &phi, &back));
        match conjugacy_search(&phi, &back, default_bound(&phi, &back), 32, &mut rng).unwrap() {
            ConjugacyResult::Found { g, .. } => prop_assert!(is_conjugator(&g, &phi, &back)),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn conjugacy_search_never_pairs_different_covers(seed in any::<u64>(), r in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_higgs(f7(), r, 2, &mut rng);
        let psi = random_higgs(f7(), r, 2, &mut rng);
        prop_assume!(phi.char_coeffs() != psi.char_coeffs());
        let res = conjugacy_search(&phi, &psi, 2, 8, &mut rng).unwrap();
        prop_assert!(matches!(res, ConjugacyResult::NotConjugate { .. }), "{:?}", res);
    }

    #[test]
    fn conjugate_by_elementary_matrix_is_found(seed in any::<u64>(), r in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_higgs(f7(), r, 2, &mut rng);
        let ring = UniRing(f7());
        let c = random_unipoly(f7(), 1, &mut rng);
        let mut e = Matrix::identity(&ring, r);
        e.set(0, 1, c.clone());
        let mut einv = Matrix::identity(&ring, r);
        einv.set(0, 1, -&c);
        let psi = HiggsChart::new(f7(), e.mul(&ring, phi.matrix()).unwrap().mul(&ring, &einv).unwrap()).unwrap();
        let res = conjugacy_search(&phi, &psi, default_bound(&phi, &psi), 32, &mut rng).unwrap();
        match res {
            ConjugacyResult::Found { g, .. } => prop_assert!(is_conjugator(&g, &phi, &psi)),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn bnr_compositions_vanish(seed in any::<u64>(), r in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_higgs(f7(), r, 2, &mut rng);
        let chart = spectral_cover(&phi).unwrap();
        let b = bnr_matrices(&chart, &phi).unwrap();
        let ring = UniRing(f7());
        prop_assert!(b.psi.mul(&ring, &b.q).unwrap().is_zero(&ring));
        prop_assert!(b.ev.mul(&ring, &b.psi).unwrap().is_zero(&ring));
    }

    #[test]
    fn bnr_sequence_exact_for_random_higgs(seed in any::<u64>(), r in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_reduced_higgs(f7(), r, 2, &mut rng);
        let chart = spectral_cover(&phi).unwrap();
        let m = higgs_to_module(&chart, &phi).unwrap();
        let rep = verify_bnr_sequence(&chart, &m, 4, &mut rng).unwrap();
        prop_assert_eq!(rep.status, BnrStatus::Pass, "{:?}", rep.transcript);
    }

    #[test]
    fn hitchin_image_of_ideals(seed in any::<u64>(), a in 0i64..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = vec![random_unipoly(f7(), 2, &mut rng), random_unipoly(f7(), 2, &mut rng)];
        let chart = cover_from_coeffs(f7(), &coeffs).unwrap();
        let g = elem(&chart, &format!("x - {a}"));
        let h = elem(&chart, &format!("t^2 + {a}*x + 1"));
        let j = FractionalIdeal::integral(Ideal::new(chart.ring(), vec![g, h]));
        prop_assume!(j.is_nondegenerate(&chart));
        let phi = module_to_higgs(&chart, &SpectralModule::fractional(j)).unwrap();
        prop_assert_eq!(phi.char_coeffs(), coeffs);
    }

    #[test]
    fn balanced_principal_ideals_lie_in_norm_fiber(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sqrt_t(f7());
        let h = common::random_element(&c, 2, &mut rng);
        prop_assume!(c.is_regular(&h));
        let nm = c.element_norm(&h);
        let hn = FractionalIdeal::principal(&c, &c.ring().nf(&(&h * &h)));
        let balanced = FractionalIdeal::new(&c, hn.numerator().clone(), c.embed_base(&nm)).unwrap();
        prop_assert!(norm_fiber_check(&c, &SpectralModule::fractional(balanced.clone())).unwrap().is_in_fiber());
        let g = elem(&c, "t - 1");
        let off = balanced.scale(&g);
        prop_assert!(!norm_fiber_check(&c, &SpectralModule::fractional(off.clone())).unwrap().is_in_fiber());
        let expected = BaseFraction::principal(&t_poly(f7(), &[-1, 1]).pow(2)).unwrap();
        prop_assert_eq!(ideal_norm(&c, &off).unwrap(), expected);
    }

    #[test]
    fn sp_parity_matches_invariance(seed in any::<u64>(), n in 1usize..=4, even in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs: Vec<UniPoly> = (0..n)
            .map(|i| if even && i % 2 == 0 { UniPoly::zero(f7()) } else { random_unipoly(f7(), 2, &mut rng) })
            .collect();
        let (ring, p) = cover_polynomial_free(f7(), &coeffs);
        let flipped = p.substitute(&[-&ring.var(0), ring.var(1)]);
        prop_assert_eq!(sp_parity_check(&coeffs), flipped == p);
    }

    #[test]
    fn sigma_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = CoverChart::monic_over_line(f7(), &["0", "-t^2 - 1"]).unwrap();
        let g = common::random_element(&c, 1, &mut rng);
        prop_assume!(c.is_regular(&g));
        let m = SpectralModule::integral(Ideal::new(c.ring(), vec![g.clone(), elem(&c, "t + 2")]));
        let twice = sigma_pullback(&c, &sigma_pullback(&c, &m).unwrap()).unwrap();
        prop_assert!(fractional_form(&c, &twice).unwrap().equals(&fractional_form(&c, &m).unwrap()));
    }

    #[test]
    fn gsp_translate_is_traceless(seed in any::<u64>(), half in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_higgs(f7(), 2 * half, 2, &mut rng);
        let (shifted, mu) = gsp_translate(&phi).unwrap();
        prop_assert!(shifted.trace().is_zero());
        prop_assert!(gsp_char_identity(&phi, &shifted, &mu));
        prop_assert_eq!(&shifted.char_coeffs()[0], &UniPoly::zero(f7()));
    }

    #[test]
    fn degree_formula_identities(r in 1i64..=8, g in 0i64..=6, l in 0i64..=8, d in -5i64..=5) {
        let p = profile(r, g, l, d);
        for group in Group::ALL {
            let rec = degree_formulas(&p, group);
            prop_assert_eq!(2 * rec.chi, -rec.deg_omega);
        }
        let gl = degree_formulas(&p, Group::GL);
        let sl = degree_formulas(&p, Group::SL);
        prop_assert_eq!(gl.d_prime - sl.d_prime, d);
        let sp = degree_formulas(&p, Group::Sp);
        let gsp = degree_formulas(&p, Group::GSp);
        prop_assert_eq!(gsp.d_prime - sp.d_prime, r * d);
    }
}
