use confpot::deformation::{
    closed_form_alignment, closed_form_cot_factor, closed_form_potential, ground_state_residual, induced_potential,
    induced_potential_with, master_formula_crosscheck, ColorDipole, CotFactor, DeformationProfile, ProfileFamily,
    ProfileTerm,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn interior(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + 0.01 + (b - a - 0.02) * i as f64 / (n - 1) as f64).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Second derivative by a five-point central stencil.
fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

#[test]
fn ground_state_satisfies_schrodinger_by_finite_differences() {
    // independent of the analytic U'': differentiate e^f sin^{K+1} numerically
    let profiles = [
        DeformationProfile::linear(0.8),
        DeformationProfile::log_cos(3.0),
        DeformationProfile::log_csc_cot(1.0),
        DeformationProfile::mic_kepler(1.0, -0.3),
        DeformationProfile::quadratic(0.5),
    ];
    for p in &profiles {
        let (a, b) = p.natural_domain();
        for k in 0..4 {
            let v = induced_potential(p, k, k).unwrap();
            let u = |x: f64| p.f(x).exp() * x.sin().powi(k as i32 + 1);
            let e = ((k + 1) * (k + 1)) as f64;
            for x in interior(a + 0.2, b - 0.2, 40) {
                let lhs = -d2(u, x, 1e-3) + v.total(x) * u(x);
                assert!((lhs - e * u(x)).abs() < 1e-6 * u(x).abs().max(1e-3), "{} K={k} chi={x}", p.family.name());
            }
        }
    }
}

#[test]
fn custom_terms_match_named_families() {
    let named = DeformationProfile::mic_kepler(1.4, -0.6);
    let custom = DeformationProfile::from_terms(vec![
        ProfileTerm::LnSin { weight: 0.7 },
        ProfileTerm::Power { coeff: -0.3, exponent: 1 },
    ]);
    for k in 0..3 {
        let a = induced_potential(&named, 1.min(k), k).unwrap();
        let b = induced_potential(&custom, 1.min(k), k).unwrap();
        for x in interior(0.0, PI, 200) {
            assert!(rel(a.total(x), b.total(x)) < 1e-13);
        }
    }
}

#[test]
fn curvature_form_differs_by_cotangent_term() {
    let p = DeformationProfile::linear(0.9);
    for k in 0..4 {
        for x in interior(0.0, PI, 50) {
            let c = master_formula_crosscheck(&p, k, k, x).unwrap();
            let expected = 2.0 * p.f_prime(x) * k as f64 / x.tan() - 1.0;
            assert!((c.discrepancy - expected).abs() < 1e-11 * c.master.abs().max(1.0));
        }
    }
}

#[test]
fn cot_factor_choice_shifts_poschl_teller_by_a_constant() {
    // (K+1) versus (ell+1) in front of 2 f' cot chi; for f = (a/2) ln cos this is
    // 2 (a/2)(-tan)(K - ell) cot = -a (K - ell)
    let p = DeformationProfile::log_cos(2.5);
    let (ell, k) = (1, 3);
    let a = induced_potential_with(&p, ell, k, CotFactor::KPlusOne).unwrap();
    let b = induced_potential_with(&p, ell, k, CotFactor::EllPlusOne).unwrap();
    for x in interior(0.0, PI / 2.0, 100) {
        assert!((a.total(x) - b.total(x) + 2.5 * (k - ell) as f64).abs() < 1e-10);
    }
}

#[test]
fn quadratic_ground_state_needs_factor_two() {
    // f = alpha chi^2 / 2 gives f' = alpha chi: the cot coefficient is 2 alpha (K+1) chi
    let closed = closed_form_potential(&ProfileFamily::Quadratic { alpha_k: 0.4 }, 2, 2).unwrap();
    let x = 1.1_f64;
    let expected = 6.0 / x.sin().powi(2) + 2.0 * 0.4 * 3.0 * x / x.tan() + 0.16 * x * x + 0.4;
    assert!((closed.total(x) - expected).abs() < 1e-12);
}

#[test]
fn invalid_quantum_numbers() {
    let p = DeformationProfile::linear(0.5);
    assert!(induced_potential(&p, 3, 2).is_err());
    assert!(closed_form_potential(&ProfileFamily::Linear { alpha_k: 0.5 }, 4, 1).is_err());
    assert!(ColorDipole::new(1.0, 0.0, 0.0, 0).is_ok());
    assert!(DeformationProfile::<f64>::from_name("hyperbolic", 0.0, 0.0, 0.0).is_err());
}

fn family_strategy() -> impl Strategy<Value = ProfileFamily<f64>> {
    prop_oneof![
        (-2.0f64..2.0).prop_map(|alpha_k| ProfileFamily::Linear { alpha_k }),
        (2.0f64..6.0).prop_map(|alpha| ProfileFamily::LogCos { alpha }),
        (-1.5f64..1.5).prop_map(|alpha| ProfileFamily::LogCscCot { alpha }),
        ((0.0f64..3.0), (-1.0f64..1.0)).prop_map(|(beta, alpha_k)| ProfileFamily::MicKepler { beta, alpha_k }),
        (-1.0f64..1.0).prop_map(|alpha_k| ProfileFamily::Quadratic { alpha_k }),
    ]
}

proptest! {
    #[test]
    fn ground_state_residual_vanishes(family in family_strategy(), k in 0usize..6) {
        let p = DeformationProfile::new(family);
        let (a, b) = p.natural_domain();
        let r = ground_state_residual(&p, k, &interior(a, b, 200)).unwrap();
        prop_assert!(r < 1e-9, "residual {r}");
    }

    #[test]
    fn closed_forms_equal_master_formula(family in family_strategy(), k in 0usize..6, ell_pick in 0usize..6) {
        let ell = ell_pick.min(k);
        let p = DeformationProfile::new(family.clone());
        let (a, b) = p.natural_domain();
        let induced = induced_potential_with(&p, ell, k, closed_form_cot_factor(&family)).unwrap();
        let closed = closed_form_potential(&family, ell, k).unwrap();
        let shift = closed_form_alignment(&family, ell, k);
        for x in interior(a, b, 100) {
            prop_assert!(rel(induced.total(x), closed.total(x) + shift) < 1e-12);
        }
    }

    #[test]
    fn dipole_identity(alpha_s_nc in 0.01f64..6.0, k in 0usize..6, ell_pick in 0usize..6) {
        let ell = ell_pick.min(k);
        let (dipole, alpha_k) = ColorDipole::matched_to_linear(alpha_s_nc, ell, k).unwrap();
        let induced = induced_potential(&DeformationProfile::linear(alpha_k), ell, k).unwrap();
        let d = dipole.potential();
        for x in interior(0.0, PI, 100) {
            prop_assert!(rel(d.total(x), induced.total(x)) < 1e-14);
        }
    }

    #[test]
    fn dipole_from_two_charges(alpha_s_nc in 0.01f64..6.0, x in 0.01f64..3.13) {
        let d = ColorDipole::new(alpha_s_nc, 0.3, -0.2, 0).unwrap();
        let expected = -alpha_s_nc / x.tan() - 0.5;
        prop_assert!((d.v_ced(x) - expected).abs() < 1e-12 * expected.abs().max(1.0));
        prop_assert_eq!(d.v_ced(x), -d.v_ced_swapped(x));
    }
}
