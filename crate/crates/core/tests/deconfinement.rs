use confpot::deconfinement::{
    alpha_s_compactified, alpha_s_radius_only, beta0, cot_deviation, coulomb_collapse_report, curved_vs_flat_spectrum,
    radius_from_temperature, temperature_from_radius, walking_curve, walking_literal, walking_samples, Coupling,
    CouplingParams, CurvedTemplate,
};
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn walking_curve_samples() {
    let s = walking_samples(150, 1e-6_f64, 10.0);
    assert_eq!(s.len(), 150);
    assert!(s[0].0 > 1e-6 && (s[0].0 - (1e-6 + (10.0 - 1e-6) / 150.0)).abs() < 1e-15);
    assert_eq!(s[149].0, 10.0);
    for (x, y) in s {
        assert!((y - 1.4 / (x + 1.0 / x).ln()).abs() <= 1e-12 * y);
    }
    assert!((walking_curve(1.0) - 1.4 / 2f64.ln()).abs() < 1e-12);
}

#[test]
fn literal_formula_differs_from_plotted_curve() {
    // 4 pi / 9 = 1.396..., and ln((x + 1/x)/sqrt 2) has its own minimum
    let lit = walking_literal(1.0).value().unwrap();
    assert!((lit - 4.0 * PI / (9.0 * (2f64.sqrt()).ln())).abs() < 1e-12);
    assert!((lit - walking_curve(1.0)).abs() > 1.0);
    // (x + 1/x)/sqrt 2 >= sqrt 2, so the literal reading never leaves the perturbative range
    for x in [1e-3, 0.5, 0.75, 2.0, 50.0] {
        let v = walking_literal(x).value().unwrap();
        assert!(v > 0.0 && v < lit);
    }
    let ir = CouplingParams::new(3, 0.0, 200.0, 1.0, 0.0).unwrap();
    assert!(matches!(alpha_s_compactified(&ir), Coupling::NonPerturbative { .. }));
}

#[test]
fn radius_only_limit() {
    let p = CouplingParams::new(3, 0.0_f64, 200.0, 4.0, 0.0).unwrap();
    let a = alpha_s_compactified(&p).value().unwrap();
    let b = alpha_s_radius_only(&p).value().unwrap();
    assert!((a - b).abs() < 1e-15);
    assert!((a - 4.0 * PI / (9.0 * 4f64.ln())).abs() < 1e-14);
    assert_eq!(beta0::<f64>(3), 9.0);
}

#[test]
fn coulomb_collapse_bound() {
    let report = coulomb_collapse_report(2.0_f64, 1.5, 0.1, 500).unwrap();
    assert!(report.monotone);
    assert!(report.max_relative_deviation < 0.0034);
    // series oracle: x^2/3 + x^4/45 bounds 1 - x cot x from below and above
    for row in &report.rows {
        let x = row.chi;
        assert!(row.relative_deviation >= x * x / 3.0);
        assert!(row.relative_deviation <= x * x / 3.0 + x.powi(4) / 45.0 * 1.01);
    }
}

#[test]
fn curved_gap_shrinks_like_inverse_square_radius() {
    let t = CurvedTemplate { alpha_s_nc: 1.5, mu_q_c2_mev: 100.0, ell: 0, levels: 2, grid_points: 1600 };
    let rows = curved_vs_flat_spectrum(&[2.0, 4.0, 8.0], &t).unwrap();
    for r in &rows {
        assert!(r.gap_relative_error < 1e-4, "{r:?}");
    }
    let g: Vec<f64> = rows.iter().filter(|r| r.k == 0).map(|r| r.gap).collect();
    assert!((g[0] / g[1] - 4.0).abs() < 1e-3 && (g[1] / g[2] - 4.0).abs() < 1e-3);
}

proptest! {
    #[test]
    fn temperature_radius_inverse(r in 0.01f64..500.0, lambda in 50.0f64..500.0, n_c in 2u32..6) {
        let t = temperature_from_radius(r, lambda, n_c);
        prop_assert!((radius_from_temperature(t, lambda, n_c) - r).abs() < 1e-12 * r);
    }

    #[test]
    fn cot_deviation_continuous_and_positive(x in 1e-6f64..1.5) {
        let d = cot_deviation(x);
        prop_assert!(d > 0.0);
        let series = x * x / 3.0 + x.powi(4) / 45.0;
        if x < 0.05 {
            prop_assert!((d - series).abs() <= 1e-6 * series);
        }
    }

    #[test]
    fn coupling_decreases_with_momentum(q2a in 1e5f64..1e7, factor in 1.01f64..100.0, x in 0.01f64..10.0, rho in 0.0f64..1.0) {
        let a = CouplingParams::new(3, q2a, 200.0, x, rho).unwrap();
        let b = CouplingParams::new(3, q2a * factor, 200.0, x, rho).unwrap();
        let (va, vb) = (alpha_s_compactified(&a).value().unwrap(), alpha_s_compactified(&b).value().unwrap());
        prop_assert!(vb < va);
    }
}
