use confpot::spectroscopy::{
    energy_mev, energy_rydberg_form, energy_squared, fit_levels, fit_levels_with, synthetic_levels, FitMode,
    LevelDataset, PhysicalParams, SyntheticNoise, F0_FIT_A_GEV2, F0_FIT_B_GEV2, F0_FIT_C_GEV2, MEV2_PER_GEV2,
};
use proptest::prelude::*;
use std::io::Write;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn exact_round_trip_in_both_modes() {
    let ks: Vec<usize> = (0..=5).collect();
    let data = synthetic_levels(F0_FIT_A_GEV2, F0_FIT_B_GEV2, F0_FIT_C_GEV2, &ks, None).unwrap();
    for mode in [FitMode::Staged, FitMode::Joint] {
        let fit = fit_levels_with(&data, mode).unwrap();
        assert!(rel(fit.a, F0_FIT_A_GEV2) < 1e-10);
        assert!(rel(fit.b, F0_FIT_B_GEV2) < 1e-10);
        assert!(rel(fit.c, F0_FIT_C_GEV2) < 1e-10);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-12));
    }
}

#[test]
fn noisy_round_trip_over_many_seeds() {
    let ks: Vec<usize> = (0..=5).collect();
    for seed in 0..20 {
        let noise = SyntheticNoise { seed, fraction: 0.01 };
        let data = synthetic_levels(F0_FIT_A_GEV2, F0_FIT_B_GEV2, F0_FIT_C_GEV2, &ks, Some(noise)).unwrap();
        let fit = fit_levels(&data).unwrap();
        assert!(rel(fit.a, F0_FIT_A_GEV2) < 0.05, "seed {seed}: A = {}", fit.a);
    }
}

#[test]
fn seeded_noise_is_reproducible() {
    let ks = [0, 1, 2, 3];
    let noise = Some(SyntheticNoise { seed: 42, fraction: 0.01 });
    let a = synthetic_levels(1.0, 0.5, 0.2, &ks, noise).unwrap();
    let b = synthetic_levels(1.0, 0.5, 0.2, &ks, noise).unwrap();
    assert_eq!(a.rows, b.rows);
}

#[test]
fn csv_file_with_shared_levels_and_sigmas() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# f0 levels").unwrap();
    writeln!(f, "label,mass_mev,K,sigma_mev").unwrap();
    let (a, b, c) = (0.2, 0.9, 1.1);
    for (label, k) in [("a", 0), ("b", 1), ("b'", 1), ("c", 2), ("d", 3)] {
        let m2 = a * ((k + 1) * (k + 1)) as f64 - b / ((k + 1) * (k + 1)) as f64 + c;
        writeln!(f, "{label}, {:.12}, {k}, 10", (m2 * MEV2_PER_GEV2).sqrt()).unwrap();
    }
    let data = LevelDataset::<f64>::load(f.path()).unwrap();
    assert_eq!(data.rows.len(), 5);
    assert_eq!(data.distinct_k(), vec![0, 1, 2, 3]);
    let fit = fit_levels(&data).unwrap();
    assert!(fit.weighted);
    assert!(rel(fit.a, a) < 1e-8 && rel(fit.b, b) < 1e-8 && rel(fit.c, c) < 1e-8);
    let groups = fit.predictions_by_k(&data);
    assert_eq!(groups.iter().find(|g| g.k == 1).unwrap().members.len(), 2);
}

#[test]
fn rejects_too_few_levels_and_bad_rows() {
    let data = synthetic_levels(1.0, 0.5, 0.2, &[0, 1, 1], None).unwrap();
    assert!(fit_levels(&data).is_err());
    assert!(LevelDataset::<f64>::from_reader("label,mass_mev,K\nx,900,-1\n".as_bytes()).is_err());
    assert!(LevelDataset::<f64>::from_reader("label,mass_mev,K\nx,abc,1\n".as_bytes()).is_err());
}

proptest! {
    #[test]
    fn fit_is_scale_equivariant(
        a in 0.05f64..0.5, b in 0.1f64..2.0, extra in 0.2f64..3.0, s in 0.2f64..5.0, seed in 0u64..1000,
    ) {
        // c > b keeps every M^2 positive
        let c = b + extra;
        let ks: Vec<usize> = (0..=5).collect();
        let data = synthetic_levels(a, b, c, &ks, Some(SyntheticNoise { seed, fraction: 0.005 })).unwrap();
        let base = fit_levels(&data).unwrap();
        let scaled = fit_levels(&data.scale_mass_squared(s)).unwrap();
        prop_assert!(rel(scaled.a, s * base.a) < 1e-8);
        prop_assert!(rel(scaled.b, s * base.b) < 1e-8);
        prop_assert!(rel(scaled.c, s * base.c) < 1e-8);
    }

    #[test]
    fn staged_equals_joint(a in 0.05f64..0.5, b in 0.1f64..2.0, extra in 0.2f64..3.0, seed in 0u64..1000) {
        let c = b + extra;
        let ks = [0, 1, 2, 3, 4];
        let data = synthetic_levels(a, b, c, &ks, Some(SyntheticNoise { seed, fraction: 0.01 })).unwrap();
        let s = fit_levels_with(&data, FitMode::Staged).unwrap();
        let j = fit_levels_with(&data, FitMode::Joint).unwrap();
        prop_assert!((s.a - j.a).abs() < 1e-9 && (s.b - j.b).abs() < 1e-9 && (s.c - j.c).abs() < 1e-9);
    }

    #[test]
    fn energy_forms_agree(r in 0.2f64..20.0, lambda in 100.0f64..400.0, alpha_s in 0.0f64..2.0, k in 0usize..8) {
        let p = PhysicalParams::new(r, lambda, alpha_s, 3, 3).unwrap();
        let e = energy_mev(k, &p);
        let from_sq = energy_squared(k, &p) * MEV2_PER_GEV2 / p.lambda_qcd_mev;
        prop_assert!((e - from_sq).abs() < 1e-10 * e.abs().max(1.0));
        prop_assert!((e - energy_rydberg_form(k, &p)).abs() < 1e-10 * e.abs().max(1.0));
    }
}
