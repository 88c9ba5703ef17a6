//! Every published number the library reproduces, recomputed and compared.

use serde::Serialize;

use crate::deconfinement::{
    coulomb_collapse_report, walking_curve, walking_samples, radius_from_temperature, temperature_from_radius,
    WALKING_SAMPLES, WALKING_X_MAX, WALKING_X_MIN,
};
use crate::deformation::dipole_potential;
use crate::eigensolver::{reference_spectrum, solve, SpectralProblem, DEFAULT_GRID_POINTS};
use crate::error::Result;
use crate::spectroscopy::{
    cot_magnitude, fit_levels, level_formula, synthetic_levels, F0_FIT_A_GEV2, F0_FIT_B_GEV2, F0_FIT_C_GEV2,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproductionRow {
    pub quantity: String,
    pub unit: String,
    pub published: f64,
    pub computed: f64,
    /// Largest accepted `|computed - published|`, or the bound on the
    /// reported error for rows whose `published` value is zero.
    pub tolerance: f64,
    pub pass: bool,
}

impl ReproductionRow {
    fn compare(quantity: &str, unit: &str, published: f64, computed: f64, tolerance: f64) -> Self {
        Self {
            quantity: quantity.into(),
            unit: unit.into(),
            published,
            computed,
            tolerance,
            pass: (computed - published).abs() <= tolerance,
        }
    }

    /// `computed` is itself an error measure that must stay below `tolerance`.
    fn error(quantity: &str, computed: f64, tolerance: f64) -> Self {
        Self {
            quantity: quantity.into(),
            unit: "relative error".into(),
            published: 0.0,
            computed,
            tolerance,
            pass: computed < tolerance,
        }
    }
}

/// The full reproduction table.
pub fn reproduce() -> Result<Vec<ReproductionRow>> {
    let mut rows = Vec::new();

    rows.push(ReproductionRow::compare(
        "T_b-st at R = 0.58 fm, Lambda = 200 MeV, N_c = 3",
        "MeV",
        39.19,
        temperature_from_radius(0.58, 200.0, 3),
        0.01,
    ));
    rows.push(ReproductionRow::compare(
        "R at T = 7 GeV, Lambda = 200 MeV, N_c = 3",
        "fm",
        105.0,
        radius_from_temperature(7000.0, 200.0, 3),
        5.0,
    ));
    rows.push(ReproductionRow::compare("alpha_s(x=1)", "", 2.0197, walking_curve(1.0), 1e-4));

    let samples = walking_samples(WALKING_SAMPLES, WALKING_X_MIN, WALKING_X_MAX);
    let fig2 = samples
        .iter()
        .map(|&(x, y)| ((y - 1.4 / (x + 1.0 / x).ln()) / y).abs())
        .fold(0.0, f64::max);
    rows.push(ReproductionRow::error("walking coupling 1.4/ln(x + 1/x), 150 samples", fig2, 1e-12));

    let ks: Vec<usize> = (0..=5).collect();
    let data = synthetic_levels(F0_FIT_A_GEV2, F0_FIT_B_GEV2, F0_FIT_C_GEV2, &ks, None)?;
    let fit = fit_levels(&data)?;
    let round_trip = [
        (fit.a, F0_FIT_A_GEV2),
        (fit.b, F0_FIT_B_GEV2),
        (fit.c, F0_FIT_C_GEV2),
    ]
    .iter()
    .map(|&(got, want)| ((got - want) / want).abs())
    .fold(0.0, f64::max);
    rows.push(ReproductionRow::error("fit A, B, C round-trip", round_trip, 1e-10));
    rows.push(ReproductionRow::compare(
        "M_0^2 = A - B + C",
        "GeV^2",
        0.25354,
        level_formula(0, F0_FIT_A_GEV2, F0_FIT_B_GEV2) + F0_FIT_C_GEV2,
        1e-5,
    ));
    rows.push(ReproductionRow::compare(
        "2G/R at G = 204.08 MeV fm, R = 2.31 fm",
        "MeV",
        176.69,
        cot_magnitude(204.08, 2.31),
        0.01,
    ));

    let collapse = coulomb_collapse_report(1.0, 1.0, 0.1, 1000)?;
    rows.push(ReproductionRow {
        quantity: "Coulomb collapse: max deviation of cot from 1/r on r <= 0.1 R".into(),
        unit: "fraction".into(),
        published: 0.0034,
        computed: collapse.max_relative_deviation,
        tolerance: 0.0034,
        pass: collapse.max_relative_deviation < 0.0034 && collapse.monotone,
    });

    let dipole = dipole_potential(2.0_f64, 0.0, 0.0, 0)?;
    let reference = reference_spectrum(&dipole).expect("dipole has an analytic spectrum");
    let solved = solve(&SpectralProblem::new(dipole, DEFAULT_GRID_POINTS), 5)?;
    let trm = reference
        .levels(5)
        .iter()
        .zip(&solved.eigenvalues)
        .map(|(&t, &e)| (e - t).abs() / t.abs().max(1.0))
        .fold(0.0, f64::max);
    rows.push(ReproductionRow::error(
        "tRM spectrum (K+1)^2 - 1/(K+1)^2 vs solver, alpha_s N_c = 2",
        trm,
        1e-3,
    ));

    Ok(rows)
}
