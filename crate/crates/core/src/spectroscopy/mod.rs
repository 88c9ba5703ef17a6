//! Dimensional tRM energies (MeV, GeV^2), the strong Rydberg constant and
//! least-squares fits of meson levels.
//!
//! Units: energies in MeV, squared energies in GeV^2, lengths in fm.

mod fit;

use serde::{Deserialize, Serialize};

pub use fit::{
    fit_levels, fit_levels_with, synthetic_levels, FitMode, FitResult, LevelDataset, LevelRow, PredictionGroup,
    SyntheticNoise,
};

use crate::error::{Error, Result};
use crate::num::{int, lit, Real};

/// `hbar c` in MeV fm.
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;
/// MeV^2 per GeV^2.
pub const MEV2_PER_GEV2: f64 = 1.0e6;

/// Fitted constants of the f0 meson levels, in GeV^2:
/// `(hbar c / R)^2`, `alpha_s^2 N_c^2 Lambda^2 / 4` and the offset `C`.
pub const F0_FIT_A_GEV2: f64 = 0.10964;
pub const F0_FIT_B_GEV2: f64 = 1.0434;
pub const F0_FIT_C_GEV2: f64 = 1.1873;

pub fn hbar_c<T: Real>() -> T {
    lit(HBAR_C_MEV_FM)
}

fn mev2_to_gev2<T: Real>(x: T) -> T {
    x / lit::<T>(MEV2_PER_GEV2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams<T> {
    pub radius_fm: T,
    pub lambda_qcd_mev: T,
    pub alpha_s: T,
    pub n_c: u32,
    pub n_f: u32,
    /// `mu_q c^2` in MeV.
    pub mu_q_c2_mev: T,
    /// `true` when `mu_q c^2 = Lambda / 2`, `false` for a free parameter.
    pub mu_derived: bool,
}

impl<T: Real> PhysicalParams<T> {
    /// Parameters with `mu_q c^2 = Lambda / 2`.
    pub fn new(radius_fm: T, lambda_qcd_mev: T, alpha_s: T, n_c: u32, n_f: u32) -> Result<Self> {
        if !(radius_fm > T::zero()) {
            return Err(Error::InvalidParameter(format!("radius must be positive, got {radius_fm}")));
        }
        if !(lambda_qcd_mev > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "Lambda_QCD must be positive, got {lambda_qcd_mev}"
            )));
        }
        if n_c == 0 {
            return Err(Error::InvalidParameter("N_c must be at least 1".into()));
        }
        if !(alpha_s >= T::zero()) {
            return Err(Error::InvalidParameter(format!("alpha_s must be non-negative, got {alpha_s}")));
        }
        Ok(Self {
            radius_fm,
            lambda_qcd_mev,
            alpha_s,
            n_c,
            n_f,
            mu_q_c2_mev: lambda_qcd_mev * lit(0.5),
            mu_derived: true,
        })
    }

    /// Replaces the derived `mu_q c^2` by a free value.
    pub fn with_mu(mut self, mu_q_c2_mev: T) -> Result<Self> {
        if !(mu_q_c2_mev > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "mu_q c^2 must be positive, got {mu_q_c2_mev}"
            )));
        }
        self.mu_q_c2_mev = mu_q_c2_mev;
        self.mu_derived = false;
        Ok(self)
    }

    pub fn alpha_s_nc(&self) -> T {
        self.alpha_s * T::from_u32(self.n_c).unwrap()
    }

    /// `(hbar c / R)^2` in GeV^2.
    pub fn rotor_coefficient_gev2(&self) -> T {
        mev2_to_gev2((hbar_c::<T>() / self.radius_fm).powi(2))
    }

    /// `alpha_s^2 N_c^2 Lambda^2 / 4` in GeV^2.
    pub fn binding_coefficient_gev2(&self) -> T {
        mev2_to_gev2((self.alpha_s_nc() * self.lambda_qcd_mev).powi(2) * lit(0.25))
    }
}

/// `A (K+1)^2 - B / (K+1)^2`.
pub fn level_formula<T: Real>(k: usize, a: T, b: T) -> T {
    let m2 = int::<T>((k + 1) * (k + 1));
    a * m2 - b / m2
}

/// `E^2_K = (hbar c / R)^2 (K+1)^2 - alpha_s^2 N_c^2 Lambda^2 / (4 (K+1)^2)`, GeV^2.
pub fn energy_squared<T: Real>(k: usize, p: &PhysicalParams<T>) -> T {
    level_formula(k, p.rotor_coefficient_gev2(), p.binding_coefficient_gev2())
}

/// `E_K = hbar^2 c^2 (K+1)^2 / (2 mu R^2) - mu alpha_s^2 N_c^2 / (2 (K+1)^2)`, MeV.
pub fn energy_mev<T: Real>(k: usize, p: &PhysicalParams<T>) -> T {
    let m2 = int::<T>((k + 1) * (k + 1));
    let mu = p.mu_q_c2_mev;
    let two = lit::<T>(2.0);
    (hbar_c::<T>() / p.radius_fm).powi(2) * m2 / (two * mu) - mu * p.alpha_s_nc().powi(2) / (two * m2)
}

/// `Ry^s = mu_q c^2 alpha_s^2 N_c^2 / 2`, MeV.
pub fn strong_rydberg<T: Real>(p: &PhysicalParams<T>) -> T {
    p.mu_q_c2_mev * p.alpha_s_nc().powi(2) * lit(0.5)
}

/// `hbar c / (mu_q c^2)`, fm.
pub fn reduced_compton_wavelength<T: Real>(p: &PhysicalParams<T>) -> T {
    hbar_c::<T>() / p.mu_q_c2_mev
}

/// `(a_0^q)* = hbar c / (mu_q c^2 alpha_s N_c)`, fm.
pub fn bohr_radius<T: Real>(p: &PhysicalParams<T>) -> T {
    reduced_compton_wavelength(p) / p.alpha_s_nc()
}

/// `Ry^s [ -1/(K+1)^2 + (a_0* / R)^2 (K+1)^2 ]`, MeV.
pub fn energy_rydberg_form<T: Real>(k: usize, p: &PhysicalParams<T>) -> T {
    let m2 = int::<T>((k + 1) * (k + 1));
    let ratio = bohr_radius(p) / p.radius_fm;
    strong_rydberg(p) * (-m2.recip() + ratio * ratio * m2)
}

/// Magnitude `2G/R` of the cotangent term when it is treated as a fit
/// parameter `G` (MeV fm) instead of `hbar c alpha_s N_c`.
pub fn cot_magnitude<T: Real>(g_mev_fm: T, radius_fm: T) -> T {
    lit::<T>(2.0) * g_mev_fm / radius_fm
}
