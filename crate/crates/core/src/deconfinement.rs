//! Large-radius physics: the compactified running coupling, the linear
//! temperature-radius relation, the Coulomb collapse of the dipole
//! potential and the hydrogen-like limit spectrum.

use serde::Serialize;

use crate::deformation::{dipole_potential, ColorDipole};
use crate::eigensolver::{richardson, solve, SpectralProblem};
use crate::error::{Error, Result};
use crate::num::{cot, int, lit, Real};
use crate::spectroscopy::hbar_c;

/// Constant of the plotted infrared curve `1.4 / ln(x + 1/x)`.
pub const WALKING_PREFACTOR: f64 = 1.4;
/// Sample count and x-range of the plotted curve.
pub const WALKING_SAMPLES: usize = 150;
pub const WALKING_X_MIN: f64 = 1e-6;
pub const WALKING_X_MAX: f64 = 10.0;

/// One-loop `beta_0 = 11 - 2 n_f / 3`.
pub fn beta0<T: Real>(n_f: u32) -> T {
    lit::<T>(11.0) - lit::<T>(2.0) * T::from_u32(n_f).unwrap() / lit(3.0)
}

/// `x = hbar^2 c^2 / (R^2 Lambda^2)`.
pub fn x_from_radius<T: Real>(radius_fm: T, lambda_mev: T) -> T {
    (hbar_c::<T>() / (radius_fm * lambda_mev)).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingParams<T> {
    pub beta0: T,
    /// `Q^2 c^2` in MeV^2.
    pub q2: T,
    pub lambda_qcd_mev: T,
    /// `hbar^2 c^2 / (R^2 Lambda^2)`.
    pub x: T,
    pub rho: T,
}

impl<T: Real> CouplingParams<T> {
    pub fn new(n_f: u32, q2: T, lambda_qcd_mev: T, x: T, rho: T) -> Result<Self> {
        if n_f > 16 {
            return Err(Error::InvalidParameter(format!(
                "n_f = {n_f} leaves beta_0 non-positive"
            )));
        }
        if !(rho >= T::zero() && rho <= T::one()) {
            return Err(Error::InvalidParameter(format!("rho must lie in [0, 1], got {rho}")));
        }
        if !(x > T::zero()) {
            return Err(Error::InvalidParameter(format!("x must be positive, got {x}")));
        }
        if !(lambda_qcd_mev > T::zero()) || !(q2 >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "need Lambda > 0 and Q^2 >= 0, got {lambda_qcd_mev} and {q2}"
            )));
        }
        Ok(Self {
            beta0: beta0(n_f),
            q2,
            lambda_qcd_mev,
            x,
            rho,
        })
    }

    pub fn from_radius(n_f: u32, q2: T, lambda_qcd_mev: T, radius_fm: T, rho: T) -> Result<Self> {
        Self::new(n_f, q2, lambda_qcd_mev, x_from_radius(radius_fm, lambda_qcd_mev), rho)
    }

    fn q2_ratio(&self) -> T {
        self.q2 / (self.lambda_qcd_mev * self.lambda_qcd_mev)
    }

    /// `Q^2/Lambda^2 + sqrt(1 - rho^2) x + rho / x`.
    pub fn log_argument(&self) -> T {
        self.q2_ratio() + (T::one() - self.rho * self.rho).sqrt() * self.x + self.rho / self.x
    }
}

/// A coupling value, or the marker that the logarithm left the perturbative range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Coupling<T> {
    Perturbative { alpha_s: T },
    /// The log argument is `<= 1`, so the one-loop formula is negative or divergent.
    NonPerturbative { log_argument: T },
}

impl<T: Real> Coupling<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            Coupling::Perturbative { alpha_s } => Some(alpha_s),
            Coupling::NonPerturbative { .. } => None,
        }
    }
}

fn one_loop<T: Real>(beta0: T, arg: T) -> Coupling<T> {
    if arg > T::one() && arg.is_finite() {
        Coupling::Perturbative {
            alpha_s: lit::<T>(4.0) * T::PI() / (beta0 * arg.ln()),
        }
    } else if arg.is_infinite() && arg > T::zero() {
        Coupling::Perturbative { alpha_s: T::zero() }
    } else {
        Coupling::NonPerturbative { log_argument: arg }
    }
}

/// `alpha_s = 4 pi / (beta_0 ln(Q^2/Lambda^2 + sqrt(1-rho^2) x + rho/x))`.
pub fn alpha_s_compactified<T: Real>(p: &CouplingParams<T>) -> Coupling<T> {
    one_loop(p.beta0, p.log_argument())
}

/// Radius-only form `4 pi / (beta_0 ln(Q^2/Lambda^2 + x))`, i.e. `rho = 0`.
pub fn alpha_s_radius_only<T: Real>(p: &CouplingParams<T>) -> Coupling<T> {
    one_loop(p.beta0, p.q2_ratio() + p.x)
}

/// The plotted curve `1.4 / ln(x + 1/x)`.
pub fn walking_curve<T: Real>(x: T) -> T {
    lit::<T>(WALKING_PREFACTOR) / (x + x.recip()).ln()
}

/// The compactified formula read literally at `Q^2 = 0`, `rho = 1/sqrt 2`,
/// `beta_0 = 9`: `4 pi / (9 ln((x + 1/x)/sqrt 2))`.
pub fn walking_literal<T: Real>(x: T) -> Coupling<T> {
    let r = T::FRAC_1_SQRT_2();
    one_loop(lit(9.0), r * x + r / x)
}

/// `(x, 1.4/ln(x + 1/x))` at `x_min + i (x_max - x_min) / samples`,
/// `i = 1..=samples`, i.e. uniformly on `(x_min, x_max]`.
pub fn walking_samples<T: Real>(samples: usize, x_min: T, x_max: T) -> Vec<(T, T)> {
    let step = (x_max - x_min) / int::<T>(samples.max(1));
    (1..=samples)
        .map(|i| {
            let x = x_min + step * int::<T>(i);
            (x, walking_curve(x))
        })
        .collect()
}

/// `T = Lambda^2 R / (N_c hbar c)`, MeV.
pub fn temperature_from_radius<T: Real>(radius_fm: T, lambda_mev: T, n_c: u32) -> T {
    lambda_mev * lambda_mev * radius_fm / (T::from_u32(n_c).unwrap() * hbar_c::<T>())
}

/// `R = N_c hbar c T / Lambda^2`, fm.
pub fn radius_from_temperature<T: Real>(temperature_mev: T, lambda_mev: T, n_c: u32) -> T {
    T::from_u32(n_c).unwrap() * hbar_c::<T>() * temperature_mev / (lambda_mev * lambda_mev)
}

/// `1 - x cot x`, with its Taylor series where the direct form cancels.
pub fn cot_deviation<T: Real>(x: T) -> T {
    if x.abs() < lit(1e-2) {
        let x2 = x * x;
        x2 * (T::one() / lit(3.0) + x2 * (T::one() / lit(45.0) + x2 * (lit::<T>(2.0) / lit(945.0) + x2 / lit(4725.0))))
    } else {
        T::one() - x * cot(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollapseRow<T> {
    pub r_fm: T,
    pub chi: T,
    /// `-(hbar c alpha_s N_c / R) cot(r/R)`, MeV.
    pub v_curved: T,
    /// `-hbar c alpha_s N_c / r`, MeV.
    pub v_flat: T,
    pub relative_deviation: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapseReport<T> {
    pub radius_fm: T,
    pub alpha_s_nc: T,
    pub rows: Vec<CollapseRow<T>>,
    pub max_relative_deviation: T,
    /// Leading series term `(r_max / R)^2 / 3`.
    pub series_bound: T,
    pub monotone: bool,
}

/// Curved against flat Coulomb potential on `points` uniform radii in
/// `(0, r_max_fraction R]`.
pub fn coulomb_collapse_report<T: Real>(
    radius_fm: T,
    alpha_s_nc: T,
    r_max_fraction: T,
    points: usize,
) -> Result<CollapseReport<T>> {
    if !(r_max_fraction > T::zero() && r_max_fraction < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "r_max_fraction must lie in (0, 1), got {r_max_fraction}"
        )));
    }
    if !(radius_fm > T::zero()) || points == 0 {
        return Err(Error::InvalidParameter("need R > 0 and at least one point".into()));
    }
    let g = hbar_c::<T>() * alpha_s_nc;
    let r_max = r_max_fraction * radius_fm;
    let rows: Vec<CollapseRow<T>> = (1..=points)
        .map(|i| {
            let r = r_max * int::<T>(i) / int::<T>(points);
            let chi = r / radius_fm;
            CollapseRow {
                r_fm: r,
                chi,
                v_curved: -g / radius_fm * cot(chi),
                v_flat: -g / r,
                relative_deviation: cot_deviation(chi),
            }
        })
        .collect();
    let max = rows.iter().fold(T::zero(), |m, r| m.max(r.relative_deviation));
    let monotone = rows.windows(2).all(|w| w[1].relative_deviation > w[0].relative_deviation);
    Ok(CollapseReport {
        radius_fm,
        alpha_s_nc,
        rows,
        max_relative_deviation: max,
        series_bound: r_max_fraction * r_max_fraction / lit(3.0),
        monotone,
    })
}

/// Relative deviations of `Gamma_N` from `alpha_s N_c (cot chi - 1/pi)` and of
/// `Gamma_S` from `-alpha_s N_c / pi` at small `chi` (with zero constants).
pub fn gamma_small_angle_deviation<T: Real>(alpha_s_nc: T, chi: T) -> Result<(T, T)> {
    let d = ColorDipole::new(alpha_s_nc, T::zero(), T::zero(), 0)?;
    let inv_pi = T::FRAC_1_PI();
    let n_lim = alpha_s_nc * (cot(chi) - inv_pi);
    let s_lim = -alpha_s_nc * inv_pi;
    Ok((
        ((d.gamma_n(chi) - n_lim) / n_lim).abs(),
        ((d.gamma_s(chi) - s_lim) / s_lim).abs(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RydbergLevel<T> {
    pub k: usize,
    /// `-Ry^s / (K+1)^2`.
    pub bound: T,
    /// `Ry^s (a_0*)^2 k^2`.
    pub scattering: T,
    pub total: T,
}

/// `E_K = Ry^s (-1/(K+1)^2 + (a_0*)^2 k^2)`; the ionization threshold is `Ry^s`.
pub fn rydberg_limit_spectrum<T: Real>(ks: &[usize], ry_mev: T, a0_fm: T, k_inv_fm: T) -> Vec<RydbergLevel<T>> {
    let scattering = ry_mev * (a0_fm * k_inv_fm).powi(2);
    ks.iter()
        .map(|&k| {
            let bound = -ry_mev / int::<T>((k + 1) * (k + 1));
            RydbergLevel {
                k,
                bound,
                scattering,
                total: bound + scattering,
            }
        })
        .collect()
}

/// Inputs shared by every radius of [`curved_vs_flat_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvedTemplate<T> {
    pub alpha_s_nc: T,
    pub mu_q_c2_mev: T,
    pub ell: usize,
    pub levels: usize,
    /// Finer of the two grids used for Richardson extrapolation.
    pub grid_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvedRow<T> {
    pub radius_fm: T,
    pub k: usize,
    /// Extrapolated solver energy, MeV.
    pub energy_curved: T,
    /// `-Ry^s / (K+1)^2`, MeV.
    pub energy_flat: T,
    pub gap: T,
    /// `Ry^s (a_0*/R)^2 (K+1)^2`, MeV.
    pub gap_formula: T,
    pub gap_relative_error: T,
}

/// Solves the dimensional cotangent problem at each radius and compares it
/// with the flat Coulomb levels.
///
/// In units of `hbar^2 c^2 / (2 mu R^2)` the problem is the dipole operator
/// with coupling `2 R / a_0*`; the energies come from Richardson
/// extrapolation over `N/2` and `N` interior points.
pub fn curved_vs_flat_spectrum<T: Real>(radii_fm: &[T], template: &CurvedTemplate<T>) -> Result<Vec<CurvedRow<T>>> {
    if radii_fm.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("radius sequence must increase".into()));
    }
    let mu = template.mu_q_c2_mev;
    if !(mu > T::zero()) || !(template.alpha_s_nc > T::zero()) {
        return Err(Error::InvalidParameter("need mu_q c^2 > 0 and alpha_s N_c > 0".into()));
    }
    let a0 = hbar_c::<T>() / (mu * template.alpha_s_nc);
    let ry = mu * template.alpha_s_nc.powi(2) * lit(0.5);
    let mut out = Vec::new();
    for &radius in radii_fm {
        let scale = hbar_c::<T>().powi(2) / (lit::<T>(2.0) * mu * radius * radius);
        let v = dipole_potential(lit::<T>(2.0) * radius / a0, T::zero(), T::zero(), template.ell)?;
        let fine = SpectralProblem::new(v, template.grid_points);
        let coarse = fine.with_grid_points(template.grid_points / 2);
        let ef = solve(&fine, template.levels)?;
        let ec = solve(&coarse, template.levels)?;
        let (hf, hc) = (fine.grid().1, coarse.grid().1);
        for n in 0..template.levels {
            let k = n + template.ell;
            let m2 = int::<T>((k + 1) * (k + 1));
            let eps = richardson(ec.eigenvalues[n], hc, ef.eigenvalues[n], hf);
            let energy = scale * eps;
            let flat = -ry / m2;
            let gap_formula = ry * (a0 / radius).powi(2) * m2;
            let gap = energy - flat;
            out.push(CurvedRow {
                radius_fm: radius,
                k,
                energy_curved: energy,
                energy_flat: flat,
                gap,
                gap_formula,
                gap_relative_error: ((gap - gap_formula) / gap_formula).abs(),
            });
        }
    }
    Ok(out)
}
