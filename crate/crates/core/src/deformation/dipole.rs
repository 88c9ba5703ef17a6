use serde::Serialize;

use super::potential::{PotentialKind, PotentialModel};
use crate::error::{Error, Result};
use crate::num::{cot, csc, int, Real};

/// Color-electric charge dipole on the 3-sphere: opposite charges at the
/// north and south poles, coupling strength `alpha_s N_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColorDipole<T> {
    pub alpha_s_nc: T,
    pub lambda_n: T,
    pub lambda_s: T,
    pub ell: usize,
}

impl<T: Real> ColorDipole<T> {
    pub fn new(alpha_s_nc: T, lambda_n: T, lambda_s: T, ell: usize) -> Result<Self> {
        if !(alpha_s_nc >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "alpha_s N_c must be non-negative, got {alpha_s_nc}"
            )));
        }
        Ok(Self { alpha_s_nc, lambda_n, lambda_s, ell })
    }

    /// `lambda = lambda_S - lambda_N`.
    pub fn lambda(&self) -> T {
        self.lambda_s - self.lambda_n
    }

    /// Potential of the charge at the north pole:
    /// `(alpha_s N_c / pi) (pi - chi) cot chi + lambda_N`.
    pub fn gamma_n(&self, chi: T) -> T {
        self.alpha_s_nc / T::PI() * (T::PI() - chi) * cot(chi) + self.lambda_n
    }

    /// `-(alpha_s N_c / pi) chi cot chi + lambda_S`.
    pub fn gamma_s(&self, chi: T) -> T {
        -self.alpha_s_nc / T::PI() * chi * cot(chi) + self.lambda_s
    }

    /// `Gamma_S - Gamma_N = -alpha_s N_c cot chi + lambda`.
    pub fn v_ced(&self, chi: T) -> T {
        self.gamma_s(chi) - self.gamma_n(chi)
    }

    /// Charges interchanged: `Gamma_N - Gamma_S`.
    pub fn v_ced_swapped(&self, chi: T) -> T {
        self.gamma_n(chi) - self.gamma_s(chi)
    }

    /// `V_F = ell(ell+1)/sin^2 chi - alpha_s N_c cot chi + lambda`, with
    /// `lambda` carried as the additive offset.
    pub fn potential(&self) -> PotentialModel<T> {
        let centr = int::<T>(self.ell * (self.ell + 1));
        let a = self.alpha_s_nc;
        PotentialModel::from_fn(PotentialKind::Dipole, "dipole", self.ell, self.ell, move |x: T| {
            centr * csc(x).powi(2) - a * cot(x)
        })
        .with_params(vec![
            ("alpha_s_nc", self.alpha_s_nc),
            ("lambda_n", self.lambda_n),
            ("lambda_s", self.lambda_s),
        ])
        .with_offset(self.lambda())
    }

    /// Dipole matched to the linear deformation at level `K`:
    /// `alpha_k (K+1) = -alpha_s N_c`, `lambda = alpha_k^2 / 4`.
    /// Returns the dipole together with `alpha_k`.
    pub fn matched_to_linear(alpha_s_nc: T, ell: usize, k: usize) -> Result<(Self, T)> {
        let alpha_k = -alpha_s_nc / int::<T>(k + 1);
        let lambda = alpha_k * alpha_k / T::from_f64(4.0).unwrap();
        Ok((Self::new(alpha_s_nc, T::zero(), lambda, ell)?, alpha_k))
    }
}

/// Convenience constructor mirroring the operation signature.
pub fn dipole_potential<T: Real>(alpha_s_nc: T, lambda_n: T, lambda_s: T, ell: usize) -> Result<PotentialModel<T>> {
    Ok(ColorDipole::new(alpha_s_nc, lambda_n, lambda_s, ell)?.potential())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ced_is_difference_of_gammas() {
        let d = ColorDipole::new(3.0, 0.4, -1.1, 2).unwrap();
        for i in 1..50 {
            let x = PI * i as f64 / 50.0;
            let expect = -3.0 / x.tan() + d.lambda();
            assert!((d.v_ced(x) - expect).abs() < 1e-12 * (1.0 + expect.abs()));
        }
    }

    #[test]
    fn zero_coupling_is_centrifugal_plus_constant() {
        let v = dipole_potential(0.0_f64, 0.0, 0.75, 1).unwrap();
        for &x in &[0.2, 1.0, 2.9] {
            assert!((v.total(x) - (2.0 / x.sin().powi(2) + 0.75)).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_coupling_rejected() {
        assert!(ColorDipole::new(-1.0, 0.0, 0.0, 0).is_err());
    }

    #[test]
    fn swapping_charges_reflects_chi() {
        let d = ColorDipole::new(2.5, 0.0, 0.0, 0).unwrap();
        for i in 1..40 {
            let x = PI * i as f64 / 40.0;
            assert!((d.v_ced_swapped(x) - d.v_ced(PI - x)).abs() < 1e-12 * (1.0 + d.v_ced(x).abs()));
        }
    }
}
