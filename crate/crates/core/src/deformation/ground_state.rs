use super::potential::induced_potential;
use super::profile::DeformationProfile;
use crate::error::Result;
use crate::num::{cot, csc, int, simpson, Real};

const NORM_PANELS: usize = 4000;

/// Analytic ground state `U_KK(chi) = e^f sin^(K+1) chi` of the Master-Formula
/// potential with `ell = K`, whose eigenvalue is `(K+1)^2`.
#[derive(Debug, Clone)]
pub struct GroundState<T> {
    pub k: usize,
    pub profile: DeformationProfile<T>,
    /// L2 norm over the profile's natural domain.
    pub norm: T,
}

impl<T: Real> GroundState<T> {
    /// Unnormalized `U_KK(chi)`; zero at the domain endpoints.
    pub fn eval(&self, chi: T) -> T {
        let (a, b) = self.profile.natural_domain();
        if chi <= a || chi >= b {
            return T::zero();
        }
        (self.profile.f(chi)).exp() * chi.sin().powi(self.k as i32 + 1)
    }

    /// `U / norm`.
    pub fn normalized(&self, chi: T) -> T {
        self.eval(chi) / self.norm
    }

    /// `U''/U = (f' + (K+1) cot)^2 + f'' - (K+1) csc^2`.
    pub fn curvature_ratio(&self, chi: T) -> T {
        let [_, d1, d2] = self.profile.derivs(chi);
        let m = int::<T>(self.k + 1);
        let g = d1 + m * cot(chi);
        g * g + d2 - m * csc(chi).powi(2)
    }

    pub fn second_derivative(&self, chi: T) -> T {
        self.eval(chi) * self.curvature_ratio(chi)
    }

    pub fn sample(&self, grid: &[T]) -> Vec<T> {
        grid.iter().map(|&x| self.eval(x)).collect()
    }
}

pub fn ground_state<T: Real>(profile: &DeformationProfile<T>, k: usize) -> GroundState<T> {
    let mut gs = GroundState {
        k,
        profile: profile.clone(),
        norm: T::one(),
    };
    let (a, b) = profile.natural_domain();
    let norm2 = simpson(|x| gs.eval(x).powi(2), a, b, NORM_PANELS);
    gs.norm = norm2.sqrt();
    gs
}

/// `max |-U'' + V U - (K+1)^2 U| / max |U|` over `grid`, with `U''` taken
/// analytically and `V` the Master-Formula potential at `ell = K`.
pub fn ground_state_residual<T: Real>(profile: &DeformationProfile<T>, k: usize, grid: &[T]) -> Result<T> {
    let v = induced_potential(profile, k, k)?;
    let gs = GroundState {
        k,
        profile: profile.clone(),
        norm: T::one(),
    };
    let e = int::<T>((k + 1) * (k + 1));
    let mut worst = T::zero();
    let mut peak = T::zero();
    for &x in grid {
        let u = gs.eval(x);
        let r = (-gs.second_derivative(x) + v.total(x) * u - e * u).abs();
        worst = worst.max(r);
        peak = peak.max(u.abs());
    }
    Ok(if peak > T::zero() { worst / peak } else { worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::linspace;
    use std::f64::consts::PI;

    #[test]
    fn free_ground_state_norm() {
        let gs = ground_state(&DeformationProfile::<f64>::free(), 0);
        assert!((gs.norm.powi(2) - PI / 2.0).abs() < 1e-12);
        assert!((gs.eval(0.7) - 0.7_f64.sin()).abs() < 1e-15);
        assert_eq!(gs.eval(0.0), 0.0);
        assert_eq!(gs.eval(PI), 0.0);
    }

    #[test]
    fn linear_ground_state_shape() {
        let gs = ground_state(&DeformationProfile::<f64>::linear(1.0), 0);
        for &x in &[0.3, 1.5, 2.8] {
            assert!((gs.eval(x) - (x / 2.0).exp() * x.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn quadratic_ground_state_shape() {
        let gs = ground_state(&DeformationProfile::<f64>::quadratic(0.5), 2);
        for &x in &[0.3, 1.5, 2.8] {
            assert!((gs.eval(x) - (x * x / 4.0).exp() * x.sin().powi(3)).abs() < 1e-13);
        }
    }

    #[test]
    fn residuals_vanish() {
        let grid = linspace(0.01, PI - 0.01, 400);
        assert!(ground_state_residual(&DeformationProfile::free(), 1, &grid).unwrap() < 1e-12);
        assert!(ground_state_residual(&DeformationProfile::linear(-0.5), 3, &grid).unwrap() < 1e-10);
        assert!(ground_state_residual(&DeformationProfile::quadratic(0.5), 2, &grid).unwrap() < 1e-10);
    }

    #[test]
    fn analytic_second_derivative_matches_finite_difference() {
        let gs = ground_state(&DeformationProfile::<f64>::mic_kepler(1.0, 0.3), 2);
        let h = 1e-4;
        for &x in &[0.4, 1.2, 2.2] {
            let fd = (gs.eval(x + h) - 2.0 * gs.eval(x) + gs.eval(x - h)) / (h * h);
            assert!((fd - gs.second_derivative(x)).abs() < 1e-5 * (1.0 + fd.abs()));
        }
    }
}
