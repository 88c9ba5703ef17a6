//! Gegenbauer and Romanovski polynomials, and the quasi-radial functions
//! `S_{K,l}(chi) = sin^l(chi) G_{K-l}^{l+1}(cos chi)` of the 3-sphere.

use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};
use crate::num::{cot, int, lit, Real};
use crate::polynomial::Polynomial;

/// Degree, parameter and argument of a Gegenbauer evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerParams<T> {
    pub n: usize,
    pub alpha: T,
    pub x: T,
}

impl<T: Real> GegenbauerParams<T> {
    pub fn new(n: i64, alpha: T, x: T) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeDegree(n));
        }
        if !(alpha > lit(-0.5)) {
            return Err(Error::InvalidParameter(format!(
                "Gegenbauer parameter must exceed -1/2, got {alpha}"
            )));
        }
        if !(x >= -T::one() && x <= T::one()) {
            return Err(Error::InvalidParameter(format!(
                "Gegenbauer argument must lie in [-1, 1], got {x}"
            )));
        }
        Ok(Self { n: n as usize, alpha, x })
    }
}

/// `G_n^alpha(x)` by the three-term recurrence.
pub fn gegenbauer<T: Real>(params: &GegenbauerParams<T>) -> T {
    gegenbauer_value(params.n, params.alpha, params.x)
}

/// Unchecked recurrence; valid for any real `x`.
pub fn gegenbauer_value<T: Real>(n: usize, alpha: T, x: T) -> T {
    let two = lit::<T>(2.0);
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two * alpha * x;
    for k in 2..=n {
        let kf = int::<T>(k);
        let next = (two * x * (kf + alpha - T::one()) * cur - (kf + two * alpha - two) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Degree and weight parameters of a Romanovski polynomial, plus the argument.
///
/// The weight is `(1+z^2)^(beta-1) exp(-alpha arccot z)` with `arccot` on `(0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RomanovskiParams<T> {
    pub n: usize,
    pub alpha: T,
    pub beta: T,
    pub z: T,
}

impl<T: Real> RomanovskiParams<T> {
    pub fn new(n: i64, alpha: T, beta: T, z: T) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeDegree(n));
        }
        Ok(Self { n: n as usize, alpha, beta, z })
    }

    /// Parameters that solve the trigonometric Rosen-Morse problem at level
    /// `K` with angular momentum `ell`: degree `K - ell`, weight `(-alpha_k, -K)`.
    pub fn rosen_morse(k: usize, ell: usize, alpha_k: T, z: T) -> Result<Self> {
        if ell > k {
            return Err(Error::EllExceedsK { ell, k });
        }
        Ok(Self {
            n: k - ell,
            alpha: -alpha_k,
            beta: -int::<T>(k),
            z,
        })
    }
}

/// Romanovski weight `(1+z^2)^(beta-1) exp(-alpha arccot z)`.
pub fn romanovski_weight<T: Real>(alpha: T, beta: T, z: T) -> T {
    (T::one() + z * z).powf(beta - T::one()) * (-alpha * crate::num::arccot(z)).exp()
}

/// Coefficients of `R_n^{alpha,beta}` from the Rodrigues formula
/// `R_n = w^{-1} d^n/dz^n [ (1+z^2)^n w ]`.
///
/// Every derivative of `p(z) (1+z^2)^e w(z)` has the form
/// `(1+z^2)^(e-1) w(z) [ p'(1+z^2) + p (alpha + 2 (e+beta-1) z) ]`, so after
/// `n` steps the weight and all powers of `1+z^2` cancel and only the
/// polynomial factor remains. Works over any ring, including exact rationals.
pub fn romanovski_coefficients<C>(n: usize, alpha: C, beta: C) -> Polynomial<C>
where
    C: Num + Clone + FromPrimitive,
{
    let two = C::from_u8(2).expect("2 in ring");
    let sigma = Polynomial::new(vec![C::one(), C::zero(), C::one()]);
    let mut p = Polynomial::constant(C::one());
    for step in 0..n {
        let e = C::from_usize(n - step).expect("exponent in ring");
        let drift = Polynomial::new(vec![
            alpha.clone(),
            two.clone() * (e + beta.clone() - C::one()),
        ]);
        p = &(&p.derivative() * &sigma) + &(&p * &drift);
    }
    p
}

/// `R_n^{alpha,beta}(z)` with unit Rodrigues prefactor (`R_0 = 1`).
pub fn romanovski<T: Real>(params: &RomanovskiParams<T>) -> T {
    romanovski_coefficients(params.n, params.alpha, params.beta).eval(params.z)
}

/// Residual of the Romanovski equation
/// `(1+z^2) u'' + (alpha + 2 beta z) u' - n (2 beta + n - 1) u` at `z`.
pub fn romanovski_ode_residual<T: Real>(poly: &Polynomial<T>, alpha: T, beta: T, z: T) -> T {
    let n = int::<T>(poly.degree());
    let d1 = poly.derivative();
    let d2 = d1.derivative();
    let two = lit::<T>(2.0);
    (T::one() + z * z) * d2.eval(z) + (alpha + two * beta * z) * d1.eval(z)
        - n * (two * beta + n - T::one()) * poly.eval(z)
}

/// Quantum numbers and angle of a quasi-radial function `S_{K,l}(chi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiRadialState<T> {
    pub k: usize,
    pub ell: usize,
    pub chi: T,
}

impl<T: Real> QuasiRadialState<T> {
    pub fn new(k: usize, ell: usize, chi: T) -> Result<Self> {
        if ell > k {
            return Err(Error::EllExceedsK { ell, k });
        }
        if !(chi > T::zero() && chi < T::PI()) {
            return Err(Error::AngleOutOfDomain(chi.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { k, ell, chi })
    }

    /// Gegenbauer degree `n = K - ell`.
    pub fn degree(&self) -> usize {
        self.k - self.ell
    }
}

/// `S_{K,l}(chi) = sin^l(chi) G_{K-l}^{l+1}(cos chi)`.
pub fn quasi_radial<T: Real>(state: &QuasiRadialState<T>) -> T {
    let (s, c) = state.chi.sin_cos();
    s.powi(state.ell as i32) * gegenbauer_value(state.degree(), int::<T>(state.ell + 1), c)
}

/// Checked variant taking raw quantum numbers.
pub fn quasi_radial_at<T: Real>(k: usize, ell: usize, chi: T) -> Result<T> {
    Ok(quasi_radial(&QuasiRadialState::new(k, ell, chi)?))
}

/// `max |(d/dchi - K cot chi) S_{K,K}(chi)|` over `grid`, using the analytic
/// derivative of `sin^K chi`. Zero up to rounding for every `K`.
pub fn gradient_annihilation_residual<T: Real>(k: usize, grid: &[T]) -> T {
    if k == 0 {
        return T::zero();
    }
    let kf = int::<T>(k);
    grid.iter()
        .map(|&chi| {
            let (s, c) = chi.sin_cos();
            let value = s.powi(k as i32);
            let derivative = kf * s.powi(k as i32 - 1) * c;
            (derivative - kf * cot(chi) * value).abs()
        })
        .fold(T::zero(), T::max)
}
