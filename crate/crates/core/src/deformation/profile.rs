use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{cot, csc, int, lit, Real};

/// One elementary term of a composite deformation profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileTerm<T> {
    /// `coeff * chi^exponent`
    Power { coeff: T, exponent: u32 },
    /// `weight * ln sin(chi)`
    LnSin { weight: T },
    /// `weight * ln |cos(chi)|`
    LnCos { weight: T },
    /// `weight * ln tan(chi / 2)`
    LnTanHalf { weight: T },
    /// `weight * sin(freq * chi)`
    Sin { weight: T, freq: T },
    /// `weight * cos(freq * chi)`
    Cos { weight: T, freq: T },
}

impl<T: Real> ProfileTerm<T> {
    fn derivs(&self, chi: T) -> [T; 3] {
        match *self {
            ProfileTerm::Power { coeff, exponent } => {
                let p = exponent as i32;
                let pf = int::<T>(exponent as usize);
                let f = coeff * chi.powi(p);
                let d1 = if p >= 1 { coeff * pf * chi.powi(p - 1) } else { T::zero() };
                let d2 = if p >= 2 {
                    coeff * pf * (pf - T::one()) * chi.powi(p - 2)
                } else {
                    T::zero()
                };
                [f, d1, d2]
            }
            ProfileTerm::LnSin { weight } => {
                let c = cot(chi);
                [weight * chi.sin().ln(), weight * c, -weight * csc(chi).powi(2)]
            }
            ProfileTerm::LnCos { weight } => {
                let t = chi.tan();
                [weight * chi.cos().abs().ln(), -weight * t, -weight * (T::one() + t * t)]
            }
            ProfileTerm::LnTanHalf { weight } => {
                let s = csc(chi);
                [
                    weight * (chi / lit(2.0)).tan().ln(),
                    weight * s,
                    -weight * s * cot(chi),
                ]
            }
            ProfileTerm::Sin { weight, freq } => {
                let (s, c) = (freq * chi).sin_cos();
                [weight * s, weight * freq * c, -weight * freq * freq * s]
            }
            ProfileTerm::Cos { weight, freq } => {
                let (s, c) = (freq * chi).sin_cos();
                [weight * c, -weight * freq * s, -weight * freq * freq * c]
            }
        }
    }
}

/// User-supplied profile: a sum of elementary terms or an arbitrary closure
/// returning `[f, f', f'']`.
#[derive(Clone)]
pub enum CustomProfile<T> {
    Terms(Vec<ProfileTerm<T>>),
    Closure {
        label: String,
        derivs: Arc<dyn Fn(T) -> [T; 3] + Send + Sync>,
    },
}

impl<T: fmt::Debug> fmt::Debug for CustomProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CustomProfile::Terms(t) => f.debug_tuple("Terms").field(t).finish(),
            CustomProfile::Closure { label, .. } => {
                f.debug_struct("Closure").field("label", label).finish_non_exhaustive()
            }
        }
    }
}

/// Named deformation families. Each fixes the conformal scale function `f`.
#[derive(Debug, Clone)]
pub enum ProfileFamily<T> {
    /// `f = alpha_k chi / 2` (trigonometric Rosen-Morse).
    Linear { alpha_k: T },
    /// `f = (alpha / 2) ln |cos chi|` (trigonometric Poschl-Teller I).
    LogCos { alpha: T },
    /// `f = -(alpha / 2) ln |csc chi + cot chi| = (alpha / 2) ln tan(chi / 2)`,
    /// so that `f' = (alpha / 2) csc chi` (trigonometric Scarf I).
    LogCscCot { alpha: T },
    /// `f = (beta / 2) ln sin chi + alpha_k chi / 2` (MIC-Kepler).
    MicKepler { beta: T, alpha_k: T },
    /// `f = alpha_k chi^2 / 2` (quasi-exactly solvable).
    Quadratic { alpha_k: T },
    Custom(CustomProfile<T>),
}

impl<T: Real> ProfileFamily<T> {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileFamily::Linear { .. } => "trm",
            ProfileFamily::LogCos { .. } => "poschl-teller",
            ProfileFamily::LogCscCot { .. } => "scarf",
            ProfileFamily::MicKepler { .. } => "mic-kepler",
            ProfileFamily::Quadratic { .. } => "quadratic",
            ProfileFamily::Custom(_) => "custom",
        }
    }

    /// Named parameters, in a stable order.
    pub fn params(&self) -> Vec<(&'static str, T)> {
        match *self {
            ProfileFamily::Linear { alpha_k } | ProfileFamily::Quadratic { alpha_k } => {
                vec![("alpha_k", alpha_k)]
            }
            ProfileFamily::LogCos { alpha } | ProfileFamily::LogCscCot { alpha } => {
                vec![("alpha", alpha)]
            }
            ProfileFamily::MicKepler { beta, alpha_k } => {
                vec![("beta", beta), ("alpha_k", alpha_k)]
            }
            ProfileFamily::Custom(_) => Vec::new(),
        }
    }
}

/// A deformation profile `f(chi)` with its first two derivatives.
#[derive(Debug, Clone)]
pub struct DeformationProfile<T> {
    pub family: ProfileFamily<T>,
}

impl<T: Real> DeformationProfile<T> {
    pub fn new(family: ProfileFamily<T>) -> Self {
        Self { family }
    }

    /// The undeformed metric, `f = 0`.
    pub fn free() -> Self {
        Self::linear(T::zero())
    }

    pub fn linear(alpha_k: T) -> Self {
        Self::new(ProfileFamily::Linear { alpha_k })
    }

    pub fn log_cos(alpha: T) -> Self {
        Self::new(ProfileFamily::LogCos { alpha })
    }

    pub fn log_csc_cot(alpha: T) -> Self {
        Self::new(ProfileFamily::LogCscCot { alpha })
    }

    pub fn mic_kepler(beta: T, alpha_k: T) -> Self {
        Self::new(ProfileFamily::MicKepler { beta, alpha_k })
    }

    pub fn quadratic(alpha_k: T) -> Self {
        Self::new(ProfileFamily::Quadratic { alpha_k })
    }

    pub fn from_terms(terms: Vec<ProfileTerm<T>>) -> Self {
        Self::new(ProfileFamily::Custom(CustomProfile::Terms(terms)))
    }

    pub fn from_fn<F>(label: impl Into<String>, derivs: F) -> Self
    where
        F: Fn(T) -> [T; 3] + Send + Sync + 'static,
    {
        Self::new(ProfileFamily::Custom(CustomProfile::Closure {
            label: label.into(),
            derivs: Arc::new(derivs),
        }))
    }

    /// Builds a named family from its CLI/config name and parameters.
    ///
    /// `alpha_k` serves the Linear, Quadratic and MIC-Kepler families,
    /// `alpha` the Poschl-Teller and Scarf families.
    pub fn from_name(name: &str, alpha: T, alpha_k: T, beta: T) -> Result<Self> {
        let family = match name.to_ascii_lowercase().as_str() {
            "free" => return Ok(Self::free()),
            "trm" | "linear" | "rosen-morse" => ProfileFamily::Linear { alpha_k },
            "pt" | "poschl-teller" | "logcos" => ProfileFamily::LogCos { alpha },
            "scarf" | "logcsccot" => ProfileFamily::LogCscCot { alpha },
            "mic-kepler" | "mic" | "mickepler" => ProfileFamily::MicKepler { beta, alpha_k },
            "quadratic" | "qes" => ProfileFamily::Quadratic { alpha_k },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown deformation family '{other}'"
                )))
            }
        };
        Ok(Self::new(family))
    }

    /// `[f, f', f'']` at `chi`.
    pub fn derivs(&self, chi: T) -> [T; 3] {
        let half = lit::<T>(0.5);
        match &self.family {
            ProfileFamily::Linear { alpha_k } => [*alpha_k * chi * half, *alpha_k * half, T::zero()],
            ProfileFamily::LogCos { alpha } => ProfileTerm::LnCos { weight: *alpha * half }.derivs(chi),
            ProfileFamily::LogCscCot { alpha } => {
                ProfileTerm::LnTanHalf { weight: *alpha * half }.derivs(chi)
            }
            ProfileFamily::MicKepler { beta, alpha_k } => {
                let [f, d1, d2] = ProfileTerm::LnSin { weight: *beta * half }.derivs(chi);
                [f + *alpha_k * chi * half, d1 + *alpha_k * half, d2]
            }
            ProfileFamily::Quadratic { alpha_k } => {
                [*alpha_k * chi * chi * half, *alpha_k * chi, *alpha_k]
            }
            ProfileFamily::Custom(CustomProfile::Terms(terms)) => {
                terms.iter().fold([T::zero(); 3], |acc, t| {
                    let d = t.derivs(chi);
                    [acc[0] + d[0], acc[1] + d[1], acc[2] + d[2]]
                })
            }
            ProfileFamily::Custom(CustomProfile::Closure { derivs, .. }) => derivs(chi),
        }
    }

    pub fn f(&self, chi: T) -> T {
        self.derivs(chi)[0]
    }

    pub fn f_prime(&self, chi: T) -> T {
        self.derivs(chi)[1]
    }

    pub fn f_double_prime(&self, chi: T) -> T {
        self.derivs(chi)[2]
    }

    /// Physical interval of the induced problem. The Poschl-Teller family has
    /// an interior pole at `pi/2` and lives on `(0, pi/2)`.
    pub fn natural_domain(&self) -> (T, T) {
        match self.family {
            ProfileFamily::LogCos { .. } => (T::zero(), T::FRAC_PI_2()),
            _ => (T::zero(), T::PI()),
        }
    }

    /// Non-fatal remarks about the parameters.
    pub fn warnings(&self, k: usize) -> Vec<String> {
        let mut out = Vec::new();
        if let ProfileFamily::MicKepler { beta, .. } = self.family {
            let mu = mic_kepler_mu_squared(beta, k).sqrt();
            let twice = mu * lit(2.0);
            if !mu.is_finite() || (twice - twice.round()).abs() > lit(1e-9) {
                out.push(format!(
                    "MIC-Kepler mu = {mu} is neither integer nor half-integer (dyon charge quantization)"
                ));
            }
        }
        out
    }
}

/// `mu^2 = (beta/2)(beta/2 - 1) + beta (K + 1)` of the MIC-Kepler family.
pub fn mic_kepler_mu_squared<T: Real>(beta: T, k: usize) -> T {
    let hb = beta * lit(0.5);
    hb * (hb - T::one()) + beta * int::<T>(k + 1)
}
