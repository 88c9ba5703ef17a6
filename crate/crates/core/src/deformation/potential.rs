use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::profile::{mic_kepler_mu_squared, DeformationProfile, ProfileFamily};
use crate::error::{Error, Result};
use crate::num::{cot, csc, int, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Induced,
    ClosedForm,
    Dipole,
    Centrifugal,
}

/// Which integer multiplies `2 f' cot chi` in the Master Formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CotFactor {
    /// `(K + 1)`, as the ground-state construction produces it.
    #[default]
    KPlusOne,
    /// `(ell + 1)`, the optional generalization to lower angular momenta.
    EllPlusOne,
}

/// A scalar potential `V(chi)` on a sub-interval of `(0, pi)`.
///
/// `evaluate` never contains `additive_offset`; the solver works with
/// [`PotentialModel::total`].
#[derive(Clone)]
pub struct PotentialModel<T> {
    pub kind: PotentialKind,
    pub family: String,
    pub ell: usize,
    pub k: usize,
    pub params: Vec<(&'static str, T)>,
    pub additive_offset: T,
    pub domain: (T, T),
    /// Factor in front of `2 f' cot chi` the potential was built with.
    pub cot_factor: CotFactor,
    evaluate: Arc<dyn Fn(T) -> T + Send + Sync>,
}

impl<T: fmt::Debug> fmt::Debug for PotentialModel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialModel")
            .field("kind", &self.kind)
            .field("family", &self.family)
            .field("ell", &self.ell)
            .field("k", &self.k)
            .field("params", &self.params)
            .field("additive_offset", &self.additive_offset)
            .field("domain", &self.domain)
            .field("cot_factor", &self.cot_factor)
            .finish_non_exhaustive()
    }
}

impl<T: Real> PotentialModel<T> {
    pub fn from_fn<F>(kind: PotentialKind, family: impl Into<String>, ell: usize, k: usize, evaluate: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            kind,
            family: family.into(),
            ell,
            k,
            params: Vec::new(),
            additive_offset: T::zero(),
            domain: (T::zero(), T::PI()),
            cot_factor: CotFactor::KPlusOne,
            evaluate: Arc::new(evaluate),
        }
    }

    pub fn with_params(mut self, params: Vec<(&'static str, T)>) -> Self {
        self.params = params;
        self
    }

    pub fn with_offset(mut self, offset: T) -> Self {
        self.additive_offset = offset;
        self
    }

    pub fn with_cot_factor(mut self, factor: CotFactor) -> Self {
        self.cot_factor = factor;
        self
    }

    pub fn with_domain(mut self, a: T, b: T) -> Self {
        self.domain = (a, b);
        self
    }

    /// The potential without its additive constant.
    pub fn value(&self, chi: T) -> T {
        (self.evaluate)(chi)
    }

    /// `value(chi) + additive_offset`.
    pub fn total(&self, chi: T) -> T {
        self.value(chi) + self.additive_offset
    }

    /// Pointwise sum with another potential (offsets add).
    pub fn plus(&self, other: &PotentialModel<T>) -> PotentialModel<T> {
        let (a, b) = (self.evaluate.clone(), other.evaluate.clone());
        let mut out = self.clone();
        out.evaluate = Arc::new(move |x| a(x) + b(x));
        out.additive_offset = self.additive_offset + other.additive_offset;
        out
    }

    /// `(chi, total(chi))` on `points` uniform nodes of the domain shrunk by `margin`.
    pub fn sample(&self, points: usize, margin: T) -> Vec<(T, T)> {
        let (a, b) = (self.domain.0 + margin, self.domain.1 - margin);
        crate::num::linspace(a, b, points)
            .into_iter()
            .map(|x| (x, self.total(x)))
            .collect()
    }
}

/// Free centrifugal potential `ell (ell + 1) / sin^2 chi`.
pub fn centrifugal<T: Real>(ell: usize) -> PotentialModel<T> {
    let c = int::<T>(ell * (ell + 1));
    PotentialModel::from_fn(PotentialKind::Centrifugal, "centrifugal", ell, ell, move |x: T| {
        c * csc(x).powi(2)
    })
}

fn check_ell(ell: usize, k: usize) -> Result<()> {
    if ell > k {
        Err(Error::EllExceedsK { ell, k })
    } else {
        Ok(())
    }
}

/// Master Formula:
/// `V = ell(ell+1)/sin^2 + f'^2 + f'' + 2 f' (K+1) cot chi`.
pub fn induced_potential<T: Real>(profile: &DeformationProfile<T>, ell: usize, k: usize) -> Result<PotentialModel<T>> {
    induced_potential_with(profile, ell, k, CotFactor::KPlusOne)
}

/// Master Formula with a selectable factor in front of `2 f' cot chi`.
pub fn induced_potential_with<T: Real>(
    profile: &DeformationProfile<T>,
    ell: usize,
    k: usize,
    factor: CotFactor,
) -> Result<PotentialModel<T>> {
    check_ell(ell, k)?;
    let centr = int::<T>(ell * (ell + 1));
    let m = match factor {
        CotFactor::KPlusOne => int::<T>(k + 1),
        CotFactor::EllPlusOne => int::<T>(ell + 1),
    };
    let two = lit::<T>(2.0);
    let p = profile.clone();
    let (a, b) = profile.natural_domain();
    Ok(PotentialModel::from_fn(PotentialKind::Induced, profile.family.name(), ell, k, move |x: T| {
        let [_, d1, d2] = p.derivs(x);
        centr * csc(x).powi(2) + d1 * d1 + d2 + two * d1 * m * cot(x)
    })
    .with_params(profile.family.params())
    .with_cot_factor(factor)
    .with_domain(a, b))
}

/// Rescaled curvature `2 f' cot chi - f'^2 + f'' + 1`.
pub fn rescaled_curvature<T: Real>(profile: &DeformationProfile<T>, chi: T) -> T {
    let [_, d1, d2] = profile.derivs(chi);
    lit::<T>(2.0) * d1 * cot(chi) - d1 * d1 + d2 + T::one()
}

/// Pointwise comparison of the two displayed forms of the Master Formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MasterCrossCheck<T> {
    /// `ell(ell+1)/sin^2 + f'^2 + f'' + 2 f' (K+1) cot`
    pub master: T,
    /// `ell(ell+1)/sin^2 + Scal* + 2 f'^2`, read literally
    pub curvature_form: T,
    /// `curvature_form + 2 f' K cot - 1`, which restores `master`
    pub curvature_form_reconciled: T,
    /// `master - curvature_form`, analytically `2 f' K cot chi - 1`
    pub discrepancy: T,
}

pub fn master_formula_crosscheck<T: Real>(
    profile: &DeformationProfile<T>,
    ell: usize,
    k: usize,
    chi: T,
) -> Result<MasterCrossCheck<T>> {
    check_ell(ell, k)?;
    let [_, d1, _] = profile.derivs(chi);
    let two = lit::<T>(2.0);
    let centr = int::<T>(ell * (ell + 1)) * csc(chi).powi(2);
    let master = induced_potential(profile, ell, k)?.value(chi);
    let curvature_form = centr + rescaled_curvature(profile, chi) + two * d1 * d1;
    let reconciled = curvature_form + two * d1 * int::<T>(k) * cot(chi) - T::one();
    Ok(MasterCrossCheck {
        master,
        curvature_form,
        curvature_form_reconciled: reconciled,
        discrepancy: master - curvature_form,
    })
}

/// Cotangent factor under which a family's closed form follows from the
/// Master Formula: the Poschl-Teller and Scarf forms carry `(ell + 1)`.
pub fn closed_form_cot_factor<T: Real>(family: &ProfileFamily<T>) -> CotFactor {
    match family {
        ProfileFamily::LogCos { .. } | ProfileFamily::LogCscCot { .. } => CotFactor::EllPlusOne,
        _ => CotFactor::KPlusOne,
    }
}

/// Constant `c` with `induced(closed_form_cot_factor) = closed.total() + c`.
pub fn closed_form_alignment<T: Real>(family: &ProfileFamily<T>, ell: usize, k: usize) -> T {
    match family {
        ProfileFamily::LogCos { .. } => int::<T>((ell + 1) * (ell + 1)),
        ProfileFamily::LogCscCot { .. } | ProfileFamily::MicKepler { .. } => int::<T>((k + 1) * (k + 1)),
        _ => T::zero(),
    }
}

/// Closed-form potentials of the named families, with their additive
/// constants carried in `additive_offset`.
///
/// * tRM: `ell(ell+1) csc^2 + alpha_k (K+1) cot + alpha_k^2/4`
/// * Poschl-Teller: `ell(ell+1) csc^2 + (a/2)(a/2 - 1) sec^2`, offset `-(ell + 1 + a/2)^2`
/// * Scarf: `[ell(ell+1) + a^2/4] csc^2 + (a/2)(2 ell + 1) csc cot`, offset `-(K+1)^2`
/// * MIC-Kepler: `(ell(ell+1) + mu^2) csc^2 + alpha_k (K + 1 + beta/2) cot
///   + alpha_k^2/4 - beta^2/4 - beta (K+1)`, offset `-(K+1)^2`
/// * quadratic: `ell(ell+1) csc^2 + 2 alpha_k (K+1) chi cot + alpha_k^2 chi^2 + alpha_k`
pub fn closed_form_potential<T: Real>(family: &ProfileFamily<T>, ell: usize, k: usize) -> Result<PotentialModel<T>> {
    check_ell(ell, k)?;
    let centr = int::<T>(ell * (ell + 1));
    let kp1 = int::<T>(k + 1);
    let half = lit::<T>(0.5);
    let quarter = lit::<T>(0.25);
    let two = lit::<T>(2.0);
    let name = family.name();
    let model = match *family {
        ProfileFamily::Linear { alpha_k } => {
            PotentialModel::from_fn(PotentialKind::ClosedForm, name, ell, k, move |x: T| {
                centr * csc(x).powi(2) + alpha_k * kp1 * cot(x) + alpha_k * alpha_k * quarter
            })
        }
        ProfileFamily::LogCos { alpha } => {
            let ha = alpha * half;
            let c = ha * (ha - T::one());
            let offset = int::<T>(ell + 1) + ha;
            PotentialModel::from_fn(PotentialKind::ClosedForm, name, ell, k, move |x: T| {
                centr * csc(x).powi(2) + c / x.cos().powi(2)
            })
            .with_offset(-offset * offset)
            .with_domain(T::zero(), T::FRAC_PI_2())
            .with_cot_factor(CotFactor::EllPlusOne)
        }
        ProfileFamily::LogCscCot { alpha } => {
            let c2 = centr + alpha * alpha * quarter;
            let c1 = alpha * half * int::<T>(2 * ell + 1);
            PotentialModel::from_fn(PotentialKind::ClosedForm, name, ell, k, move |x: T| {
                let s = csc(x);
                c2 * s * s + c1 * s * cot(x)
            })
            .with_offset(-kp1 * kp1)
            .with_cot_factor(CotFactor::EllPlusOne)
        }
        ProfileFamily::MicKepler { beta, alpha_k } => {
            let mu2 = mic_kepler_mu_squared(beta, k);
            let cot_coeff = alpha_k * (kp1 + beta * half);
            let constant = alpha_k * alpha_k * quarter - beta * beta * quarter - beta * kp1;
            PotentialModel::from_fn(PotentialKind::ClosedForm, name, ell, k, move |x: T| {
                (centr + mu2) * csc(x).powi(2) + cot_coeff * cot(x) + constant
            })
            .with_offset(-kp1 * kp1)
        }
        ProfileFamily::Quadratic { alpha_k } => {
            PotentialModel::from_fn(PotentialKind::ClosedForm, name, ell, k, move |x: T| {
                centr * csc(x).powi(2) + two * alpha_k * kp1 * x * cot(x) + alpha_k * alpha_k * x * x + alpha_k
            })
        }
        ProfileFamily::Custom(_) => {
            return Err(Error::InvalidParameter(
                "custom profiles have no closed-form potential".into(),
            ))
        }
    };
    Ok(model.with_params(family.params()))
}

/// Standard trigonometric Rosen-Morse form `a(a-1)/sin^2 + 2 b cot chi`.
pub fn trm_standard<T: Real>(a: T, b: T) -> PotentialModel<T> {
    let c = a * (a - T::one());
    let two = lit::<T>(2.0);
    PotentialModel::from_fn(PotentialKind::ClosedForm, "trm-standard", 0, 0, move |x: T| {
        c * csc(x).powi(2) + two * b * cot(x)
    })
    .with_params(vec![("a", a), ("b", b)])
}

/// `(a, b)` of the standard tRM form for the linear profile: `a = ell + 1`,
/// `b = alpha_k (K + 1) / 2`.
pub fn trm_standard_parameters<T: Real>(alpha_k: T, ell: usize, k: usize) -> (T, T) {
    (int::<T>(ell + 1), alpha_k * int::<T>(k + 1) * lit(0.5))
}
