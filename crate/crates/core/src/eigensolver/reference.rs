//! Closed-form bound-state spectra used as references for the solver.

use serde::Serialize;

use crate::deformation::{mic_kepler_mu_squared, CotFactor, PotentialKind, PotentialModel};
use crate::num::{int, lit, Real};

/// Analytic level formulas, indexed by the node number `n = 0, 1, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AnalyticSpectrum<T> {
    /// `a(a-1)/sin^2 + 2b cot` on `(0, pi)`: `(n+a)^2 - b^2/(n+a)^2 + shift`.
    RosenMorse { a: T, b: T, shift: T },
    /// `s0(s0-1)/sin^2 + s1(s1-1)/cos^2` on `(0, pi/2)`: `(s0 + s1 + 2n)^2 + shift`.
    PoschlTeller { s0: T, s1: T, shift: T },
    /// `p csc^2 + q csc cot` on `(0, pi)` with regular boundary exponents
    /// `s0` at 0 and `s1` at pi: `((s0 + s1)/2 + n)^2 + shift`.
    Scarf { s0: T, s1: T, shift: T },
}

impl<T: Real> AnalyticSpectrum<T> {
    pub fn level(&self, n: usize) -> T {
        let nf = int::<T>(n);
        match *self {
            AnalyticSpectrum::RosenMorse { a, b, shift } => {
                let m = nf + a;
                m * m - b * b / (m * m) + shift
            }
            AnalyticSpectrum::PoschlTeller { s0, s1, shift } => {
                let m = s0 + s1 + lit::<T>(2.0) * nf;
                m * m + shift
            }
            AnalyticSpectrum::Scarf { s0, s1, shift } => {
                let m = (s0 + s1) * lit(0.5) + nf;
                m * m + shift
            }
        }
    }

    pub fn levels(&self, count: usize) -> Vec<T> {
        (0..count).map(|n| self.level(n)).collect()
    }
}

/// Larger root of `s(s-1) = c`, the regular boundary exponent for `c/x^2`.
fn regular_exponent<T: Real>(c: T) -> T {
    let q = lit::<T>(0.25) + c;
    lit::<T>(0.5) + q.max(T::zero()).sqrt()
}

fn param<T: Real>(model: &PotentialModel<T>, key: &str) -> Option<T> {
    model.params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

/// Analytic spectrum of `model.total()` when the family has one.
///
/// The quadratic family is only quasi-exactly solvable and custom profiles
/// have no closed form; both return `None`.
pub fn reference_spectrum<T: Real>(model: &PotentialModel<T>) -> Option<AnalyticSpectrum<T>> {
    let ell = model.ell;
    let k = model.k;
    let centr = int::<T>(ell * (ell + 1));
    let quarter = lit::<T>(0.25);
    let half = lit::<T>(0.5);
    let m = match model.cot_factor {
        CotFactor::KPlusOne => int::<T>(k + 1),
        CotFactor::EllPlusOne => int::<T>(ell + 1),
    };
    let offset = model.additive_offset;
    match (model.kind, model.family.as_str()) {
        (PotentialKind::Centrifugal, _) => Some(AnalyticSpectrum::RosenMorse {
            a: int(ell + 1),
            b: T::zero(),
            shift: offset,
        }),
        (PotentialKind::Dipole, _) => {
            let a_snc = param(model, "alpha_s_nc")?;
            Some(AnalyticSpectrum::RosenMorse {
                a: int(ell + 1),
                b: -a_snc * half,
                shift: offset,
            })
        }
        (PotentialKind::Induced | PotentialKind::ClosedForm, "trm") => {
            let alpha_k = param(model, "alpha_k")?;
            Some(AnalyticSpectrum::RosenMorse {
                a: int(ell + 1),
                b: alpha_k * m * half,
                shift: alpha_k * alpha_k * quarter + offset,
            })
        }
        (PotentialKind::Induced | PotentialKind::ClosedForm, "poschl-teller") => {
            let alpha = param(model, "alpha")?;
            let ha = alpha * half;
            let s1 = regular_exponent(ha * (ha - T::one()));
            let shift = if model.kind == PotentialKind::Induced {
                -alpha * alpha * quarter - alpha * m
            } else {
                offset
            };
            Some(AnalyticSpectrum::PoschlTeller {
                s0: int(ell + 1),
                s1,
                shift,
            })
        }
        (PotentialKind::Induced | PotentialKind::ClosedForm, "scarf") => {
            let alpha = param(model, "alpha")?;
            let p = centr + alpha * alpha * quarter;
            let q = alpha * half * (lit::<T>(2.0) * m - T::one());
            Some(AnalyticSpectrum::Scarf {
                s0: regular_exponent(p + q),
                s1: regular_exponent(p - q),
                shift: offset,
            })
        }
        (PotentialKind::Induced | PotentialKind::ClosedForm, "mic-kepler") => {
            let beta = param(model, "beta")?;
            let alpha_k = param(model, "alpha_k")?;
            let hb = beta * half;
            // mu^2 with the same factor that multiplies the cot terms
            let mu2 = match model.cot_factor {
                CotFactor::KPlusOne => mic_kepler_mu_squared(beta, k),
                CotFactor::EllPlusOne => mic_kepler_mu_squared(beta, ell),
            };
            Some(AnalyticSpectrum::RosenMorse {
                a: regular_exponent(centr + mu2),
                b: alpha_k * (m + hb) * half,
                shift: alpha_k * alpha_k * quarter - beta * beta * quarter - beta * m + offset,
            })
        }
        _ => None,
    }
}
