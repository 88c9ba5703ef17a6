//! Solvable quark-interaction potentials from conformal deformations of the
//! 3-sphere, with an independent eigensolver, spectroscopy fits and the
//! compactification-driven deconfinement model.

pub mod deconfinement;
pub mod deformation;
pub mod eigensolver;
pub mod error;
pub mod num;
pub mod output;
pub mod polynomial;
pub mod reproduction;
pub mod special_functions;
pub mod spectroscopy;
pub mod verification;

pub use error::{Error, Result};
pub use num::Real;

/// Exact rational scalar for Romanovski coefficients.
pub type Rational = num_rational::Ratio<i64>;

pub type Profile = deformation::DeformationProfile<f64>;
pub type Family = deformation::ProfileFamily<f64>;
pub type Potential = deformation::PotentialModel<f64>;
pub type Problem = eigensolver::SpectralProblem<f64>;
pub type Spectrum = eigensolver::SpectrumResult<f64>;
pub type Params = spectroscopy::PhysicalParams<f64>;
pub type Levels = spectroscopy::LevelDataset<f64>;
pub type Fit = spectroscopy::FitResult<f64>;
pub type RationalPolynomial = polynomial::Polynomial<Rational>;

pub type ProfileF32 = deformation::DeformationProfile<f32>;
pub type PotentialF32 = deformation::PotentialModel<f32>;
pub type ProblemF32 = eigensolver::SpectralProblem<f32>;
pub type SpectrumF32 = eigensolver::SpectrumResult<f32>;
