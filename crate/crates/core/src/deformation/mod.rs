//! Conformal deformations `f(chi)` of the 3-sphere metric and the scalar
//! potentials, curvatures and exact ground states they induce.

mod dipole;
mod ground_state;
mod potential;
mod profile;

pub use dipole::{dipole_potential, ColorDipole};
pub use ground_state::{ground_state, ground_state_residual, GroundState};
pub use potential::{
    centrifugal, closed_form_alignment, closed_form_cot_factor, closed_form_potential,
    induced_potential, induced_potential_with, master_formula_crosscheck, rescaled_curvature,
    trm_standard, trm_standard_parameters, CotFactor, MasterCrossCheck, PotentialKind,
    PotentialModel,
};
pub use profile::{mic_kepler_mu_squared, CustomProfile, DeformationProfile, ProfileFamily, ProfileTerm};
