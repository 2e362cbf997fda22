//! Green's functions with pole at infinity on the outer neighborhoods of a
//! compact set.
//!
//! Closed forms are available for disks and disk exteriors. For a general
//! set the estimator family in [`estimator`] provides `G(z, infinity)` on
//! `Omega_t = {d > t}`: a boundary-collocation solver with logarithmic
//! sources, an explicit lower bound for finite sets, and the exterior-disk
//! formula. Estimators share the [`GreenFunction`] trait and are selected by
//! name through [`GreenSpec`].

mod closed;
mod collocation;
mod constants;
mod estimator;
mod ratio;

pub use closed::{green_disk_center_pole, green_exterior_disk};
pub use collocation::{
    green_collocation, green_collocation_opts, CollocationGreen, CollocationOptions, DomainPolicy,
};
pub use constants::{finite_set_constants, vt_lower_bound, FiniteSetConstants};
pub use estimator::{GreenEstimate, GreenFunction, GreenMethod, GreenSpec, GREEN_METHODS};
pub use ratio::{lemma_l1_ratio, lemma_l1_ratio_opts, sample_omega, RatioReport};
