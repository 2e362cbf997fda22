//! Riesz measures of subharmonic distance functions and the integrals
//! taken against them.
//!
//! The pieces fit together in three layers. [`weights`] defines the
//! [`Weight`] family: paired profiles `psi` / `phi` with a summability
//! certificate ([`Condition311`]) computed by adaptive quadrature at
//! construction. [`measure`] turns potentials into distributional mass:
//! the five-point discrete Laplacian over a masked grid plus explicit
//! atoms, with the closed-form segment density as a reference. Finally
//! [`integrals`] consumes both: truncated Blaschke sums, the layer-cake
//! identity, Green-weighted mass, and the divergence classifier that
//! turns a sequence of truncated values into a verdict.

pub mod integrals;
pub mod measure;
pub mod weights;

pub use integrals::{
    blaschke_integral, divergence_probe, green_mass, layer_cake_check, radial_log_mass,
    BlaschkeReport, Divergence, GreenMassReport, LayerCakeReport, TwoSidedBound,
};
pub use measure::{
    discrete_riesz, distance_power_riesz, riesz_density_segment, RieszMeasureGrid,
    EXCLUSION_BAND_STEPS,
};
pub use weights::{
    weight_by_name, weight_corollary1, weight_power, weight_t3, Condition311, Weight, WeightPair,
    WeightSpec, WEIGHT_NAMES,
};
