//! Finite-dimensional spectral perturbation toolkit: tagged dense operators
//! with Schatten norms, resolvent growth profiles, weighted eigenvalue
//! displacement sums, regularized perturbation determinants, and the
//! constructed example pairs (Cayley splits, discretized integral symbols).

pub mod determinant;
pub mod examples;
pub mod operator;
pub mod perturb;
pub mod resolvent;

pub use determinant::{determinant_growth_check, determinant_zero_near, perturbation_determinant, GrowthReport};
pub use examples::{cayley_pair, example3_operator, CayleyPair};
pub use operator::{schatten_norm, schatten_power, MatrixOperator, OperatorTag};
pub use perturb::{
    perturb_and_measure, perturb_and_measure_opts, DistanceWeight, MeasureOptions, OuterReport,
    RatioEntry, SchattenEntry, SpectralReport, WeightedSum,
};
pub use resolvent::{resolvent_profile, ProfileReport, ResolventProfile};
