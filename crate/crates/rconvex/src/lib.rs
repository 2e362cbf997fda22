//! Planar potential-theoretic toolkit: r-convex geometry of compact sets,
//! Green's functions with pole at infinity on their complements, Riesz-measure
//! integrals with configurable weight pairs, Weierstrass-type canonical
//! products, and Schatten-class spectral perturbation measurements.
//!
//! The crate is organized around a few concrete carriers:
//!
//! * [`geometry::CompactSet`] — finite sets, segments, polylines, disk unions
//!   and raster masks with exact (or transform-based) distance queries.
//! * [`grid::GridField`] — square-cell scalar/boolean fields used by the hull,
//!   connectivity, and measure routines.
//! * [`potential::GreenFunction`] — a strategy trait with closed-form and
//!   collocation-based estimators for the Green's function of the unbounded
//!   complement component.
//! * [`riesz::Weight`] — weight pairs (phi, psi) registered by name, with a
//!   finiteness certificate for the defining integral condition.
//! * [`spectra::MatrixOperator`] — dense complex operators with structure
//!   tags, Schatten norms, resolvent profiles and perturbation determinants.

pub mod error;
pub mod geometry;
pub mod grid;
pub mod potential;
pub mod products;
pub mod riesz;
pub mod spectra;

pub use error::{Error, ErrorClass, Result};
