//! The Green-estimator family: a common trait, the estimate record, and
//! name-keyed construction from a serializable spec.

use serde::{Deserialize, Serialize};

use super::closed::green_exterior_disk;
use super::collocation::{CollocationGreen, CollocationOptions, DomainPolicy};
use super::constants::{finite_set_constants, vt_lower_bound, FiniteSetConstants};
use crate::error::{Error, Result};
use crate::geometry::{CompactSet, CompactSetSpec, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GreenMethod {
    ClosedFormDisk,
    ClosedFormExteriorDisk,
    FiniteSetLowerBound,
    Collocation,
}

/// A batch evaluation of `G(z, infinity)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GreenEstimate {
    pub values: Vec<f64>,
    /// Max |G| over the collocation points (0 for closed forms).
    pub boundary_residual: f64,
    pub method: GreenMethod,
    /// Logarithmic sources and their coefficients; collocation coefficients
    /// sum to 1 (the pole-at-infinity normalization).
    pub sources: Option<Vec<(Point, f64)>>,
    /// Additive constant of the expansion (the Robin-constant estimate).
    pub constant: f64,
    /// Indices of queries whose slightly negative values were reported as 0.
    pub clamped: Vec<usize>,
}

/// Strategy interface: one estimator per domain family, selected by name.
pub trait GreenFunction {
    fn name(&self) -> &'static str;
    fn method(&self) -> GreenMethod;
    fn estimate(&self, queries: &[Point]) -> Result<GreenEstimate>;
}

/// Names accepted by [`GreenSpec`] / the CLI `green.method` field.
pub const GREEN_METHODS: [&str; 3] = ["exterior_disk", "finite_set_bound", "collocation"];

/// Serializable estimator selection; `build` resolves it against a set.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum GreenSpec {
    /// `G(z) = log|z| - log(radius)` for `{|z| > radius}`; requires the set
    /// to be contained in the closed disk.
    ExteriorDisk { radius: f64 },
    /// The explicit finite-set lower bound `v_t` (may be negative near the
    /// boundary; it is a bound, not the Green value itself).
    FiniteSetBound { t: f64 },
    /// Boundary collocation with logarithmic sources on `Omega_t`.
    Collocation {
        t: f64,
        #[serde(default)]
        n_sources: usize,
        #[serde(default)]
        n_collocation: usize,
        #[serde(default)]
        policy: DomainPolicy,
    },
}

impl GreenSpec {
    pub fn name(&self) -> &'static str {
        match self {
            GreenSpec::ExteriorDisk { .. } => "exterior_disk",
            GreenSpec::FiniteSetBound { .. } => "finite_set_bound",
            GreenSpec::Collocation { .. } => "collocation",
        }
    }

    pub fn build(&self, e: &CompactSet) -> Result<Box<dyn GreenFunction>> {
        match *self {
            GreenSpec::ExteriorDisk { radius } => {
                if !(radius > 0.0) || !radius.is_finite() {
                    return Err(Error::BadParameter(format!(
                        "radius must be positive, got {radius}"
                    )));
                }
                let s = e.max_norm();
                if s > radius * (1.0 + 1e-9) {
                    return Err(Error::BadParameter(format!(
                        "set reaches |z| = {s}, outside the disk of radius {radius}"
                    )));
                }
                Ok(Box::new(ExteriorDiskGreen { radius }))
            }
            GreenSpec::FiniteSetBound { t } => {
                let constants = finite_set_constants(e)?;
                if !(t > 0.0) || t > constants.t1 {
                    return Err(Error::BadParameter(format!(
                        "t = {t} outside the validity range (0, {}]",
                        constants.t1
                    )));
                }
                Ok(Box::new(FiniteSetBoundGreen { e: e.clone(), constants, t }))
            }
            GreenSpec::Collocation { t, n_sources, n_collocation, policy } => {
                let opts = CollocationOptions { n_sources, n_collocation, policy, grid_limit: 0 };
                Ok(Box::new(CollocationGreen::build(e, t, &opts)?))
            }
        }
    }
}

struct ExteriorDiskGreen {
    radius: f64,
}

impl GreenFunction for ExteriorDiskGreen {
    fn name(&self) -> &'static str {
        "exterior_disk"
    }

    fn method(&self) -> GreenMethod {
        GreenMethod::ClosedFormExteriorDisk
    }

    fn estimate(&self, queries: &[Point]) -> Result<GreenEstimate> {
        let mut values = Vec::with_capacity(queries.len());
        for &q in queries {
            values.push(green_exterior_disk(self.radius, q)?);
        }
        Ok(GreenEstimate {
            values,
            boundary_residual: 0.0,
            method: GreenMethod::ClosedFormExteriorDisk,
            sources: None,
            constant: -self.radius.ln(),
            clamped: Vec::new(),
        })
    }
}

struct FiniteSetBoundGreen {
    e: CompactSet,
    constants: FiniteSetConstants,
    t: f64,
}

impl GreenFunction for FiniteSetBoundGreen {
    fn name(&self) -> &'static str {
        "finite_set_bound"
    }

    fn method(&self) -> GreenMethod {
        GreenMethod::FiniteSetLowerBound
    }

    fn estimate(&self, queries: &[Point]) -> Result<GreenEstimate> {
        let mut values = Vec::with_capacity(queries.len());
        for &q in queries {
            if self.e.distance(q) <= self.t {
                return Err(Error::OutsideDomain(format!(
                    "query {q:?} is inside the {}-thickening",
                    self.t
                )));
            }
            values.push(vt_lower_bound(&self.e, self.t, q)?);
        }
        // equal coefficients at the points realize the same log expansion
        let n = self.constants.n as f64;
        let sources = match self.e.spec() {
            CompactSetSpec::Finite { points } => {
                Some(points.iter().map(|&p| (p, 1.0 / n)).collect())
            }
            _ => None,
        };
        Ok(GreenEstimate {
            values,
            boundary_residual: 0.0,
            method: GreenMethod::FiniteSetLowerBound,
            sources,
            constant: (-self.t.ln() - self.constants.c.ln()) / n,
            clamped: Vec::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_roundtrip_and_names() {
        let spec = GreenSpec::Collocation {
            t: 0.1,
            n_sources: 0,
            n_collocation: 0,
            policy: DomainPolicy::RequireConnected,
        };
        let json = serde_json::to_string(&spec).unwrap();
        let back: GreenSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.name(), "collocation");
        assert!(GREEN_METHODS.contains(&spec.name()));

        let spec: GreenSpec =
            serde_json::from_str(r#"{"method": "exterior_disk", "radius": 2.0}"#).unwrap();
        assert_eq!(spec.name(), "exterior_disk");
    }

    #[test]
    fn exterior_disk_estimator() {
        let e = CompactSet::disks(vec![crate::geometry::Disk {
            center: Point::new(0.0, 0.0),
            radius: 1.0,
        }])
        .unwrap();
        let g = GreenSpec::ExteriorDisk { radius: 1.0 }.build(&e).unwrap();
        let est = g.estimate(&[Point::new(2.0, 0.0)]).unwrap();
        assert!((est.values[0] - 2f64.ln()).abs() < 1e-14);
        // a set poking out of the disk is rejected
        let wide = CompactSet::segment(Point::new(0.0, 0.0), Point::new(3.0, 0.0)).unwrap();
        assert!(GreenSpec::ExteriorDisk { radius: 1.0 }.build(&wide).is_err());
    }

    #[test]
    fn finite_bound_estimator() {
        let e =
            CompactSet::finite(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).unwrap();
        let g = GreenSpec::FiniteSetBound { t: 0.1 }.build(&e).unwrap();
        let est = g.estimate(&[Point::new(3.0, 0.0)]).unwrap();
        assert!((est.values[0] - 30f64.ln() / 2.0).abs() < 1e-14);
        let coeffs: f64 = est.sources.unwrap().iter().map(|s| s.1).sum();
        assert!((coeffs - 1.0).abs() < 1e-15);
        assert!(g.estimate(&[Point::new(0.05, 0.0)]).is_err());
    }
}
