//! Explicit constants and the logarithmic-sum lower bound for finite sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CompactSet, CompactSetSpec, Point};

/// Constants attached to a finite set `{zeta_1, ..., zeta_N}`:
/// `m_j` is the product of distances from `zeta_j` to the other points,
/// `c = 2^(N-1) max_j m_j`, `delta` the minimal gap, `t1 = delta/2`, and
/// `k = 1 + 2 c (2/delta)^(N-1)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteSetConstants {
    pub n: usize,
    pub m: Vec<f64>,
    pub c: f64,
    pub delta: f64,
    pub t1: f64,
    pub k: f64,
}

pub fn finite_set_constants(e: &CompactSet) -> Result<FiniteSetConstants> {
    let points = finite_points(e)?;
    let n = points.len();
    if n < 2 {
        return Err(Error::BadParameter(format!("need at least 2 points, got {n}")));
    }
    let mut m = Vec::with_capacity(n);
    let mut delta = f64::INFINITY;
    for (j, &zj) in points.iter().enumerate() {
        let mut prod = 1.0;
        for (i, &zi) in points.iter().enumerate() {
            if i != j {
                let gap = zi.dist(zj);
                prod *= gap;
                delta = delta.min(gap);
            }
        }
        m.push(prod);
    }
    let c = 2f64.powi(n as i32 - 1) * m.iter().cloned().fold(0.0, f64::max);
    let k = 1.0 + 2.0 * c * (2.0 / delta).powi(n as i32 - 1);
    Ok(FiniteSetConstants { n, m, c, delta, t1: delta / 2.0, k })
}

/// `v_t(z) = (1/N)(sum_j log|z - zeta_j| - log t - log c)`: subharmonic on
/// the plane, nonpositive on the circles `|z - zeta_j| = t`, and a lower
/// bound for `G_t(z, infinity)` on `Omega_t` when `t <= t1`.
///
/// Returns `-inf` when `z` coincides with one of the points.
pub fn vt_lower_bound(e: &CompactSet, t: f64, z: Point) -> Result<f64> {
    let consts = finite_set_constants(e)?;
    if !(t > 0.0) || t > consts.t1 {
        return Err(Error::BadParameter(format!(
            "t = {t} outside the validity range (0, {}]",
            consts.t1
        )));
    }
    let points = finite_points(e)?;
    let mut sum = 0.0;
    for &p in &points {
        sum += p.dist(z).ln();
    }
    Ok((sum - t.ln() - consts.c.ln()) / points.len() as f64)
}

fn finite_points(e: &CompactSet) -> Result<Vec<Point>> {
    match e.spec() {
        CompactSetSpec::Finite { points } => Ok(points.clone()),
        other => Err(Error::BadParameter(format!(
            "finite point set required, got {}",
            spec_name(other)
        ))),
    }
}

fn spec_name(spec: &CompactSetSpec) -> &'static str {
    match spec {
        CompactSetSpec::Finite { .. } => "finite",
        CompactSetSpec::Segment { .. } => "segment",
        CompactSetSpec::Curve { .. } => "curve",
        CompactSetSpec::Disks { .. } => "disks",
        CompactSetSpec::Mask { .. } => "mask",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[(f64, f64)]) -> CompactSet {
        CompactSet::finite(points.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn pair_unit_gap() {
        let c = finite_set_constants(&set(&[(0.0, 0.0), (1.0, 0.0)])).unwrap();
        assert_eq!(c.n, 2);
        assert_eq!(c.m, vec![1.0, 1.0]);
        assert_eq!(c.c, 2.0);
        assert_eq!(c.delta, 1.0);
        assert_eq!(c.t1, 0.5);
        assert_eq!(c.k, 9.0);
    }

    #[test]
    fn pair_gap_two() {
        let c = finite_set_constants(&set(&[(0.0, 0.0), (2.0, 0.0)])).unwrap();
        assert_eq!(c.m, vec![2.0, 2.0]);
        assert_eq!(c.c, 4.0);
        assert_eq!(c.t1, 1.0);
        // c (2/delta)^(n-1) is scale invariant, so k matches the unit-gap pair
        assert_eq!(c.k, 9.0);
    }

    #[test]
    fn three_collinear() {
        let c = finite_set_constants(&set(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])).unwrap();
        assert_eq!(c.m, vec![2.0, 1.0, 2.0]);
        assert_eq!(c.c, 8.0);
        assert_eq!(c.delta, 1.0);
        assert_eq!(c.k, 65.0);
    }

    #[test]
    fn vt_far_field_value() {
        // z = 3 for {0, 1}: (log 3 + log 2 - log 0.1 - log 2) / 2 = log(30) / 2
        let e = set(&[(0.0, 0.0), (1.0, 0.0)]);
        let v = vt_lower_bound(&e, 0.1, Point::new(3.0, 0.0)).unwrap();
        assert!((v - 30f64.ln() / 2.0).abs() < 1e-14, "v = {v}");
    }

    #[test]
    fn vt_nonpositive_on_circles() {
        // on |z| = t far from the other point the normalization forces v <= 0
        let e = set(&[(0.0, 0.0), (1.0, 0.0)]);
        for z in [Point::new(-0.1, 0.0), Point::new(0.0, 0.1), Point::new(0.0, -0.1)] {
            let v = vt_lower_bound(&e, 0.1, z).unwrap();
            assert!(v <= 0.0, "v = {v} at {z:?}");
        }
    }

    #[test]
    fn vt_exceeds_log2_over_n_outside_kt() {
        // d(z) > k t = 0.45 puts z past the amplification zone
        let e = set(&[(0.0, 0.0), (1.0, 0.0)]);
        let z = Point::new(0.5, 0.46);
        assert!(e.distance(z) > 0.45);
        let v = vt_lower_bound(&e, 0.05, z).unwrap();
        assert!(v > 2f64.ln() / 2.0, "v = {v}");
    }

    #[test]
    fn vt_edges() {
        let e = set(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(vt_lower_bound(&e, 0.6, Point::new(3.0, 0.0)).is_err());
        let v = vt_lower_bound(&e, 0.1, Point::new(1.0, 0.0)).unwrap();
        assert_eq!(v, f64::NEG_INFINITY);
        let seg = CompactSet::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        assert!(finite_set_constants(&seg).is_err());
    }
}
