//! r-convex hulls on a grid.
//!
//! A point w is outside the hull iff some open disk of radius r contains w
//! and misses E. Rather than enumerating disks, use the center set
//! `S_r = {x : dist(x, E) >= r}`: w is outside iff `dist(w, S_r) < r`.
//! On a grid both distance fields are one transform each. An admissible
//! continuous center snaps to its nearest node losing at most `h/sqrt(2)`
//! of clearance, so the node centers are admitted at `dist >= r - h/sqrt(2)`;
//! without that slack, nodes a hair over the excess threshold stay
//! uncovered near their tangential shadows and the hull over-reports at
//! every resolution.

use serde::{Deserialize, Serialize};

use super::{distance_transform, CompactSet, CompactSetSpec};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, MaskField};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HullResult {
    /// True at nodes inside the hull.
    pub mask: MaskField,
    pub r: f64,
    /// Max distance from an inside node to E; near zero iff the hull added
    /// nothing beyond E's own raster.
    pub hausdorff_excess: f64,
}

pub fn r_convex_hull(e: &CompactSet, grid: GridSpec, r: f64) -> Result<HullResult> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::BadParameter(format!("hull radius must be positive, got {r}")));
    }
    let (lo, hi) = e.bbox();
    if grid.margin_around(lo, hi) < 2.0 * r {
        return Err(Error::InsufficientMargin {
            required: 2.0 * r,
            actual: grid.margin_around(lo, hi),
        });
    }
    let d_e = e.distance_field(grid);
    let eps_snap = grid.h * std::f64::consts::FRAC_1_SQRT_2;
    let centers: MaskField = d_e.map(|&d| d >= r - eps_snap);
    // margin 2r puts the grid corners at distance >= 2r from E, so the
    // center set cannot be empty
    debug_assert!(centers.count_true() > 0);
    let d_centers = distance_transform(&centers);
    let mut mask_values = Vec::with_capacity(grid.len());
    let mut excess = 0.0f64;
    for i in 0..grid.len() {
        let inside = !(d_centers.values[i] < r);
        mask_values.push(inside);
        if inside {
            excess = excess.max(d_e.values[i]);
        }
    }
    Ok(HullResult { mask: MaskField { spec: grid, values: mask_values }, r, hausdorff_excess: excess })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConvexityRadius {
    /// Estimate of the largest radius at which the set still equals its
    /// hull: the midpoint of the final bisection bracket.
    pub value: f64,
    /// `(last passing r, first failing r)`; the failing end is `r_hi` itself
    /// when the predicate never failed.
    pub bracket: (f64, f64),
    /// True when the predicate held all the way to `r_hi`.
    pub at_upper_limit: bool,
}

/// Bisection for `r0 = sup{r : E = conv_r(E)}` using the hull-excess
/// predicate `hausdorff_excess <= 2h`.
pub fn radius_of_convexity(
    e: &CompactSet,
    grid: GridSpec,
    r_lo: f64,
    r_hi: f64,
    tol: f64,
) -> Result<ConvexityRadius> {
    if !(r_lo > 0.0 && r_hi > r_lo) {
        return Err(Error::BadParameter(format!("need 0 < r_lo < r_hi, got {r_lo}, {r_hi}")));
    }
    if !(tol > 0.0) {
        return Err(Error::BadParameter("tol must be positive".into()));
    }
    let threshold = 2.0 * grid.h;
    let passes = |r: f64| -> Result<bool> {
        Ok(r_convex_hull(e, grid, r)?.hausdorff_excess <= threshold)
    };
    let lo_hull = r_convex_hull(e, grid, r_lo)?;
    if lo_hull.hausdorff_excess > threshold {
        return Err(Error::NotRConvex { r: r_lo, excess: lo_hull.hausdorff_excess });
    }
    if passes(r_hi)? {
        return Ok(ConvexityRadius {
            value: r_hi,
            bracket: (r_hi, r_hi),
            at_upper_limit: true,
        });
    }
    let (mut ok, mut fail) = (r_lo, r_hi);
    while fail - ok > tol {
        let mid = 0.5 * (ok + fail);
        if passes(mid)? {
            ok = mid;
        } else {
            fail = mid;
        }
    }
    Ok(ConvexityRadius { value: 0.5 * (ok + fail), bracket: (ok, fail), at_upper_limit: false })
}

/// Wraps a hull mask back into a set so hulls can be iterated.
pub fn hull_as_set(h: &HullResult) -> Result<CompactSet> {
    CompactSet::new(CompactSetSpec::Mask { field: h.mask.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn grid(half: f64, n: usize) -> GridSpec {
        GridSpec::square(Point::new(-half, -half), Point::new(half, half), n).unwrap()
    }

    fn tri_points() -> CompactSet {
        CompactSet::finite(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn small_r_hull_is_the_set() {
        let e = tri_points();
        let g = GridSpec::square(Point::new(-1.5, -1.5), Point::new(2.5, 2.5), 257).unwrap();
        let h = r_convex_hull(&e, g, 0.5).unwrap();
        assert!(
            h.hausdorff_excess <= 2.0 * g.h,
            "excess {} vs 2h {}",
            h.hausdorff_excess,
            2.0 * g.h
        );
    }

    #[test]
    fn large_r_hull_grows_into_triangle() {
        let e = tri_points();
        let g = GridSpec::square(Point::new(-2.5, -2.5), Point::new(3.5, 3.5), 257).unwrap();
        let h = r_convex_hull(&e, g, 1.0).unwrap();
        assert!(h.hausdorff_excess > 2.0 * g.h);
        // some hull node lies strictly inside the triangle (0,0)-(1,0)-(0,1)
        let inside_tri = h.mask.iter().any(|(_, _, p, &b)| {
            b && p.x > 0.05 && p.y > 0.05 && p.x + p.y < 0.95
        });
        assert!(inside_tri);
    }

    #[test]
    fn segment_is_r_convex_for_all_r() {
        let e = CompactSet::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        for (r, n) in [(0.1, 257), (1.0, 257), (10.0, 513)] {
            // square bbox centered on (0.5, 0) with margin > 2r around [0,1]
            let half = 2.0 * r + 0.6;
            let g = GridSpec::square(
                Point::new(0.5 - half, -half),
                Point::new(0.5 + half, half),
                n,
            )
            .unwrap();
            let h = r_convex_hull(&e, g, r).unwrap();
            assert!(
                h.hausdorff_excess <= 2.0 * g.h,
                "r={r}: excess {} vs 2h {}",
                h.hausdorff_excess,
                2.0 * g.h
            );
        }
    }

    #[test]
    fn margin_enforced() {
        let e = tri_points();
        let g = grid(1.2, 65);
        assert!(matches!(
            r_convex_hull(&e, g, 1.0),
            Err(Error::InsufficientMargin { .. })
        ));
    }

    #[test]
    fn triangle_radius_of_convexity() {
        let e = tri_points();
        let g = GridSpec::square(Point::new(-3.5, -3.5), Point::new(4.5, 4.5), 513).unwrap();
        let r = radius_of_convexity(&e, g, 0.2, 1.5, 1e-3).unwrap();
        let expect = (2.0f64).sqrt() / 2.0;
        let tol = (2.0 * g.h).max(1e-3);
        assert!(
            (r.value - expect).abs() <= tol,
            "r0 {} vs {} (tol {tol})",
            r.value,
            expect
        );
        assert!(!r.at_upper_limit);
        assert!(r.bracket.0 <= r.value && r.value <= r.bracket.1);
    }

    #[test]
    fn not_convex_at_r_lo_detected() {
        let e = tri_points();
        let g = GridSpec::square(Point::new(-4.5, -4.5), Point::new(5.5, 5.5), 513).unwrap();
        // r_lo far above the true radius of convexity sqrt(2)/2
        assert!(matches!(
            radius_of_convexity(&e, g, 2.0, 2.2, 1e-3),
            Err(Error::NotRConvex { .. })
        ));
    }

    #[test]
    fn disk_set_fixed_point_and_upper_limit() {
        let disk = CompactSet::disks(vec![crate::geometry::Disk {
            center: Point::new(0.0, 0.0),
            radius: 1.0,
        }])
        .unwrap();
        let g = grid(7.2, 513);
        let r = radius_of_convexity(&disk, g, 0.5, 3.0, 1e-2).unwrap();
        assert!(r.at_upper_limit, "disks are r-convex for every r; got {r:?}");
        assert_eq!(r.value, 3.0);
    }
}
