//! Connectivity of the superlevel sets `Omega_t = {z : d(z) > t}`.

use serde::{Deserialize, Serialize};

use super::{CompactSet, CompactSetSpec};
use crate::error::{Error, Result};
use crate::grid::{GridField, GridSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentField {
    /// 0 where d <= t; components numbered from 1.
    pub labels: GridField<u32>,
    pub count: usize,
    /// Label of the component touching the grid frame (the unbounded one).
    pub unbounded_label: u32,
    pub t: f64,
}

impl ComponentField {
    /// Mask of the unbounded component.
    pub fn unbounded_mask(&self) -> GridField<bool> {
        let l = self.unbounded_label;
        self.labels.map(|&v| v == l)
    }
}

/// Flood-fill labeling (4-connectivity) of `{nodes : d > t}`.
///
/// The margin requirement `> 2t + 2h` keeps the whole grid frame inside
/// `Omega_t`, so the frame ring is connected and the unbounded component is
/// unique.
pub fn omega_t_components(e: &CompactSet, t: f64, grid: GridSpec) -> Result<ComponentField> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::BadParameter(format!("t must be nonnegative, got {t}")));
    }
    let (lo, hi) = e.bbox();
    let margin = grid.margin_around(lo, hi);
    if !(margin > 2.0 * t + 2.0 * grid.h) {
        return Err(Error::InsufficientMargin { required: 2.0 * t + 2.0 * grid.h, actual: margin });
    }
    let d = e.distance_field(grid);
    Ok(components_from_field(&d, t))
}

/// Labeling from a precomputed distance field; the caller owns the margin
/// guarantee that keeps the frame inside `Omega_t`.
pub(crate) fn components_from_field(d: &crate::grid::ScalarField, t: f64) -> ComponentField {
    let grid = d.spec;
    let open: Vec<bool> = d.values.iter().map(|&v| v > t).collect();
    let (nx, ny) = (grid.nx, grid.ny);
    let mut labels = vec![0u32; grid.len()];
    let mut count = 0u32;
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..grid.len() {
        if !open[start] || labels[start] != 0 {
            continue;
        }
        count += 1;
        labels[start] = count;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (ix, iy) = (i % nx, i / nx);
            let mut visit = |j: usize| {
                if open[j] && labels[j] == 0 {
                    labels[j] = count;
                    stack.push(j);
                }
            };
            if ix > 0 {
                visit(i - 1);
            }
            if ix + 1 < nx {
                visit(i + 1);
            }
            if iy > 0 {
                visit(i - nx);
            }
            if iy + 1 < ny {
                visit(i + nx);
            }
        }
    }
    // frame nodes are all in Omega_t thanks to the margin, so any corner works
    let unbounded_label = labels[0];
    debug_assert!(unbounded_label != 0, "frame node excluded despite margin check");
    ComponentField {
        labels: GridField { spec: grid, values: labels },
        count: count as usize,
        unbounded_label,
        t,
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct T0Estimate {
    /// Largest t found with a connected Omega_t (exact `delta/2` for finite sets).
    pub value: f64,
    /// Closed form `delta(E)/2` used (finite sets), as opposed to bisection.
    pub exact: bool,
    /// Bisection bracket (connected t, disconnected t); None when exact or
    /// when connectivity held all the way to t_max.
    pub bracket: Option<(f64, f64)>,
    /// The r/4 construction bound from the connectivity theorem, when the
    /// caller knows a radius of convexity to derive it from.
    pub quarter_r_bound: Option<f64>,
}

/// Largest t <= t_max keeping `Omega_t` connected.
///
/// Finite sets use the closed form `t1 = delta(E)/2`; everything else runs a
/// bisection over flood fills. `r0_hint`, when given, is a radius of
/// convexity used only to report the theoretical `r0/4` bound alongside.
pub fn t0_estimate(
    e: &CompactSet,
    grid: GridSpec,
    t_max: f64,
    r0_hint: Option<f64>,
) -> Result<T0Estimate> {
    if !(t_max > 0.0) {
        return Err(Error::BadParameter(format!("t_max must be positive, got {t_max}")));
    }
    let quarter_r_bound = r0_hint.map(|r| r / 4.0);
    if let CompactSetSpec::Finite { points } = e.spec() {
        if points.len() >= 2 {
            let delta = e.min_gap().expect("two or more points");
            return Ok(T0Estimate {
                value: delta / 2.0,
                exact: true,
                bracket: None,
                quarter_r_bound,
            });
        }
        // a single point never disconnects its complement
        return Ok(T0Estimate { value: t_max, exact: true, bracket: None, quarter_r_bound });
    }
    let connected = |t: f64| -> Result<bool> { Ok(omega_t_components(e, t, grid)?.count == 1) };
    if !connected(0.0)? {
        return Err(Error::DisconnectedDomain {
            components: omega_t_components(e, 0.0, grid)?.count,
        });
    }
    if connected(t_max)? {
        return Ok(T0Estimate { value: t_max, exact: false, bracket: None, quarter_r_bound });
    }
    let (mut ok, mut fail) = (0.0f64, t_max);
    // resolve down to one grid cell: finer t distinctions are below raster
    while fail - ok > grid.h {
        let mid = 0.5 * (ok + fail);
        if connected(mid)? {
            ok = mid;
        } else {
            fail = mid;
        }
    }
    Ok(T0Estimate { value: ok, exact: false, bracket: Some((ok, fail)), quarter_r_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn sq_grid(lo: f64, hi: f64, n: usize) -> GridSpec {
        GridSpec::square(Point::new(lo, lo), Point::new(hi, hi), n).unwrap()
    }

    #[test]
    fn stadium_complement_connected() {
        let e = CompactSet::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let g = GridSpec::square(Point::new(-1.0, -1.5), Point::new(2.0, 1.5), 301).unwrap();
        let c = omega_t_components(&e, 0.3, g).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(c.unbounded_label, 1);
    }

    #[test]
    fn circle_splits_plane() {
        let n = 256;
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                Point::new(th.cos(), th.sin())
            })
            .collect();
        let e = CompactSet::curve(pts, true).unwrap();
        let g = sq_grid(-2.0, 2.0, 257);
        let c = omega_t_components(&e, 0.1, g).unwrap();
        assert_eq!(c.count, 2);
        // the inner pocket is the bounded one
        let (cx, cy) = g.nearest_node(Point::new(0.0, 0.0));
        let center_label = *c.labels.get(cx, cy);
        assert_ne!(center_label, 0);
        assert_ne!(center_label, c.unbounded_label);
    }

    #[test]
    fn two_points_connected_below_half_gap() {
        let e = CompactSet::finite(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).unwrap();
        let g = GridSpec::square(Point::new(-1.5, -2.0), Point::new(2.5, 2.0), 257).unwrap();
        let c = omega_t_components(&e, 0.4, g).unwrap();
        assert_eq!(c.count, 1);
    }

    #[test]
    fn margin_violation_rejected() {
        let e = CompactSet::finite(vec![Point::new(0.0, 0.0)]).unwrap();
        let g = sq_grid(-1.0, 1.0, 65);
        assert!(matches!(
            omega_t_components(&e, 0.6, g),
            Err(Error::InsufficientMargin { .. })
        ));
    }

    #[test]
    fn finite_t1_closed_form() {
        let e = CompactSet::finite(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(5.0, 0.0),
        ])
        .unwrap();
        let g = sq_grid(-10.0, 15.0, 129);
        let t = t0_estimate(&e, g, 3.0, None).unwrap();
        assert_eq!(t.value, 0.5);
        assert!(t.exact);
    }

    #[test]
    fn segment_never_disconnects() {
        let e = CompactSet::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let g = GridSpec::square(Point::new(-4.5, -5.0), Point::new(5.5, 5.0), 257).unwrap();
        let t = t0_estimate(&e, g, 1.5, Some(10.0)).unwrap();
        assert_eq!(t.value, 1.5);
        assert_eq!(t.quarter_r_bound, Some(2.5));
    }

    // Two parallel segments at distance 0.2: the saddle of d at the corridor
    // ends sits exactly at the corridor's interior maximum 0.1, so Omega_t
    // never disconnects and the bisection honestly reports t_max.
    #[test]
    fn parallel_segments_never_pinch() {
        let g = GridSpec::square(Point::new(-1.5, -1.4), Point::new(2.5, 2.6), 401).unwrap();
        let seg1 = CompactSet::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let seg2 = CompactSet::segment(Point::new(0.0, 0.2), Point::new(1.0, 0.2)).unwrap();
        let field = crate::grid::GridField::from_fn(g, |p| {
            seg1.distance(p).min(seg2.distance(p)) <= g.h * 0.5
        });
        let e = CompactSet::mask(field).unwrap();
        for t in [0.04, 0.08, 0.12, 0.3] {
            let c = omega_t_components(&e, t, g).unwrap();
            assert_eq!(c.count, 1, "t={t}");
        }
        let t0 = t0_estimate(&e, g, 0.5, None).unwrap();
        assert_eq!(t0.value, 0.5);
    }

    // A chamber with a narrow neck genuinely pinches: the neck (half-width
    // 0.2) closes at t = 0.2 while the chamber keeps clearance up to 1.
    #[test]
    fn neck_pinches_at_half_width() {
        let e = CompactSet::curve(
            vec![
                Point::new(-0.2, 2.0),
                Point::new(-0.2, 1.0),
                Point::new(-1.0, 1.0),
                Point::new(-1.0, -1.0),
                Point::new(1.0, -1.0),
                Point::new(1.0, 1.0),
                Point::new(0.2, 1.0),
                Point::new(0.2, 2.0),
            ],
            false,
        )
        .unwrap();
        let g = GridSpec::square(Point::new(-2.8, -2.3), Point::new(2.8, 3.3), 561).unwrap();
        let t0 = t0_estimate(&e, g, 0.5, None).unwrap();
        assert!(
            (t0.value - 0.2).abs() <= 3.0 * g.h,
            "pinch at {} (expected ~0.2, h={})",
            t0.value,
            g.h
        );
        assert!(t0.bracket.is_some());
    }

    #[test]
    fn unbounded_mask_shrinks_with_t() {
        let e = CompactSet::finite(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).unwrap();
        let g = GridSpec::square(Point::new(-2.0, -2.5), Point::new(3.0, 2.5), 201).unwrap();
        let c1 = omega_t_components(&e, 0.2, g).unwrap().unbounded_mask();
        let c2 = omega_t_components(&e, 0.45, g).unwrap().unbounded_mask();
        for i in 0..g.len() {
            assert!(!c2.values[i] || c1.values[i], "mask at larger t must be a subset");
        }
    }
}
