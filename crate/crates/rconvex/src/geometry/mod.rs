//! Compact planar sets and their metric queries.
//!
//! All higher modules reduce to two primitives defined here: the distance
//! `d(z) = dist(z, E)` and the nearest-point map onto `E`. Analytic variants
//! (points, segments, polylines, disk unions) answer both exactly; raster
//! masks answer through an exact integer distance transform with nearest-site
//! tracking, which makes node queries exact and off-node queries accurate to
//! about one cell.

mod ball;
mod connect;
mod curvature;
mod hull;
mod inscribed;

pub use ball::{uniform_ball_check, BallCheckReport};
pub(crate) use connect::components_from_field;
pub use connect::{omega_t_components, t0_estimate, ComponentField, T0Estimate};
pub use curvature::{
    circumradius, curvature_at, global_curvature_radius, Circumradius, GlobalCurvature,
};
pub use hull::{hull_as_set, r_convex_hull, radius_of_convexity, ConvexityRadius, HullResult};
pub use inscribed::{max_inscribed_disk, InscribedDisk};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, MaskField, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm2(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, twice the signed triangle area.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn c(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_c(z: Complex64) -> Self {
        Point::new(z.re, z.im)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

/// Serializable description of a compact set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CompactSetSpec {
    /// Finite point set.
    Finite { points: Vec<Point> },
    /// Closed segment from `a` to `b`.
    Segment { a: Point, b: Point },
    /// Polyline through `points`; `closed` adds the edge back to the start.
    Curve { points: Vec<Point>, closed: bool },
    /// Union of closed disks.
    Disks { disks: Vec<Disk> },
    /// Raster: the set of grid nodes where the mask is true.
    Mask { field: MaskField },
}

/// A validated compact set with (for masks) its distance-transform cache.
#[derive(Debug, Clone)]
pub struct CompactSet {
    spec: CompactSetSpec,
    mask_accel: Option<MaskAccel>,
}

#[derive(Debug, Clone)]
struct MaskAccel {
    dist: ScalarField,
    /// Node index of the nearest true cell, per node.
    feature: Vec<(u32, u32)>,
}

impl CompactSet {
    pub fn new(spec: CompactSetSpec) -> Result<Self> {
        match &spec {
            CompactSetSpec::Finite { points } => {
                if points.is_empty() {
                    return Err(Error::MalformedSet("finite set with no points".into()));
                }
                if points.iter().any(|p| !p.is_finite()) {
                    return Err(Error::MalformedSet("non-finite coordinates".into()));
                }
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        if points[i] == points[j] {
                            return Err(Error::MalformedSet(format!(
                                "duplicate points at indices {i}, {j}"
                            )));
                        }
                    }
                }
            }
            CompactSetSpec::Segment { a, b } => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::MalformedSet("non-finite coordinates".into()));
                }
                if a == b {
                    return Err(Error::MalformedSet("segment endpoints coincide".into()));
                }
            }
            CompactSetSpec::Curve { points, closed } => {
                let need = if *closed { 3 } else { 2 };
                if points.len() < need {
                    return Err(Error::MalformedSet(format!(
                        "curve needs at least {need} points, got {}",
                        points.len()
                    )));
                }
                if points.iter().any(|p| !p.is_finite()) {
                    return Err(Error::MalformedSet("non-finite coordinates".into()));
                }
                for w in points.windows(2) {
                    if w[0] == w[1] {
                        return Err(Error::MalformedSet("zero-length curve segment".into()));
                    }
                }
            }
            CompactSetSpec::Disks { disks } => {
                if disks.is_empty() {
                    return Err(Error::MalformedSet("disk union with no disks".into()));
                }
                if disks.iter().any(|d| !(d.radius > 0.0) || !d.center.is_finite()) {
                    return Err(Error::MalformedSet("disk with nonpositive radius".into()));
                }
            }
            CompactSetSpec::Mask { field } => {
                if field.count_true() == 0 {
                    return Err(Error::MalformedSet("mask with no true cells".into()));
                }
            }
        }
        let mask_accel = match &spec {
            CompactSetSpec::Mask { field } => Some(build_mask_accel(field)),
            _ => None,
        };
        Ok(CompactSet { spec, mask_accel })
    }

    pub fn finite(points: Vec<Point>) -> Result<Self> {
        Self::new(CompactSetSpec::Finite { points })
    }

    pub fn segment(a: Point, b: Point) -> Result<Self> {
        Self::new(CompactSetSpec::Segment { a, b })
    }

    pub fn curve(points: Vec<Point>, closed: bool) -> Result<Self> {
        Self::new(CompactSetSpec::Curve { points, closed })
    }

    pub fn disks(disks: Vec<Disk>) -> Result<Self> {
        Self::new(CompactSetSpec::Disks { disks })
    }

    pub fn mask(field: MaskField) -> Result<Self> {
        Self::new(CompactSetSpec::Mask { field })
    }

    pub fn spec(&self) -> &CompactSetSpec {
        &self.spec
    }

    /// Exact distance for analytic variants; transform-based for masks.
    pub fn distance(&self, z: Point) -> f64 {
        match &self.spec {
            CompactSetSpec::Finite { points } => {
                points.iter().map(|p| p.dist(z)).fold(f64::INFINITY, f64::min)
            }
            CompactSetSpec::Segment { a, b } => dist_point_segment(z, *a, *b),
            CompactSetSpec::Curve { points, closed } => {
                curve_edges(points, *closed)
                    .map(|(a, b)| dist_point_segment(z, a, b))
                    .fold(f64::INFINITY, f64::min)
            }
            CompactSetSpec::Disks { disks } => disks
                .iter()
                .map(|d| (z.dist(d.center) - d.radius).max(0.0))
                .fold(f64::INFINITY, f64::min),
            CompactSetSpec::Mask { .. } => self.nearest(z).dist(z),
        }
    }

    /// A point of `E` at (approximately, for masks) minimal distance from `z`.
    pub fn nearest(&self, z: Point) -> Point {
        match &self.spec {
            CompactSetSpec::Finite { points } => {
                *points
                    .iter()
                    .min_by(|p, q| p.dist(z).total_cmp(&q.dist(z)))
                    .expect("validated nonempty")
            }
            CompactSetSpec::Segment { a, b } => nearest_on_segment(z, *a, *b),
            CompactSetSpec::Curve { points, closed } => {
                let mut best = points[0];
                let mut best_d = f64::INFINITY;
                for (a, b) in curve_edges(points, *closed) {
                    let p = nearest_on_segment(z, a, b);
                    let d = p.dist(z);
                    if d < best_d {
                        best_d = d;
                        best = p;
                    }
                }
                best
            }
            CompactSetSpec::Disks { disks } => {
                let mut best = disks[0].center;
                let mut best_d = f64::INFINITY;
                for d in disks {
                    let r = z.dist(d.center);
                    let p = if r <= d.radius {
                        z
                    } else if r == 0.0 {
                        d.center + Point::new(d.radius, 0.0)
                    } else {
                        d.center + (z - d.center) * (d.radius / r)
                    };
                    let dd = p.dist(z);
                    if dd < best_d {
                        best_d = dd;
                        best = p;
                    }
                }
                best
            }
            CompactSetSpec::Mask { field } => {
                let accel = self.mask_accel.as_ref().expect("mask accel built at construction");
                let spec = field.spec;
                let (cx, cy) = spec.cell_floor(z);
                let mut best = spec.point(0, 0);
                let mut best_d = f64::INFINITY;
                for (ix, iy) in [(cx, cy), (cx + 1, cy), (cx, cy + 1), (cx + 1, cy + 1)] {
                    let (fx, fy) = accel.feature[spec.idx(ix, iy)];
                    let site = spec.point(fx as usize, fy as usize);
                    let d = site.dist(z);
                    if d < best_d {
                        best_d = d;
                        best = site;
                    }
                }
                best
            }
        }
    }

    /// Axis-aligned bounding box.
    pub fn bbox(&self) -> (Point, Point) {
        let pts: Vec<Point> = match &self.spec {
            CompactSetSpec::Finite { points } => points.clone(),
            CompactSetSpec::Segment { a, b } => vec![*a, *b],
            CompactSetSpec::Curve { points, .. } => points.clone(),
            CompactSetSpec::Disks { disks } => disks
                .iter()
                .flat_map(|d| {
                    [
                        d.center + Point::new(d.radius, d.radius),
                        d.center - Point::new(d.radius, d.radius),
                    ]
                })
                .collect(),
            CompactSetSpec::Mask { field } => {
                let (lo, hi) = field.true_bbox().expect("validated nonempty");
                return (lo, hi);
            }
        };
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Largest coordinate norm over the set, `S = max |z| for z in E`.
    /// Exact: the norm is convex, so segments and polylines peak at vertices.
    pub fn max_norm(&self) -> f64 {
        match &self.spec {
            CompactSetSpec::Finite { points } | CompactSetSpec::Curve { points, .. } => {
                points.iter().map(|p| p.norm()).fold(0.0, f64::max)
            }
            CompactSetSpec::Segment { a, b } => a.norm().max(b.norm()),
            CompactSetSpec::Disks { disks } => {
                disks.iter().map(|d| d.center.norm() + d.radius).fold(0.0, f64::max)
            }
            CompactSetSpec::Mask { field } => field
                .iter()
                .filter(|(_, _, _, &b)| b)
                .map(|(_, _, p, _)| p.norm())
                .fold(0.0, f64::max),
        }
    }

    /// Minimal pairwise distance for finite sets.
    pub fn min_gap(&self) -> Option<f64> {
        match &self.spec {
            CompactSetSpec::Finite { points } if points.len() >= 2 => {
                let mut best = f64::INFINITY;
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        best = best.min(points[i].dist(points[j]));
                    }
                }
                Some(best)
            }
            _ => None,
        }
    }

    /// Distance field sampled on grid nodes. Exact per node for analytic
    /// variants; for masks this is the node-exact distance transform.
    pub fn distance_field(&self, spec: GridSpec) -> ScalarField {
        if let (CompactSetSpec::Mask { field }, Some(accel)) = (&self.spec, &self.mask_accel) {
            if field.spec == spec {
                return accel.dist.clone();
            }
        }
        let mut values = Vec::with_capacity(spec.len());
        for iy in 0..spec.ny {
            for ix in 0..spec.nx {
                values.push(self.distance(spec.point(ix, iy)));
            }
        }
        ScalarField { spec, values }
    }
}

fn curve_edges<'a>(
    points: &'a [Point],
    closed: bool,
) -> impl Iterator<Item = (Point, Point)> + 'a {
    let n = points.len();
    let wrap = if closed && points[0] != points[n - 1] { 1 } else { 0 };
    (0..n - 1 + wrap).map(move |i| (points[i], points[(i + 1) % n]))
}

pub(crate) fn dist_point_segment(z: Point, a: Point, b: Point) -> f64 {
    nearest_on_segment(z, a, b).dist(z)
}

pub(crate) fn nearest_on_segment(z: Point, a: Point, b: Point) -> Point {
    let ab = b - a;
    let t = (z - a).dot(ab) / ab.norm2();
    let t = t.clamp(0.0, 1.0);
    a + ab * t
}

/// Node-exact Euclidean distance field to the true cells of a mask.
/// All-infinite when the mask has no true cell.
pub(crate) fn distance_transform(field: &MaskField) -> ScalarField {
    build_mask_accel(field).dist
}

/// Exact squared Euclidean distance transform with nearest-site tracking
/// (per-column scan, then per-row lower envelope of parabolas).
fn build_mask_accel(field: &MaskField) -> MaskAccel {
    let spec = field.spec;
    let (nx, ny) = (spec.nx, spec.ny);
    const NONE: u32 = u32::MAX;

    // Column pass: nearest true row per (ix, iy), in index units.
    let mut col_site = vec![NONE; nx * ny];
    for ix in 0..nx {
        let mut last: Option<usize> = None;
        for iy in 0..ny {
            if *field.get(ix, iy) {
                last = Some(iy);
            }
            if let Some(r) = last {
                col_site[spec.idx(ix, iy)] = r as u32;
            }
        }
        last = None;
        for iy in (0..ny).rev() {
            if *field.get(ix, iy) {
                last = Some(iy);
            }
            if let Some(r) = last {
                let i = spec.idx(ix, iy);
                let cur = col_site[i];
                if cur == NONE
                    || (r as i64 - iy as i64).abs() < (cur as i64 - iy as i64).abs()
                {
                    col_site[i] = r as u32;
                }
            }
        }
    }

    // Row pass: 1D transform of f(x') = (vertical distance)^2 with argmin.
    let mut dist = vec![f64::INFINITY; nx * ny];
    let mut feature = vec![(NONE, NONE); nx * ny];
    let mut f = vec![f64::INFINITY; nx];
    let mut v = vec![0usize; nx]; // parabola apex x-indices
    let mut zb = vec![0f64; nx + 1]; // envelope breakpoints
    for iy in 0..ny {
        for ix in 0..nx {
            let cs = col_site[spec.idx(ix, iy)];
            f[ix] = if cs == NONE {
                f64::INFINITY
            } else {
                let dy = cs as f64 - iy as f64;
                dy * dy
            };
        }
        let mut k = 0usize;
        let mut started = false;
        for q in 0..nx {
            if !f[q].is_finite() {
                continue;
            }
            if !started {
                v[0] = q;
                zb[0] = f64::NEG_INFINITY;
                zb[1] = f64::INFINITY;
                started = true;
                continue;
            }
            let mut s;
            loop {
                let p = v[k];
                s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64))
                    / (2.0 * q as f64 - 2.0 * p as f64);
                if s <= zb[k] {
                    if k == 0 {
                        // q's parabola dominates everywhere so far
                        break;
                    }
                    k -= 1;
                } else {
                    k += 1;
                    break;
                }
            }
            v[k] = q;
            zb[k] = s;
            zb[k + 1] = f64::INFINITY;
        }
        if !started {
            continue; // empty row: distances stay infinite (mask is nonempty, other rows fill)
        }
        let mut k2 = 0usize;
        for ix in 0..nx {
            while zb[k2 + 1] < ix as f64 {
                k2 += 1;
            }
            let p = v[k2];
            let dx = ix as f64 - p as f64;
            let i = spec.idx(ix, iy);
            dist[i] = dx * dx + f[p];
            feature[i] = (p as u32, col_site[spec.idx(p, iy)]);
        }
    }

    let h = spec.h;
    let values = dist.iter().map(|d2| h * d2.sqrt()).collect();
    MaskAccel { dist: ScalarField { spec, values }, feature }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridField;

    fn seg01() -> CompactSet {
        CompactSet::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn segment_distances() {
        let e = seg01();
        assert!((e.distance(Point::new(0.5, 0.25)) - 0.25).abs() < 1e-15);
        assert!((e.distance(Point::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((e.distance(Point::new(-3.0, -4.0)) - 5.0).abs() < 1e-15);
        assert_eq!(e.distance(Point::new(0.7, 0.0)), 0.0);
    }

    #[test]
    fn disk_union_distance_zero_inside() {
        let e = CompactSet::disks(vec![Disk { center: Point::new(0.0, 0.0), radius: 1.0 }])
            .unwrap();
        assert!((e.distance(Point::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert_eq!(e.distance(Point::new(0.3, -0.2)), 0.0);
        let n = e.nearest(Point::new(2.0, 0.0));
        assert!((n.x - 1.0).abs() < 1e-15 && n.y.abs() < 1e-15);
    }

    #[test]
    fn finite_validation() {
        assert!(CompactSet::finite(vec![]).is_err());
        let dup = vec![Point::new(1.0, 2.0), Point::new(1.0, 2.0)];
        assert!(CompactSet::finite(dup).is_err());
    }

    #[test]
    fn closed_curve_wraps() {
        // unit square boundary
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let e = CompactSet::curve(pts, true).unwrap();
        // nearest to (-0.5, 0.5) is the left edge, present only via the wrap edge
        assert!((e.distance(Point::new(-0.5, 0.5)) - 0.5).abs() < 1e-15);
        assert!((e.distance(Point::new(0.5, 0.5)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mask_distance_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let spec = GridSpec::new(Point::new(0.0, 0.0), Point::new(1.0, 1.0), 33, 33).unwrap();
        let field = GridField::from_fn(spec, |_| rng.gen_bool(0.07));
        if field.count_true() == 0 {
            panic!("fixture needs at least one site");
        }
        let sites: Vec<Point> =
            field.iter().filter(|(_, _, _, &b)| b).map(|(_, _, p, _)| p).collect();
        let e = CompactSet::mask(field).unwrap();
        // node queries must be exact
        for iy in 0..spec.ny {
            for ix in 0..spec.nx {
                let z = spec.point(ix, iy);
                let exact = sites.iter().map(|s| s.dist(z)).fold(f64::INFINITY, f64::min);
                assert!(
                    (e.distance(z) - exact).abs() < 1e-12,
                    "node ({ix},{iy}): {} vs {}",
                    e.distance(z),
                    exact
                );
            }
        }
        // off-node queries within a cell diagonal
        for _ in 0..200 {
            let z = Point::new(rng.gen::<f64>(), rng.gen::<f64>());
            let exact = sites.iter().map(|s| s.dist(z)).fold(f64::INFINITY, f64::min);
            assert!((e.distance(z) - exact).abs() <= spec.h * 1.5);
        }
    }

    #[test]
    fn mask_of_unit_disk() {
        let spec =
            GridSpec::new(Point::new(-1.2, -1.2), Point::new(1.2, 1.2), 241, 241).unwrap();
        let field = GridField::from_fn(spec, |p| p.norm() <= 1.0);
        let e = CompactSet::mask(field).unwrap();
        // h = 0.01; raster distance within 2h of the continuum value
        assert!((e.distance(Point::new(2.0, 0.0)) - 1.0).abs() <= 0.02);
    }
}
