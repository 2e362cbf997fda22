//! Uniform ball condition for closed Jordan polylines: at every tested
//! boundary sample, a disk of radius r tangent from each side must avoid the
//! curve. Equivalent to the two-sided rolling-ball property of BC-curves.

use serde::{Deserialize, Serialize};

use super::{CompactSet, CompactSetSpec, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallSide {
    Inner,
    Outer,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallCheckReport {
    pub pass: bool,
    pub r: f64,
    /// Sample index with the smallest clearance margin.
    pub worst_index: usize,
    pub worst_point: Point,
    pub worst_side: BallSide,
    /// `dist(center, curve) - r` at the worst sample; pass means every margin
    /// is `>= -tolerance`.
    pub worst_margin: f64,
    pub tolerance: f64,
}

/// Tests the uniform ball condition of radius `r` at the given sample
/// indices (all samples when `indices` is empty).
pub fn uniform_ball_check(
    e: &CompactSet,
    r: f64,
    indices: &[usize],
) -> Result<BallCheckReport> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::BadParameter(format!("ball radius must be positive, got {r}")));
    }
    let points = match e.spec() {
        CompactSetSpec::Curve { points, closed: true } => points,
        _ => {
            return Err(Error::MalformedSet(
                "uniform ball check needs a closed sampled curve".into(),
            ))
        }
    };
    let n = points.len();
    if n < 4 {
        return Err(Error::MalformedSet("closed curve needs at least 4 samples".into()));
    }
    check_simple(points)?;

    // orientation from the signed area; positive = counterclockwise, whose
    // left normal points inward
    let mut area2 = 0.0;
    for i in 0..n {
        area2 += points[i].cross(points[(i + 1) % n]);
    }
    if area2.abs() < 1e-12 {
        return Err(Error::MalformedSet("degenerate curve (zero enclosed area)".into()));
    }
    let ccw = area2 > 0.0;

    let max_edge = (0..n)
        .map(|i| points[i].dist(points[(i + 1) % n]))
        .fold(0.0f64, f64::max);
    let tolerance = 0.5 * max_edge;

    let all: Vec<usize>;
    let indices = if indices.is_empty() {
        all = (0..n).collect();
        &all
    } else {
        indices
    };

    let mut worst: Option<(f64, usize, BallSide)> = None;
    for &i in indices {
        if i >= n {
            return Err(Error::BadParameter(format!("sample index {i} out of range 0..{n}")));
        }
        let prev = points[(i + n - 1) % n];
        let next = points[(i + 1) % n];
        let tangent = next - prev;
        let tl = tangent.norm();
        if tl == 0.0 {
            return Err(Error::MalformedSet("coincident neighbor samples".into()));
        }
        let left = Point::new(-tangent.y / tl, tangent.x / tl);
        let inward = if ccw { left } else { -left };
        for (side, dir) in [(BallSide::Inner, inward), (BallSide::Outer, -inward)] {
            let center = points[i] + dir * r;
            let margin = e.distance(center) - r;
            if worst.map_or(true, |(m, _, _)| margin < m) {
                worst = Some((margin, i, side));
            }
        }
    }
    let (worst_margin, worst_index, worst_side) = worst.expect("nonempty index list");
    Ok(BallCheckReport {
        pass: worst_margin >= -tolerance,
        r,
        worst_index,
        worst_point: points[worst_index],
        worst_side,
        worst_margin,
        tolerance,
    })
}

/// O(n^2) proper-intersection test between non-adjacent edges.
fn check_simple(points: &[Point]) -> Result<()> {
    let n = points.len();
    let edge = |i: usize| (points[i], points[(i + 1) % n]);
    for i in 0..n {
        for j in i + 1..n {
            // skip adjacent edges (they share an endpoint)
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            if segments_cross(a, b, c, d) {
                return Err(Error::SelfIntersecting { seg_a: i, seg_b: j });
            }
        }
    }
    Ok(())
}

fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o = |p: Point, q: Point, r: Point| (q - p).cross(r - p);
    let (o1, o2) = (o(a, b, c), o(a, b, d));
    let (o3, o4) = (o(c, d, a), o(c, d, b));
    (o1 * o2 < 0.0) && (o3 * o4 < 0.0)
}
