//! Circumradius of point triples and curvature quantities built on it.
//!
//! The circumradius is computed through
//! `R^{-2} = 4 Im^2((z1-z2) conj(z2-z3)) / |(z1-z2)(z1-z3)(z2-z3)|^2`,
//! which degrades gracefully: the numerator vanishing identifies collinear
//! triples, for which the circumscribed "circle" is a line (infinite radius).

use serde::{Deserialize, Serialize};

use super::{Point, Triangle};
use crate::error::{Error, Result};

/// Collinearity threshold relative to the product of side lengths.
const COLLINEAR_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Circumradius {
    Finite(f64),
    /// Collinear vertices: the triple lies on a line.
    Degenerate,
}

impl Circumradius {
    pub fn finite(self) -> Option<f64> {
        match self {
            Circumradius::Finite(r) => Some(r),
            Circumradius::Degenerate => None,
        }
    }
}

/// Circumradius of a triangle. Coincident vertices are an error; collinear
/// (but distinct) vertices report [`Circumradius::Degenerate`].
pub fn circumradius(t: &Triangle) -> Result<Circumradius> {
    let u = t.a - t.b;
    let v = t.b - t.c;
    let w = t.a - t.c;
    let (lu, lv, lw) = (u.norm(), v.norm(), w.norm());
    if lu == 0.0 || lv == 0.0 || lw == 0.0 {
        return Err(Error::CoincidentVertices);
    }
    // Im((z1-z2) * conj(z2-z3)) = cross(v, u)
    let im = u.x * (-v.y) + u.y * v.x;
    let side_product = lu * lv * lw;
    if im.abs() <= COLLINEAR_RTOL * side_product {
        return Ok(Circumradius::Degenerate);
    }
    Ok(Circumradius::Finite(side_product / (2.0 * im.abs())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalCurvature {
    /// Infimum of circumradii over sample triples; infinite when every triple
    /// is degenerate (collinear samples).
    pub radius: f64,
    pub witness: Option<Triangle>,
}

/// Exhaustive minimum circumradius over all triples of `samples`.
///
/// Triples with coincident points are skipped (they carry no circle), and a
/// triple whose longest side already forces `R >= best` is pruned via
/// `R >= max_side / 2`.
pub fn global_curvature_radius(samples: &[Point]) -> Result<GlobalCurvature> {
    if samples.iter().any(|p| !p.is_finite()) {
        return Err(Error::MalformedSet("non-finite sample".into()));
    }
    let n = samples.len();
    let mut best = f64::INFINITY;
    let mut witness = None;
    for i in 0..n {
        for j in i + 1..n {
            let dij = samples[i].dist(samples[j]);
            if dij == 0.0 || dij >= 2.0 * best {
                continue;
            }
            for k in j + 1..n {
                let dik = samples[i].dist(samples[k]);
                let djk = samples[j].dist(samples[k]);
                if dik == 0.0 || djk == 0.0 || dik >= 2.0 * best || djk >= 2.0 * best {
                    continue;
                }
                let t = Triangle { a: samples[i], b: samples[j], c: samples[k] };
                if let Circumradius::Finite(r) = circumradius(&t)? {
                    if r < best {
                        best = r;
                        witness = Some(t);
                    }
                }
            }
        }
    }
    Ok(GlobalCurvature { radius: best, witness })
}

/// Finite-difference curvature of a sampled curve at sample `i`, treating the
/// sample index as the curve parameter (curvature is parametrization-free).
///
/// Uses five-point central stencils, so the index needs two neighbors on each
/// side; closed curves wrap around.
pub fn curvature_at(points: &[Point], closed: bool, i: usize) -> Result<f64> {
    let n = points.len();
    if n < 5 {
        return Err(Error::BadParameter(format!("need at least 5 samples, got {n}")));
    }
    if i >= n {
        return Err(Error::BadParameter(format!("index {i} out of range 0..{n}")));
    }
    if !closed && (i < 2 || i + 2 >= n) {
        return Err(Error::BadParameter(format!(
            "index {i} lacks two neighbors on each side of an open curve"
        )));
    }
    let at = |off: i64| -> Point {
        let j = i as i64 + off;
        let j = if closed { j.rem_euclid(n as i64) } else { j };
        points[j as usize]
    };
    let (m2, m1, p1, p2) = (at(-2), at(-1), at(1), at(2));
    let d1 = (m2 - p2 + (p1 - m1) * 8.0) * (1.0 / 12.0);
    let d2 = (points[i] * -30.0 + (p1 + m1) * 16.0 - (p2 + m2)) * (1.0 / 12.0);
    let speed2 = d1.norm2();
    if speed2 == 0.0 {
        return Err(Error::NumericalFailure("zero-speed parametrization".into()));
    }
    Ok(d1.cross(d2).abs() / speed2.powf(1.5))
}
