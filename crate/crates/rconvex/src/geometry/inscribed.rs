//! Largest disk through a point avoiding the set:
//! `rho_z = sup{r : z in B(x, r) subset complement(E)}`.
//!
//! For a fixed center x the best radius is d(x) = dist(x, E), feasible when
//! |x-z| <= d(x). Along any ray x = z + s*w the gap g(s) = d(z+s*w) - s is
//! non-increasing (d is 1-Lipschitz), so each direction has a feasible
//! segment [0, s*(w)] with s* located by bisection, and every feasible center
//! lies on the segment of its own direction. The search scans directions,
//! maximizes d on each feasible segment, and polishes the winner with a
//! compass search restricted to feasible candidates.

use serde::{Deserialize, Serialize};

use super::{CompactSet, Disk, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InscribedDisk {
    Disk(Disk),
    /// Feasible disks exceed the requested radius cap.
    Unbounded,
}

/// Relative feasibility slack: accept |x-z| <= d(x)(1 + this).
const FEAS_RTOL: f64 = 1e-9;
const N_DIRECTIONS: usize = 256;
const SEGMENT_SAMPLES: usize = 48;

pub fn max_inscribed_disk(z: Point, e: &CompactSet, r_cap: f64) -> Result<InscribedDisk> {
    if !(r_cap > 0.0) || !r_cap.is_finite() {
        return Err(Error::BadParameter(format!("r_cap must be positive, got {r_cap}")));
    }
    let (lo, hi) = e.bbox();
    let scale = (hi - lo).norm().max(z.dist(lo)).max(z.dist(hi)).max(1.0);
    let dz = e.distance(z);
    if dz <= 1e-12 * scale {
        return Err(Error::OnTheSet);
    }
    let feasible = |x: Point| -> bool {
        if !x.is_finite() {
            return false;
        }
        let d = e.distance(x);
        d > 0.0 && d.is_finite() && x.dist(z) <= d * (1.0 + FEAS_RTOL)
    };

    // Once s exceeds this while still feasible, d >= s - scale is already
    // past r_cap and the direction certifies an unbounded disk.
    let s_escape = r_cap + 2.0 * scale;

    let mut best_d = dz;
    let mut best_x = z;
    for k in 0..N_DIRECTIONS {
        let th = 2.0 * std::f64::consts::PI * k as f64 / N_DIRECTIONS as f64;
        let w = Point::new(th.cos(), th.sin());
        let gap = |s: f64| e.distance(z + w * s) - s;

        // expand while feasible
        let mut s_ok = 0.0f64;
        let mut s_bad = None;
        let mut s = dz.max(1e-3 * scale);
        loop {
            if gap(s) >= 0.0 {
                s_ok = s;
                if s >= s_escape {
                    break;
                }
                s *= 2.0;
            } else {
                s_bad = Some(s);
                break;
            }
        }
        if s_bad.is_none() {
            let x = z + w * s_ok;
            if e.distance(x) >= r_cap && feasible(x) {
                return Ok(InscribedDisk::Unbounded);
            }
        }
        let s_star = match s_bad {
            Some(mut bad) => {
                // bisect the non-increasing gap to the feasibility edge
                let mut ok = s_ok;
                for _ in 0..60 {
                    let mid = 0.5 * (ok + bad);
                    if gap(mid) >= 0.0 {
                        ok = mid;
                    } else {
                        bad = mid;
                    }
                    if bad - ok <= 1e-12 * scale.max(bad) {
                        break;
                    }
                }
                ok
            }
            None => s_ok,
        };
        // d is not unimodal along the segment; scan it
        for i in 0..=SEGMENT_SAMPLES {
            let s = s_star * i as f64 / SEGMENT_SAMPLES as f64;
            let x = z + w * s;
            let d = e.distance(x);
            if d > best_d && feasible(x) {
                best_d = d;
                best_x = x;
                if d >= r_cap {
                    return Ok(InscribedDisk::Unbounded);
                }
            }
        }
    }

    // compass polish over feasible candidates only
    let mut step = 0.1 * scale;
    let step_tol = 1e-9 * scale;
    let dirs: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (0.7071067811865476, 0.7071067811865476),
        (0.7071067811865476, -0.7071067811865476),
        (-0.7071067811865476, 0.7071067811865476),
        (-0.7071067811865476, -0.7071067811865476),
    ];
    while step > step_tol {
        let mut improved = false;
        for &(dx, dy) in &dirs {
            let cand = best_x + Point::new(dx * step, dy * step);
            let d = e.distance(cand);
            if d > best_d && feasible(cand) {
                best_d = d;
                best_x = cand;
                improved = true;
                if d >= r_cap {
                    return Ok(InscribedDisk::Unbounded);
                }
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    Ok(InscribedDisk::Disk(Disk { center: best_x, radius: best_d }))
}
