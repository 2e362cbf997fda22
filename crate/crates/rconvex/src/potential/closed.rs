//! Exact Green's functions for disks and disk exteriors.

use crate::error::{Error, Result};
use crate::geometry::{Disk, Point};

/// Green's function of a disk with the pole at its center:
/// `G(center, v) = log(radius / |v - center|)`.
///
/// `v` on the boundary gives 0; `v` at the center returns `+inf` (the pole).
pub fn green_disk_center_pole(disk: &Disk, v: Point) -> Result<f64> {
    let r = v.dist(disk.center);
    if r > disk.radius * (1.0 + 1e-12) {
        return Err(Error::OutsideDomain(format!(
            "query at distance {r} from the center of a disk of radius {}",
            disk.radius
        )));
    }
    if r == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((disk.radius / r).ln())
}

/// Green's function of `{|z| > radius}` with pole at infinity:
/// `G(z, infinity) = log|z| - log(radius)`.
pub fn green_exterior_disk(radius: f64, z: Point) -> Result<f64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::BadParameter(format!("radius must be positive, got {radius}")));
    }
    let a = z.norm();
    if a < radius * (1.0 - 1e-12) {
        return Err(Error::OutsideDomain(format!("|z| = {a} is inside the disk of radius {radius}")));
    }
    Ok(a.ln() - radius.ln())
}
