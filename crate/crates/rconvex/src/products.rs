//! Analytic functions with prescribed zeros, built from Weierstrass prime
//! factors in the pulled-back variable `u_n(z) = (z_n - e_n)/(z - e_n)`.
//!
//! Given zeros `z_n` off the set and anchors `e_n` (nearest points of the
//! set), the product `f = prod W(u_n, p)` vanishes exactly on the zeros,
//! tends to 1 at infinity, and its growth is controlled by
//! `log|f| <= (1 + A_p) K / d^q` with `K = sum d^q(z_n)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CompactSet, Point};
use crate::grid::{GridSpec, MaskField, ScalarField};

/// Weierstrass prime factor `W(z, p) = (1 - z) exp(sum_{k<=p} z^k / k)`.
///
/// `W(0, p) = 1` and the only zero is at `z = 1` (simple).
pub fn weierstrass_factor(z: Complex64, p: usize) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 1..=p {
        zk *= z;
        s += zk / k as f64;
    }
    (Complex64::new(1.0, 0.0) - z) * s.exp()
}

/// `log |W(z, p)|` without forming the (possibly huge) factor itself.
///
/// Returns `-inf` at the factor's zero `z = 1`.
pub fn log_abs_weierstrass_factor(z: Complex64, p: usize) -> f64 {
    let mut re = 0.0;
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 1..=p {
        zk *= z;
        re += zk.re / k as f64;
    }
    (Complex64::new(1.0, 0.0) - z).norm().ln() + re
}

/// Growth constant `A_p = 3e (2 + log(p + 1))` controlling
/// `log |W(z, p)| <= A_p |z|^p` for `|z| >= 1/3`.
pub fn factor_bound_ap(p: usize) -> f64 {
    3.0 * std::f64::consts::E * (2.0 + ((p + 1) as f64).ln())
}

/// Factor order for a summability exponent `q >= 1`: the integer with
/// `q - 1 <= p < q`.
pub fn genus_for(q: f64) -> Result<usize> {
    if !q.is_finite() || q < 1.0 {
        return Err(Error::BadParameter(format!("exponent q must be >= 1, got {q}")));
    }
    Ok(if q.fract() == 0.0 { q as usize - 1 } else { q.floor() as usize })
}

/// Zeros with their anchors on the set and the summability data.
///
/// Multiplicities are encoded by repetition. `k_sum` is the finite sum
/// `sum d^q(z_n)` over the zeros actually listed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroData {
    pub zeros: Vec<Point>,
    pub anchors: Vec<Point>,
    pub q: f64,
    pub p: usize,
    pub k_sum: f64,
}

impl ZeroData {
    /// Builds the data for `zeros` against `e`, picking nearest-point
    /// anchors and the factor order from `q`.
    pub fn new(e: &CompactSet, zeros: Vec<Point>, q: f64) -> Result<Self> {
        let p = genus_for(q)?;
        let mut anchors = Vec::with_capacity(zeros.len());
        let mut k_sum = 0.0f64;
        for &z in &zeros {
            let d = e.distance(z);
            if d == 0.0 {
                return Err(Error::OnTheSet);
            }
            if !d.is_finite() {
                return Err(Error::BadParameter(format!(
                    "zero at ({}, {}) has non-finite distance",
                    z.x, z.y
                )));
            }
            anchors.push(e.nearest(z));
            k_sum += d.powf(q);
        }
        if !k_sum.is_finite() {
            return Err(Error::BadParameter("sum of d^q over the zeros overflows".into()));
        }
        Ok(ZeroData { zeros, anchors, q, p, k_sum })
    }

    /// Checks deserialized data against the set: anchor distances must
    /// realize `d(z_n)` within `rtol`, and `p`, `k_sum` must match `q`.
    pub fn validate(&self, e: &CompactSet, rtol: f64) -> Result<()> {
        if self.zeros.len() != self.anchors.len() {
            return Err(Error::BadParameter(format!(
                "{} zeros against {} anchors",
                self.zeros.len(),
                self.anchors.len()
            )));
        }
        if self.p != genus_for(self.q)? {
            return Err(Error::BadParameter(format!(
                "factor order {} inconsistent with exponent {}",
                self.p, self.q
            )));
        }
        let mut k = 0.0f64;
        for (&z, &a) in self.zeros.iter().zip(&self.anchors) {
            let d = e.distance(z);
            if d == 0.0 {
                return Err(Error::OnTheSet);
            }
            if (a.dist(z) - d).abs() > rtol * d.max(1.0) || e.distance(a) > rtol * d.max(1.0) {
                return Err(Error::BadParameter(format!(
                    "anchor ({}, {}) does not realize the distance of its zero",
                    a.x, a.y
                )));
            }
            k += d.powf(self.q);
        }
        if (k - self.k_sum).abs() > 1e-9 * k.max(1.0) {
            return Err(Error::BadParameter(format!(
                "stored k_sum {} disagrees with recomputed {k}",
                self.k_sum
            )));
        }
        Ok(())
    }
}

/// The built product `f(z) = prod W(u_n(z), p)`, evaluable pointwise.
///
/// Evaluation partitions the factors by `|u_n| <= 1` versus `|u_n| > 1`
/// and accumulates each group separately; `log_abs` sums factor
/// logarithms instead of multiplying, so large zero lists stay clear of
/// overflow.
#[derive(Debug, Clone)]
pub struct ZeroProduct {
    set: CompactSet,
    data: ZeroData,
}

impl ZeroProduct {
    pub fn data(&self) -> &ZeroData {
        &self.data
    }

    pub fn set(&self) -> &CompactSet {
        &self.set
    }

    /// Per-factor pulled-back variables `u_n(z)`; errors on the set and
    /// at anchor poles.
    fn pullbacks(&self, z: Point) -> Result<Vec<Complex64>> {
        if self.set.distance(z) == 0.0 {
            return Err(Error::OnTheSet);
        }
        let zc = Complex64::new(z.x, z.y);
        let mut us = Vec::with_capacity(self.data.zeros.len());
        for (&zn, &en) in self.data.zeros.iter().zip(&self.data.anchors) {
            let den = zc - Complex64::new(en.x, en.y);
            if den.norm() == 0.0 {
                return Err(Error::NumericalFailure(format!(
                    "factor variable has a pole at the anchor ({}, {})",
                    en.x, en.y
                )));
            }
            us.push((Complex64::new(zn.x, zn.y) - Complex64::new(en.x, en.y)) / den);
        }
        Ok(us)
    }

    /// `f(z)`, exact zero included: `u_n(z_n) = 1` makes the factor
    /// vanish identically in floating point.
    pub fn eval(&self, z: Point) -> Result<Complex64> {
        let us = self.pullbacks(z)?;
        let mut near = Complex64::new(1.0, 0.0);
        let mut far = Complex64::new(1.0, 0.0);
        for u in us {
            let w = weierstrass_factor(u, self.data.p);
            if u.norm() <= 1.0 {
                near *= w;
            } else {
                far *= w;
            }
        }
        Ok(near * far)
    }

    /// `log |f(z)|`; `-inf` exactly on the zero set.
    pub fn log_abs(&self, z: Point) -> Result<f64> {
        let us = self.pullbacks(z)?;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for u in us {
            let x = log_abs_weierstrass_factor(u, self.data.p);
            if x == f64::NEG_INFINITY {
                return Ok(f64::NEG_INFINITY);
            }
            let t = sum + x;
            comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
            sum = t;
        }
        Ok(sum + comp)
    }

    /// Samples `log |f|` on a grid for measure-theoretic postprocessing.
    /// Cells on the set or at poles are masked instead of erroring.
    pub fn sample_log_abs(&self, spec: GridSpec) -> (ScalarField, MaskField) {
        let mut values = ScalarField::fill(spec, 0.0);
        let mut mask = MaskField::fill(spec, false);
        for iy in 0..spec.ny {
            for ix in 0..spec.nx {
                match self.log_abs(spec.point(ix, iy)) {
                    Ok(v) if v.is_finite() => values.set(ix, iy, v),
                    _ => mask.set(ix, iy, true),
                }
            }
        }
        (values, mask)
    }
}

/// Builds the product of Weierstrass factors for the given zero data.
pub fn build_product(e: &CompactSet, data: ZeroData) -> Result<ZeroProduct> {
    data.validate(e, 1e-9)?;
    Ok(ZeroProduct { set: e.clone(), data })
}
