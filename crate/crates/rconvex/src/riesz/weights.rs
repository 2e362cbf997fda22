//! Weight pairs (psi, phi) with a finiteness certificate.
//!
//! A weight pair couples a singular decreasing majorant `psi` with an
//! increasing integrand weight `phi`. Whether the pair is usable for a
//! Blaschke-type bound hinges on the improper integral
//!
//! ```text
//! I = int_0^1 phi1'(t) psi(t/5) dt + int_1^inf phi'(t) psi(t/3) dt,
//! ```
//!
//! with `phi1(x) = phi(x)/x`. [`Condition311`] records the verdict together
//! with both integral values when they are finite. Built-in weights are
//! registered by name so configuration files can select them at runtime.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight rule: the pair of functions and their derivatives.
///
/// Implementations must keep `psi` positive and decreasing with
/// `psi(0+) = inf`, `phi` positive and increasing with `phi(0) = 0` for
/// built-ins, and `phi(x)/x` nondecreasing on `(0, x_star)`.
pub trait Weight: Send + Sync {
    fn name(&self) -> &'static str;
    fn q(&self) -> f64;
    fn eps(&self) -> f64;
    /// Singular majorant weight, `t > 0`.
    fn psi(&self, t: f64) -> f64;
    /// Integrand weight, `x >= 0`.
    fn phi(&self, x: f64) -> f64;
    /// Derivative of `phi` (one-sided at branch seams).
    fn dphi(&self, x: f64) -> f64;
    /// `phi(x)/x`, extended by continuity at 0.
    fn phi1(&self, x: f64) -> f64;
    /// Derivative of `phi1`.
    fn dphi1(&self, x: f64) -> f64;
    /// Largest threshold up to which `phi1` is nondecreasing
    /// (`f64::INFINITY` when it never turns around, 0 to skip the check).
    fn x_star(&self) -> f64;
}

/// Verdict of the defining improper integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Condition311 {
    /// Both halves converge; the values are recorded.
    Finite { near: f64, far: f64 },
    /// At least one half diverges.
    Infinite,
    /// Tail extrapolation and direct refinement disagree by more than 10%.
    Unknown,
}

/// A validated weight rule plus its finiteness certificate.
pub struct WeightPair {
    rule: Box<dyn Weight>,
    condition311: Condition311,
}

impl WeightPair {
    /// Validates the rule (positivity, monotonicity, `phi1` nondecreasing up
    /// to the declared threshold) and computes the certificate.
    pub fn from_rule(rule: Box<dyn Weight>) -> Result<Self> {
        validate_rule(rule.as_ref())?;
        let condition311 = condition311_of(rule.as_ref());
        Ok(WeightPair { rule, condition311 })
    }

    pub fn rule(&self) -> &dyn Weight {
        self.rule.as_ref()
    }

    pub fn condition311(&self) -> Condition311 {
        self.condition311
    }

    pub fn name(&self) -> &'static str {
        self.rule.name()
    }

    pub fn q(&self) -> f64 {
        self.rule.q()
    }

    pub fn eps(&self) -> f64 {
        self.rule.eps()
    }

    pub fn psi(&self, t: f64) -> f64 {
        self.rule.psi(t)
    }

    pub fn phi(&self, x: f64) -> f64 {
        self.rule.phi(x)
    }

    pub fn dphi(&self, x: f64) -> f64 {
        self.rule.dphi(x)
    }

    pub fn phi1(&self, x: f64) -> f64 {
        self.rule.phi1(x)
    }

    pub fn dphi1(&self, x: f64) -> f64 {
        self.rule.dphi1(x)
    }

    pub fn x_star(&self) -> f64 {
        self.rule.x_star()
    }
}

impl fmt::Debug for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightPair")
            .field("name", &self.name())
            .field("q", &self.q())
            .field("eps", &self.eps())
            .field("condition311", &self.condition311)
            .finish()
    }
}

/// Names accepted by [`weight_by_name`].
pub const WEIGHT_NAMES: &[&str] = &["corollary1", "t3", "power"];

/// Serializable selector for a weight pair, as it appears in config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub name: String,
    pub q: f64,
    #[serde(default)]
    pub eps: f64,
}

impl WeightSpec {
    pub fn build(&self) -> Result<WeightPair> {
        weight_by_name(&self.name, self.q, self.eps)
    }
}

/// Builds a registered weight by name.
///
/// For `"power"` the exponent is `q` and `eps` must be zero.
pub fn weight_by_name(name: &str, q: f64, eps: f64) -> Result<WeightPair> {
    match name {
        "corollary1" => weight_corollary1(q, eps),
        "t3" => weight_t3(q, eps),
        "power" => {
            if eps != 0.0 {
                return Err(Error::BadParameter(format!(
                    "power weight takes eps = 0, got {eps}"
                )));
            }
            weight_power(q)
        }
        other => Err(Error::BadParameter(format!(
            "unknown weight '{other}'; expected one of {WEIGHT_NAMES:?}"
        ))),
    }
}

/// `psi(t) = t^-q` with `phi(x) = x^(q+1+eps)` for `x <= 1`, `x^(q-eps)`
/// beyond. The extra `+1` in the near-field exponent buys integrability of
/// `phi1'(t) psi(t/5)` at 0 for every `eps > 0`; at `eps = 0` the integral
/// diverges and the certificate says so.
pub fn weight_corollary1(q: f64, eps: f64) -> Result<WeightPair> {
    check_q_eps(q, eps)?;
    WeightPair::from_rule(Box::new(Corollary1Weight { q, eps }))
}

/// `psi(t) = t^-q` with `phi(x) = x^(q+eps)` for `x <= 1`, `x^(q-eps)`
/// beyond. Requires `q + eps >= 1` so that `phi(x)/x` is nondecreasing
/// near 0.
pub fn weight_t3(q: f64, eps: f64) -> Result<WeightPair> {
    check_q_eps(q, eps)?;
    if q + eps < 1.0 {
        return Err(Error::BadParameter(format!(
            "phi(x)/x must be nondecreasing near 0: need q + eps >= 1, got {}",
            q + eps
        )));
    }
    WeightPair::from_rule(Box::new(T3Weight { q, eps }))
}

/// Pure power pair `phi(x) = x^p`, `psi(t) = t^-p`, `p >= 1`.
pub fn weight_power(p: f64) -> Result<WeightPair> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::BadParameter(format!("power weight needs p >= 1, got {p}")));
    }
    WeightPair::from_rule(Box::new(PowerWeight { p }))
}

fn check_q_eps(q: f64, eps: f64) -> Result<()> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::BadParameter(format!("weight exponent q must be positive, got {q}")));
    }
    if !eps.is_finite() || eps < 0.0 {
        return Err(Error::BadParameter(format!("weight eps must be >= 0, got {eps}")));
    }
    if eps >= q {
        return Err(Error::BadParameter(format!(
            "far-field exponent q - eps must stay positive: q = {q}, eps = {eps}"
        )));
    }
    Ok(())
}

struct Corollary1Weight {
    q: f64,
    eps: f64,
}

impl Weight for Corollary1Weight {
    fn name(&self) -> &'static str {
        "corollary1"
    }
    fn q(&self) -> f64 {
        self.q
    }
    fn eps(&self) -> f64 {
        self.eps
    }
    fn psi(&self, t: f64) -> f64 {
        t.powf(-self.q)
    }
    fn phi(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + 1.0 + self.eps } else { self.q - self.eps };
        x.powf(a)
    }
    fn dphi(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + 1.0 + self.eps } else { self.q - self.eps };
        a * x.powf(a - 1.0)
    }
    fn phi1(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + self.eps } else { self.q - self.eps - 1.0 };
        x.powf(a)
    }
    fn dphi1(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + self.eps } else { self.q - self.eps - 1.0 };
        a * x.powf(a - 1.0)
    }
    fn x_star(&self) -> f64 {
        if self.q - self.eps >= 1.0 { f64::INFINITY } else { 1.0 }
    }
}

struct T3Weight {
    q: f64,
    eps: f64,
}

impl Weight for T3Weight {
    fn name(&self) -> &'static str {
        "t3"
    }
    fn q(&self) -> f64 {
        self.q
    }
    fn eps(&self) -> f64 {
        self.eps
    }
    fn psi(&self, t: f64) -> f64 {
        t.powf(-self.q)
    }
    fn phi(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + self.eps } else { self.q - self.eps };
        x.powf(a)
    }
    fn dphi(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + self.eps } else { self.q - self.eps };
        a * x.powf(a - 1.0)
    }
    fn phi1(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + self.eps - 1.0 } else { self.q - self.eps - 1.0 };
        x.powf(a)
    }
    fn dphi1(&self, x: f64) -> f64 {
        let a = if x <= 1.0 { self.q + self.eps - 1.0 } else { self.q - self.eps - 1.0 };
        a * x.powf(a - 1.0)
    }
    fn x_star(&self) -> f64 {
        if self.q - self.eps >= 1.0 { f64::INFINITY } else { 1.0 }
    }
}

struct PowerWeight {
    p: f64,
}

impl Weight for PowerWeight {
    fn name(&self) -> &'static str {
        "power"
    }
    fn q(&self) -> f64 {
        self.p
    }
    fn eps(&self) -> f64 {
        0.0
    }
    fn psi(&self, t: f64) -> f64 {
        t.powf(-self.p)
    }
    fn phi(&self, x: f64) -> f64 {
        x.powf(self.p)
    }
    fn dphi(&self, x: f64) -> f64 {
        self.p * x.powf(self.p - 1.0)
    }
    fn phi1(&self, x: f64) -> f64 {
        x.powf(self.p - 1.0)
    }
    fn dphi1(&self, x: f64) -> f64 {
        (self.p - 1.0) * x.powf(self.p - 2.0)
    }
    fn x_star(&self) -> f64 {
        f64::INFINITY
    }
}

/// Sampled sanity checks shared by every rule accepted into a pair.
fn validate_rule(w: &dyn Weight) -> Result<()> {
    let bad = |msg: String| Err(Error::BadParameter(msg));
    if !w.q().is_finite() || !w.eps().is_finite() {
        return bad(format!("weight '{}' has non-finite parameters", w.name()));
    }
    // psi positive and decreasing, unbounded at 0.
    let mut prev = f64::INFINITY;
    let mut t = 1e-9;
    while t <= 100.0 {
        let v = w.psi(t);
        if !(v > 0.0) || !v.is_finite() {
            return bad(format!("psi({t}) = {v} is not positive finite"));
        }
        if v > prev * (1.0 + 1e-12) {
            return bad(format!("psi must be decreasing; it grows at t = {t}"));
        }
        prev = v;
        t *= 1.7;
    }
    if !(w.psi(1e-12) > 100.0 * w.psi(1.0)) {
        return bad("psi must blow up at 0".into());
    }
    // phi nonnegative, nondecreasing.
    let mut prev = w.phi(0.0);
    if !(prev >= 0.0) {
        return bad(format!("phi(0) = {prev} is negative"));
    }
    let mut x = 1e-6;
    while x <= 100.0 {
        let v = w.phi(x);
        if !v.is_finite() || v < 0.0 {
            return bad(format!("phi({x}) = {v} out of range"));
        }
        if v < prev * (1.0 - 1e-12) {
            return bad(format!("phi must be nondecreasing; it drops at x = {x}"));
        }
        prev = v;
        x *= 1.3;
    }
    // phi1 nondecreasing up to the declared threshold.
    let hi = w.x_star().min(8.0);
    if hi > 0.0 {
        let mut prev = 0.0;
        let mut x = 1e-6;
        while x <= hi {
            let v = w.phi1(x);
            if v < prev * (1.0 - 1e-12) {
                return bad(format!(
                    "phi(x)/x must be nondecreasing on (0, {}); it drops at x = {x}",
                    w.x_star()
                ));
            }
            prev = v;
            x *= 1.1;
        }
    }
    Ok(())
}

// Dyadic panel caps: the near side runs down to 2^-60, the far side up to
// 2^10 = 1024, after which the tail is extrapolated from panel ratios.
const NEAR_PANELS: usize = 60;
const FAR_PANELS: usize = 10;
const PANEL_TOL: f64 = 1e-10;
/// Panel ratios at or above this count as non-decaying (divergence).
const DIVERGENCE_RATIO: f64 = 0.995;

enum SideVerdict {
    Finite(f64),
    Infinite,
    Unknown,
}

/// Certificate for an arbitrary rule: both halves are integrated over dyadic
/// panels, with a power-law tail extrapolation checked against a shorter
/// refinement (disagreement over 10% yields `Unknown`).
pub(crate) fn condition311_of(w: &dyn Weight) -> Condition311 {
    let near = improper_side(&|t: f64| w.dphi1(t) * w.psi(t / 5.0), true);
    let far = improper_side(&|t: f64| w.dphi(t) * w.psi(t / 3.0), false);
    match (near, far) {
        (SideVerdict::Infinite, _) | (_, SideVerdict::Infinite) => Condition311::Infinite,
        (SideVerdict::Finite(a), SideVerdict::Finite(b)) => Condition311::Finite { near: a, far: b },
        _ => Condition311::Unknown,
    }
}

fn improper_side(f: &dyn Fn(f64) -> f64, toward_zero: bool) -> SideVerdict {
    let k_max = if toward_zero { NEAR_PANELS } else { FAR_PANELS };
    let mut panels = Vec::with_capacity(k_max);
    let mut head = 0.0f64;
    let mut comp = 0.0f64;
    for k in 0..k_max {
        let (a, b) = if toward_zero {
            (2.0f64.powi(-(k as i32) - 1), 2.0f64.powi(-(k as i32)))
        } else {
            (2.0f64.powi(k as i32), 2.0f64.powi(k as i32 + 1))
        };
        let p = simpson_adaptive(f, a, b);
        if !p.is_finite() {
            return SideVerdict::Unknown;
        }
        panels.push(p);
        let t = head + p;
        comp += if head.abs() >= p.abs() { (head - t) + p } else { (p - t) + head };
        head = t;
        if k >= 8 && p.abs() < 1e-13 * (head + comp).abs().max(1e-300) {
            break;
        }
    }
    let head = head + comp;
    if panels.iter().all(|p| p.abs() < 1e-300) {
        return SideVerdict::Finite(0.0);
    }
    let n = panels.len();
    let full = total_with_tail(&panels, n, head);
    match full {
        Some(a) => {
            // Direct refinement check: drop the last two panels and
            // extrapolate from there instead.
            let shorter: f64 = head - panels[n - 1] - panels[n - 2];
            match total_with_tail(&panels, n - 2, shorter) {
                Some(b) if (a - b).abs() <= 0.1 * a.abs().max(b.abs()).max(1e-300) => {
                    SideVerdict::Finite(a)
                }
                _ => SideVerdict::Unknown,
            }
        }
        None => {
            let rho = ratio_estimate(&panels, n);
            match rho {
                Some(r) if r >= DIVERGENCE_RATIO => SideVerdict::Infinite,
                _ => SideVerdict::Unknown,
            }
        }
    }
}

/// Geometric mean of the last three panel ratios ending before `end`.
fn ratio_estimate(panels: &[f64], end: usize) -> Option<f64> {
    if end < 4 {
        return None;
    }
    let mut acc = 1.0;
    for k in end - 3..end {
        let prev = panels[k - 1].abs();
        if prev <= 1e-300 {
            return None;
        }
        acc *= panels[k].abs() / prev;
    }
    Some(acc.cbrt())
}

fn total_with_tail(panels: &[f64], end: usize, head: f64) -> Option<f64> {
    let rho = ratio_estimate(panels, end)?;
    if rho >= DIVERGENCE_RATIO {
        return None;
    }
    Some(head + panels[end - 1] * rho / (1.0 - rho))
}

fn simpson_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        (fa + 4.0 * fm + fb) * h / 6.0
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    let tol = PANEL_TOL * (1.0 + whole.abs());
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}
