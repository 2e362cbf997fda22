//! Integrals against Riesz measures: Blaschke-type sums, the layer-cake
//! identity, Green-weighted mass, and convergence classification of
//! truncated integral sequences.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{CompactSet, Point};
use crate::potential::GreenFunction;
use crate::riesz::measure::RieszMeasureGrid;
use crate::riesz::weights::WeightPair;

/// Neumaier compensated accumulator; cell sums must stay honest on grids
/// with over a million terms.
#[derive(Default, Clone, Copy)]
struct Accum {
    sum: f64,
    comp: f64,
}

impl Accum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        self.comp += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Result of a truncated Blaschke-type integral.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlaschkeReport {
    /// `sum of phi(d) * mass` over the annular region between the cuts.
    pub integral: f64,
    pub cells_used: usize,
    pub atoms_used: usize,
    /// Grid and atom mass outside the cut range (the truncation estimate).
    pub mass_outside: f64,
    pub inner_cut: f64,
    pub outer_cut: f64,
}

/// Integrates `phi(d(z, E))` against the measure over `inner_cut < d < outer_cut`.
pub fn blaschke_integral(
    mu: &RieszMeasureGrid,
    e: &CompactSet,
    w: &WeightPair,
    inner_cut: f64,
    outer_cut: f64,
) -> Result<BlaschkeReport> {
    if !(inner_cut.is_finite() && inner_cut > 0.0 && outer_cut.is_finite() && outer_cut > inner_cut)
    {
        return Err(Error::BadParameter(format!(
            "cuts must satisfy 0 < inner < outer < inf, got ({inner_cut}, {outer_cut})"
        )));
    }
    let area = mu.cell_area();
    let mut integral = Accum::default();
    let mut outside = Accum::default();
    let mut cells_used = 0usize;
    let mut atoms_used = 0usize;
    for (ix, iy, z, &masked) in mu.mask.iter() {
        if masked {
            continue;
        }
        let m = mu.density.get(ix, iy) * area;
        let d = e.distance(z);
        if d > inner_cut && d < outer_cut {
            integral.add(w.phi(d) * m);
            cells_used += 1;
        } else {
            outside.add(m);
        }
    }
    for &(z, m) in &mu.atoms {
        let d = e.distance(z);
        if d > inner_cut && d < outer_cut {
            integral.add(w.phi(d) * m);
            atoms_used += 1;
        } else {
            outside.add(m);
        }
    }
    if cells_used + atoms_used == 0 {
        return Err(Error::NumericalFailure(format!(
            "no measure between the cuts ({inner_cut}, {outer_cut})"
        )));
    }
    Ok(BlaschkeReport {
        integral: integral.value(),
        cells_used,
        atoms_used,
        mass_outside: outside.value(),
        inner_cut,
        outer_cut,
    })
}

/// Both sides of the layer-cake identity for one measure and weight.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LayerCakeReport {
    /// `integral of phi(d) d mu`, summed term by term.
    pub direct: f64,
    /// `phi(0) * mass + integral of phi'(t) * mu{d > t} dt` over the level grid.
    pub layer_cake: f64,
    pub relative_gap: f64,
    /// Nonzero only for weights that violate the `phi(0) = 0` convention;
    /// the layer-cake side adds `phi(0) * mass` so both sides stay comparable.
    pub phi_at_zero: f64,
    /// Largest distance carrying mass; levels should extend past it.
    pub support_max_distance: f64,
}

/// Checks `integral phi(d) dmu = integral phi'(t) mu(Omega_t) dt`.
///
/// The level integral uses interval sums `H(mid) * (phi(b) - phi(a))`,
/// which are exact whenever `mu{d > t}` is constant across `(a, b)`; atomic
/// measures with breakpoints in `t_grid` therefore balance exactly.
pub fn layer_cake_check(
    mu: &RieszMeasureGrid,
    e: &CompactSet,
    w: &WeightPair,
    t_grid: &[f64],
) -> Result<LayerCakeReport> {
    if t_grid.len() < 2 {
        return Err(Error::BadParameter("need at least two distance levels".into()));
    }
    let mut prev = -1.0f64;
    for &t in t_grid {
        if !t.is_finite() || t < 0.0 || t <= prev {
            return Err(Error::BadParameter(
                "distance levels must be finite, nonnegative, strictly increasing".into(),
            ));
        }
        prev = t;
    }

    let area = mu.cell_area();
    let mut items: Vec<(f64, f64)> = Vec::new();
    for (ix, iy, z, &masked) in mu.mask.iter() {
        if !masked {
            items.push((e.distance(z), mu.density.get(ix, iy) * area));
        }
    }
    for &(z, m) in &mu.atoms {
        items.push((e.distance(z), m));
    }

    let mut direct = Accum::default();
    let mut total = Accum::default();
    let mut support_max = 0.0f64;
    for &(d, m) in &items {
        direct.add(w.phi(d) * m);
        total.add(m);
        support_max = support_max.max(d);
    }

    // Suffix masses over sorted distances give mu{d > t} by binary search.
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut suffix = vec![0.0f64; items.len() + 1];
    for i in (0..items.len()).rev() {
        suffix[i] = suffix[i + 1] + items[i].1;
    }
    let h_of = |t: f64| -> f64 { suffix[items.partition_point(|&(d, _)| d <= t)] };

    let phi_at_zero = w.phi(0.0);
    let mut layer = Accum::default();
    layer.add(phi_at_zero * total.value());
    let mut prev = 0.0f64;
    for &t in t_grid {
        if t > prev {
            layer.add(h_of(0.5 * (prev + t)) * (w.phi(t) - w.phi(prev)));
        }
        prev = t;
    }

    let direct = direct.value();
    let layer = layer.value();
    let scale = direct.abs().max(layer.abs()).max(1e-300);
    Ok(LayerCakeReport {
        direct,
        layer_cake: layer,
        relative_gap: (direct - layer).abs() / scale,
        phi_at_zero,
        support_max_distance: support_max,
    })
}

/// Green-weighted mass of a measure over the domain `d > t`.
#[derive(Debug, Clone, Serialize)]
pub struct GreenMassReport {
    /// `integral of G_t(z, infinity) d mu` over cells and atoms with `d > t`.
    pub value: f64,
    pub cells_used: usize,
    pub atoms_used: usize,
    /// Contribution of the explicit atoms alone.
    pub atom_part: f64,
    /// Boundary residual reported by the Green estimator.
    pub green_residual: f64,
    /// Set when the estimator's residual exceeds 1e-3.
    pub warning: Option<String>,
}

pub fn green_mass(
    e: &CompactSet,
    t: f64,
    mu: &RieszMeasureGrid,
    green: &dyn GreenFunction,
) -> Result<GreenMassReport> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::BadParameter(format!("threshold t must be finite >= 0, got {t}")));
    }
    let area = mu.cell_area();
    let mut queries: Vec<Point> = Vec::new();
    let mut masses: Vec<f64> = Vec::new();
    for (ix, iy, z, &masked) in mu.mask.iter() {
        if !masked && e.distance(z) > t {
            queries.push(z);
            masses.push(mu.density.get(ix, iy) * area);
        }
    }
    let atom_from = queries.len();
    for &(z, m) in &mu.atoms {
        if e.distance(z) > t {
            queries.push(z);
            masses.push(m);
        }
    }
    if queries.is_empty() {
        return Err(Error::NumericalFailure(
            "measure carries no mass inside the domain".into(),
        ));
    }

    let est = green.estimate(&queries)?;
    let mut value = Accum::default();
    let mut atom_part = Accum::default();
    for (i, (&g, &m)) in est.values.iter().zip(&masses).enumerate() {
        value.add(g * m);
        if i >= atom_from {
            atom_part.add(g * m);
        }
    }
    let warning = (est.boundary_residual > 1e-3).then(|| {
        format!("green residual {:.3e} above 1e-3; mass values may be loose", est.boundary_residual)
    });
    Ok(GreenMassReport {
        value: value.value(),
        cells_used: atom_from,
        atoms_used: queries.len() - atom_from,
        atom_part: atom_part.value(),
        green_residual: est.boundary_residual,
        warning,
    })
}

/// A measured value with its theoretical two-sided enclosure.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TwoSidedBound {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
}

impl TwoSidedBound {
    /// True when the value sits in `[lower, upper]` up to relative slack.
    pub fn holds(&self, rtol: f64) -> bool {
        self.value >= self.lower * (1.0 - rtol) && self.value <= self.upper * (1.0 + rtol)
    }
}

/// `integral of log(|z|/t)` over `|z| > t` against the measure, enclosed by
/// `(t+s)^-q` and `(t-s)^-q` where `s` bounds the generating set.
pub fn radial_log_mass(mu: &RieszMeasureGrid, t: f64, s: f64, q: f64) -> Result<TwoSidedBound> {
    if !(t.is_finite() && s.is_finite() && q.is_finite() && s >= 0.0 && t > s && q > 0.0) {
        return Err(Error::BadParameter(format!(
            "need 0 <= s < t and q > 0, got t = {t}, s = {s}, q = {q}"
        )));
    }
    let area = mu.cell_area();
    let mut value = Accum::default();
    for (ix, iy, z, &masked) in mu.mask.iter() {
        if masked {
            continue;
        }
        let r = z.norm();
        if r > t {
            value.add((r / t).ln() * mu.density.get(ix, iy) * area);
        }
    }
    for &(z, m) in &mu.atoms {
        let r = z.norm();
        if r > t {
            value.add((r / t).ln() * m);
        }
    }
    Ok(TwoSidedBound {
        lower: (t + s).powf(-q),
        value: value.value(),
        upper: (t - s).powf(-q),
    })
}

/// Verdict on a sequence of truncated integrals under geometric cut
/// refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Divergence {
    /// Successive differences decay geometrically; the extrapolated limit
    /// is reported.
    Convergent { limit: f64 },
    /// Differences stay level: growth linear in `log(1/cut)`, with the
    /// slope per e-fold of cut refinement.
    DivergentLog { slope: f64 },
    /// Differences grow geometrically: growth like `cut^-exponent`.
    DivergentPower { exponent: f64 },
}

impl Divergence {
    pub fn label(&self) -> &'static str {
        match self {
            Divergence::Convergent { .. } => "convergent",
            Divergence::DivergentLog { .. } => "divergent_log",
            Divergence::DivergentPower { .. } => "divergent_power",
        }
    }

    pub fn is_divergent(&self) -> bool {
        !matches!(self, Divergence::Convergent { .. })
    }
}

/// Classifies truncated integral values `values[k]` at cuts `cuts[k]`.
///
/// Cuts must be strictly monotone and close to geometric; at least four
/// levels are required to see two difference ratios.
pub fn divergence_probe(cuts: &[f64], values: &[f64]) -> Result<Divergence> {
    if cuts.len() != values.len() {
        return Err(Error::BadParameter(format!(
            "{} cuts against {} values",
            cuts.len(),
            values.len()
        )));
    }
    if cuts.len() < 4 {
        return Err(Error::BadParameter(format!(
            "need at least 4 refinement levels, got {}",
            cuts.len()
        )));
    }
    for &c in cuts {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::BadParameter(format!("cuts must be positive, got {c}")));
        }
    }
    for &v in values {
        if !v.is_finite() {
            return Err(Error::BadParameter("values must be finite".into()));
        }
    }
    let steps: Vec<f64> = cuts.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
    let mean_step = steps.iter().sum::<f64>() / steps.len() as f64;
    if mean_step == 0.0
        || steps.iter().any(|&s| s * mean_step <= 0.0 || (s - mean_step).abs() > 0.25 * mean_step.abs())
    {
        return Err(Error::BadParameter(
            "cuts must form a (nearly) geometric monotone sequence".into(),
        ));
    }

    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let scale = values.iter().fold(1.0f64, |a, &v| a.max(v.abs()));
    if diffs.iter().all(|d| d.abs() <= 1e-12 * scale) {
        return Ok(Divergence::Convergent { limit: *values.last().expect("nonempty") });
    }

    let mut ratios: Vec<f64> = Vec::new();
    for w in diffs.windows(2) {
        if w[0].abs() > 1e-14 * scale {
            ratios.push(w[1].abs() / w[0].abs());
        }
    }
    if ratios.len() < 2 {
        return Err(Error::NumericalFailure(
            "differences too irregular to classify".into(),
        ));
    }
    ratios.sort_by(f64::total_cmp);
    let r = ratios[ratios.len() / 2];

    if r <= 0.9 {
        let d_last = *diffs.last().expect("nonempty");
        return Ok(Divergence::Convergent {
            limit: values.last().expect("nonempty") + d_last * r / (1.0 - r),
        });
    }
    if r < 1.1 {
        let mean_diff = diffs.iter().sum::<f64>() / diffs.len() as f64;
        return Ok(Divergence::DivergentLog { slope: mean_diff / mean_step.abs() });
    }
    Ok(Divergence::DivergentPower { exponent: r.ln() / mean_step.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Disk;
    use crate::grid::{GridSpec, MaskField, ScalarField};
    use crate::potential::GreenSpec;
    use crate::riesz::weights::{weight_power, Weight, WeightPair};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn three_atoms() -> (CompactSet, RieszMeasureGrid) {
        let e = CompactSet::finite(vec![p(0.0, 0.0)]).unwrap();
        let g = GridSpec::square(p(-1.0, -1.0), p(1.0, 1.0), 2).unwrap();
        let mu = RieszMeasureGrid::from_atoms(
            g,
            vec![(p(0.5, 0.0), 1.0), (p(0.0, 1.0), 1.0), (p(-2.0, 0.0), 1.0)],
        )
        .unwrap();
        (e, mu)
    }

    #[test]
    fn atomic_layer_cake_balances_exactly() {
        let (e, mu) = three_atoms();
        let w = weight_power(2.0).unwrap();
        let t_grid = [0.0, 0.25, 0.5, 1.0, 2.0];
        let rep = layer_cake_check(&mu, &e, &w, &t_grid).unwrap();
        assert!((rep.direct - 5.25).abs() < 1e-12, "direct = {}", rep.direct);
        assert!((rep.layer_cake - 5.25).abs() < 1e-12, "layer = {}", rep.layer_cake);
        assert!(rep.relative_gap < 1e-13);
        assert_eq!(rep.phi_at_zero, 0.0);
        assert!((rep.support_max_distance - 2.0).abs() < 1e-15);
    }

    #[test]
    fn annulus_layer_cake_gap_shrinks() {
        // Uniform density c on 0.8 < |z| < 1.7 around a one-point set;
        // integral of |z| over the annulus is 2 pi c (b^3 - a^3) / 3.
        let e = CompactSet::finite(vec![p(0.0, 0.0)]).unwrap();
        let (a, b, c) = (0.8, 1.7, 0.3);
        let exact = 2.0 * std::f64::consts::PI * c * (b * b * b - a * a * a) / 3.0;
        let w = weight_power(1.0).unwrap();
        let t_grid: Vec<f64> = (0..=400).map(|k| k as f64 * 0.005).collect();

        let mut gaps = Vec::new();
        for n in [221usize, 441] {
            let g = GridSpec::square(p(-2.2, -2.2), p(2.2, 2.2), n).unwrap();
            let density = ScalarField::from_fn(g, |z| {
                let r = z.norm();
                if r > a && r < b { c } else { 0.0 }
            });
            let total: f64 = density.values.iter().sum::<f64>() * g.h * g.h;
            let mu = RieszMeasureGrid {
                density,
                mask: MaskField::fill(g, false),
                atoms: vec![],
                total_mass_truncated: total,
            };
            let rep = layer_cake_check(&mu, &e, &w, &t_grid).unwrap();
            assert!(
                (rep.direct - exact).abs() < 0.03 * exact,
                "direct {} vs closed form {exact}",
                rep.direct
            );
            gaps.push(rep.relative_gap);
        }
        assert!(gaps[1] < 0.01, "gap at refined grid = {}", gaps[1]);
        assert!(gaps[0] < 0.01, "gap at coarse grid = {}", gaps[0]);
    }

    #[test]
    fn constant_weight_rides_on_the_zero_convention() {
        struct ConstWeight;
        impl Weight for ConstWeight {
            fn name(&self) -> &'static str {
                "constant"
            }
            fn q(&self) -> f64 {
                1.0
            }
            fn eps(&self) -> f64 {
                0.0
            }
            fn psi(&self, t: f64) -> f64 {
                1.0 / t
            }
            fn phi(&self, _x: f64) -> f64 {
                3.0
            }
            fn dphi(&self, _x: f64) -> f64 {
                0.0
            }
            fn phi1(&self, x: f64) -> f64 {
                3.0 / x
            }
            fn dphi1(&self, x: f64) -> f64 {
                -3.0 / (x * x)
            }
            fn x_star(&self) -> f64 {
                0.0
            }
        }
        let w = WeightPair::from_rule(Box::new(ConstWeight)).unwrap();
        let (e, mu) = three_atoms();
        let rep = layer_cake_check(&mu, &e, &w, &[0.0, 1.0, 3.0]).unwrap();
        // The level integral itself vanishes; phi(0) * mass carries it all.
        assert_eq!(rep.phi_at_zero, 3.0);
        assert!((rep.direct - 9.0).abs() < 1e-12);
        assert!((rep.layer_cake - 9.0).abs() < 1e-12);
    }

    #[test]
    fn blaschke_sums_atoms_between_cuts() {
        let (e, mu) = three_atoms();
        let w = weight_power(2.0).unwrap();
        let rep = blaschke_integral(&mu, &e, &w, 0.3, 3.0).unwrap();
        assert!((rep.integral - 5.25).abs() < 1e-12);
        assert_eq!(rep.atoms_used, 3);
        assert_eq!(rep.cells_used, 0);
        assert!(rep.mass_outside.abs() < 1e-15);

        let rep = blaschke_integral(&mu, &e, &w, 0.7, 3.0).unwrap();
        assert!((rep.integral - 5.0).abs() < 1e-12);
        assert_eq!(rep.atoms_used, 2);
        assert!((rep.mass_outside - 1.0).abs() < 1e-15);

        assert!(matches!(
            blaschke_integral(&mu, &e, &w, 5.0, 6.0),
            Err(Error::NumericalFailure(_))
        ));
        assert!(matches!(
            blaschke_integral(&mu, &e, &w, 2.0, 1.0),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn green_mass_of_an_exterior_atom_is_exact() {
        let e = CompactSet::disks(vec![Disk { center: p(0.0, 0.0), radius: 1.0 }]).unwrap();
        let green = GreenSpec::ExteriorDisk { radius: 1.0 }.build(&e).unwrap();
        let g = GridSpec::square(p(-1.0, -1.0), p(1.0, 1.0), 2).unwrap();
        let mu =
            RieszMeasureGrid::from_atoms(g, vec![(p(std::f64::consts::E, 0.0), 1.0)]).unwrap();
        let rep = green_mass(&e, 0.0, &mu, green.as_ref()).unwrap();
        assert!((rep.value - 1.0).abs() < 1e-12, "value = {}", rep.value);
        assert_eq!(rep.cells_used, 0);
        assert_eq!(rep.atoms_used, 1);
        assert!((rep.atom_part - rep.value).abs() < 1e-15);
        assert!(rep.warning.is_none());
    }

    #[test]
    fn green_mass_matches_radial_closed_form() {
        // Uniform density on 2 < |z| < 3 outside the unit disk, where
        // G = log |z|: the mass is c * 2 pi * int_2^3 r log r dr.
        let e = CompactSet::disks(vec![Disk { center: p(0.0, 0.0), radius: 1.0 }]).unwrap();
        let green = GreenSpec::ExteriorDisk { radius: 1.0 }.build(&e).unwrap();
        let g = GridSpec::square(p(-3.2, -3.2), p(3.2, 3.2), 321).unwrap();
        let c = 0.1;
        let density = ScalarField::from_fn(g, |z| {
            let r = z.norm();
            if r > 2.0 && r < 3.0 { c } else { 0.0 }
        });
        let total: f64 = density.values.iter().sum::<f64>() * g.h * g.h;
        let mu = RieszMeasureGrid {
            density,
            mask: MaskField::fill(g, false),
            atoms: vec![],
            total_mass_truncated: total,
        };
        let int_r_log = |r: f64| r * r / 2.0 * r.ln() - r * r / 4.0;
        let exact = c * 2.0 * std::f64::consts::PI * (int_r_log(3.0) - int_r_log(2.0));
        let rep = green_mass(&e, 0.0, &mu, green.as_ref()).unwrap();
        assert!(
            (rep.value - exact).abs() < 0.03 * exact,
            "value {} vs closed form {exact}",
            rep.value
        );
        assert!(rep.cells_used > 10_000);
    }

    #[test]
    fn radial_log_mass_encloses_far_field_model() {
        // density 4 |z|^-4 / 2pi makes the integral exactly t^-2, which the
        // enclosure (t+s)^-2 .. (t-s)^-2 must contain.
        let e_grid = GridSpec::square(p(-50.0, -50.0), p(50.0, 50.0), 1001).unwrap();
        let density = ScalarField::from_fn(e_grid, |z| {
            let r = z.norm();
            if r > 0.5 { 4.0 / (2.0 * std::f64::consts::PI * r.powi(4)) } else { 0.0 }
        });
        let total: f64 = density.values.iter().sum::<f64>() * e_grid.h * e_grid.h;
        let mu = RieszMeasureGrid {
            density,
            mask: MaskField::fill(e_grid, false),
            atoms: vec![],
            total_mass_truncated: total,
        };
        let bound = radial_log_mass(&mu, 2.0, 1.0, 2.0).unwrap();
        assert!((bound.lower - 1.0 / 9.0).abs() < 1e-15);
        assert!((bound.upper - 1.0).abs() < 1e-15);
        assert!((bound.value - 0.25).abs() < 0.02 * 0.25, "value = {}", bound.value);
        assert!(bound.holds(0.0));
        assert!(matches!(radial_log_mass(&mu, 1.0, 1.0, 2.0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn probe_classifies_synthetic_tails() {
        let cuts: Vec<f64> = (0..6).map(|k| 10f64.powi(-k)).collect();

        // int_c^1 1/t dt = log(1/c): level growth.
        let vals: Vec<f64> = cuts.iter().map(|c| -c.ln()).collect();
        match divergence_probe(&cuts, &vals).unwrap() {
            Divergence::DivergentLog { slope } => assert!((slope - 1.0).abs() < 1e-9),
            other => panic!("expected log divergence, got {other:?}"),
        }

        // int_c^1 t^-1/2 dt = 2(1 - sqrt(c)): convergent with limit 2.
        let vals: Vec<f64> = cuts.iter().map(|c| 2.0 * (1.0 - c.sqrt())).collect();
        match divergence_probe(&cuts, &vals).unwrap() {
            Divergence::Convergent { limit } => assert!((limit - 2.0).abs() < 1e-6),
            other => panic!("expected convergence, got {other:?}"),
        }

        // int_c^1 t^-3/2 dt = 2(c^-1/2 - 1): power growth, exponent 1/2.
        let vals: Vec<f64> = cuts.iter().map(|c| 2.0 * (1.0 / c.sqrt() - 1.0)).collect();
        match divergence_probe(&cuts, &vals).unwrap() {
            Divergence::DivergentPower { exponent } => assert!((exponent - 0.5).abs() < 1e-9),
            other => panic!("expected power divergence, got {other:?}"),
        }

        assert!(matches!(
            divergence_probe(&cuts[..3], &vals[..3]),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            divergence_probe(&[1.0, 0.5, 0.3, 0.29], &[1.0, 2.0, 3.0, 4.0]),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            divergence_probe(&cuts, &vals[..4]),
            Err(Error::BadParameter(_))
        ));
    }
}
