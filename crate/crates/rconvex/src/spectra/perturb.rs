//! Perturbation experiments: eigenvalue displacement sums
//! `sum of Phi(d(lambda))` against Schatten norms of the perturbation.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{omega_t_components, CompactSet, Point};
use crate::grid::GridSpec;
use crate::riesz::WeightPair;
use crate::spectra::operator::{schatten_norm, schatten_power, MatrixOperator, OperatorTag};

/// A displacement weight `Phi` with `Phi(0) = 0`, evaluated on
/// eigenvalue distances.
#[derive(Clone)]
pub struct DistanceWeight {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for DistanceWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DistanceWeight").field("name", &self.name).finish()
    }
}

impl DistanceWeight {
    /// `Phi(x) = x^q`, `q > 0`.
    pub fn power(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::BadParameter(format!("power weight needs q > 0, got {q}")));
        }
        Ok(DistanceWeight {
            name: format!("power({q})"),
            f: Arc::new(move |x| x.powf(q)),
        })
    }

    /// Arbitrary weight; `f(0)` must be exactly zero.
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if f(0.0) != 0.0 {
            return Err(Error::BadParameter("distance weight must vanish at 0".into()));
        }
        Ok(DistanceWeight { name: name.into(), f: Arc::new(f) })
    }

    /// Adopts the `phi` profile of a measure-theory weight pair.
    pub fn from_weight(pair: WeightPair) -> Self {
        let name = format!("{}(q={}, eps={})", pair.rule().name(), pair.q(), pair.eps());
        DistanceWeight {
            name,
            f: Arc::new(move |x| if x == 0.0 { 0.0 } else { pair.phi(x) }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SchattenEntry {
    pub q: f64,
    /// `||B||_{S_q}`.
    pub norm: f64,
    /// `sum of s_n^q` (the norm's `q`-th power, summed directly).
    pub power: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightedSum {
    pub weight: String,
    pub sum: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioEntry {
    pub weight: String,
    pub q: f64,
    /// `sum / ||B||^q_{S_q}`.
    pub ratio: f64,
}

/// Sums restricted to eigenvalues reachable from infinity in the
/// complement of the thickened unperturbed spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct OuterReport {
    /// Thickening radius used to close up the spectrum.
    pub link: f64,
    /// Eigenvalues excluded for sitting in a bounded complement pocket.
    pub excluded: usize,
    pub sums: Vec<WeightedSum>,
    pub ratios: Vec<RatioEntry>,
    /// True when the outer sums differ from the full ones.
    pub discrepancy: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub sigma0: Vec<Complex64>,
    pub sigma_a: Vec<Complex64>,
    /// Distances of perturbed eigenvalues beyond `atom_tol` from the
    /// unperturbed spectrum; coincident eigenvalues drop out just as
    /// `Phi(0) = 0` removes them from the sums.
    pub distances: Vec<f64>,
    pub atom_tol: f64,
    pub schatten: Vec<SchattenEntry>,
    pub sums: Vec<WeightedSum>,
    pub ratios: Vec<RatioEntry>,
    pub outer: Option<OuterReport>,
}

#[derive(Debug, Clone, Default)]
pub struct MeasureOptions {
    /// Distance below which a perturbed eigenvalue counts as coincident;
    /// default `1e-8 * ||A0||`.
    pub atom_tol: Option<f64>,
    /// When set, also report sums over the outer component of the
    /// complement of the spectrum thickened by this radius.
    pub outer_link: Option<f64>,
}

/// Rounding error of `s = fl(a + b)` (Knuth's 2Sum), so `a + b = s + err`
/// holds exactly.
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bv = s - a;
    let av = s - bv;
    (a - av) + (b - bv)
}

fn ratio_of(sum: f64, power: f64) -> f64 {
    if power > 0.0 {
        sum / power
    } else if sum == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn sums_over(weights: &[DistanceWeight], dists: &[f64]) -> Vec<WeightedSum> {
    weights
        .iter()
        .map(|w| WeightedSum {
            weight: w.name().to_string(),
            sum: dists.iter().map(|&d| w.eval(d)).sum(),
        })
        .collect()
}

fn ratios_over(sums: &[WeightedSum], schatten: &[SchattenEntry]) -> Vec<RatioEntry> {
    let mut out = Vec::with_capacity(sums.len() * schatten.len());
    for s in sums {
        for e in schatten {
            out.push(RatioEntry {
                weight: s.weight.clone(),
                q: e.q,
                ratio: ratio_of(s.sum, e.power),
            });
        }
    }
    out
}

/// Labels each eigenvalue as outer (reachable from infinity) or not in
/// the complement of the spectrum thickened by `link`.
fn outer_flags(sigma0: &[Complex64], lambdas: &[Complex64], link: f64) -> Result<Vec<bool>> {
    if !link.is_finite() || link <= 0.0 {
        return Err(Error::BadParameter(format!("outer link radius must be > 0, got {link}")));
    }
    // Deduplicate multiplicities; the finite-set constructor rejects
    // coincident points.
    let mut support: Vec<Point> = Vec::new();
    for e in sigma0 {
        let p = Point::new(e.re, e.im);
        if support.iter().all(|s| s.dist(p) > 1e-9 * (1.0 + p.x.abs() + p.y.abs())) {
            support.push(p);
        }
    }
    let e = CompactSet::finite(support)?;

    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for z in sigma0.iter().chain(lambdas) {
        lo.x = lo.x.min(z.re);
        lo.y = lo.y.min(z.im);
        hi.x = hi.x.max(z.re);
        hi.y = hi.y.max(z.im);
    }
    let pad = 4.0 * link;
    let h = link / 4.0;
    let nx = (((hi.x - lo.x + 2.0 * pad) / h).ceil() as usize + 2).max(8);
    let ny = (((hi.y - lo.y + 2.0 * pad) / h).ceil() as usize + 2).max(8);
    let spec = GridSpec::new(
        Point::new(lo.x - pad, lo.y - pad),
        Point::new(lo.x - pad + h * (nx - 1) as f64, lo.y - pad + h * (ny - 1) as f64),
        nx,
        ny,
    )?;
    let field = omega_t_components(&e, link, spec)?;
    Ok(lambdas
        .iter()
        .map(|z| {
            let (ix, iy) = spec.nearest_node(Point::new(z.re, z.im));
            let label = *field.labels.get(ix, iy);
            // Cells inside the thickened band (label 0) are not in any
            // pocket, so only a definite bounded label excludes.
            label == 0 || label == field.unbounded_label
        })
        .collect())
}

pub fn perturb_and_measure(
    a0: &MatrixOperator,
    b: &MatrixOperator,
    weights: &[DistanceWeight],
    q_list: &[f64],
) -> Result<SpectralReport> {
    perturb_and_measure_opts(a0, b, weights, q_list, &MeasureOptions::default())
}

pub fn perturb_and_measure_opts(
    a0: &MatrixOperator,
    b: &MatrixOperator,
    weights: &[DistanceWeight],
    q_list: &[f64],
    opts: &MeasureOptions,
) -> Result<SpectralReport> {
    if a0.dim() != b.dim() {
        return Err(Error::BadParameter(format!(
            "dimension mismatch: {} against {}",
            a0.dim(),
            b.dim()
        )));
    }
    let sigma0 = a0.eigenvalues()?;
    let perturbed_tag =
        if a0.tag() == OperatorTag::SelfAdjoint && b.tag() == OperatorTag::SelfAdjoint {
            OperatorTag::SelfAdjoint
        } else {
            OperatorTag::General
        };
    let a = MatrixOperator::new(a0.matrix() + b.matrix(), perturbed_tag)?;

    // For a pair of exactly diagonal operators the perturbed eigenvalues
    // are the entry sums. Keeping each sum's rounding error and folding it
    // into the distances makes the commuting case exact: the displacement
    // of `a_i + b_i` from `a_i` comes out as `|b_i|` to the bit.
    let (sigma_a, corrections): (Vec<Complex64>, Vec<Complex64>) =
        if a0.is_exactly_diagonal() && b.is_exactly_diagonal() {
            let mut pairs: Vec<(Complex64, Complex64)> = (0..a0.dim())
                .map(|i| {
                    let x = a0.matrix()[(i, i)];
                    let y = b.matrix()[(i, i)];
                    let s = x + y;
                    let err = Complex64::new(
                        two_sum_err(x.re, y.re, s.re),
                        two_sum_err(x.im, y.im, s.im),
                    );
                    (s, err)
                })
                .collect();
            pairs.sort_by(|l, r| l.0.re.total_cmp(&r.0.re).then(l.0.im.total_cmp(&r.0.im)));
            pairs.into_iter().unzip()
        } else {
            let eigs = a.eigenvalues()?;
            let zeros = vec![Complex64::new(0.0, 0.0); eigs.len()];
            (eigs, zeros)
        };

    let atom_tol = match opts.atom_tol {
        Some(t) if t.is_finite() && t >= 0.0 => t,
        Some(t) => return Err(Error::BadParameter(format!("atom tolerance must be >= 0, got {t}"))),
        None => 1e-8 * a0.operator_norm(),
    };

    let mut retained: Vec<Complex64> = Vec::new();
    let mut distances: Vec<f64> = Vec::new();
    for (&lam, &err) in sigma_a.iter().zip(&corrections) {
        let d = sigma0
            .iter()
            .map(|m| ((lam.re - m.re) + err.re).hypot((lam.im - m.im) + err.im))
            .fold(f64::INFINITY, f64::min);
        if d > atom_tol {
            retained.push(lam);
            distances.push(d);
        }
    }

    let mut schatten = Vec::with_capacity(q_list.len());
    for &q in q_list {
        schatten.push(SchattenEntry { q, norm: schatten_norm(b, q)?, power: schatten_power(b, q)? });
    }
    let sums = sums_over(weights, &distances);
    let ratios = ratios_over(&sums, &schatten);

    let outer = match opts.outer_link {
        None => None,
        Some(link) => {
            let flags = outer_flags(&sigma0, &retained, link)?;
            let outer_d: Vec<f64> = distances
                .iter()
                .zip(&flags)
                .filter_map(|(&d, &keep)| keep.then_some(d))
                .collect();
            let excluded = distances.len() - outer_d.len();
            let osums = sums_over(weights, &outer_d);
            let oratios = ratios_over(&osums, &schatten);
            Some(OuterReport {
                link,
                excluded,
                discrepancy: excluded > 0,
                sums: osums,
                ratios: oratios,
            })
        }
    };

    Ok(SpectralReport { sigma0, sigma_a, distances, atom_tol, schatten, sums, ratios, outer })
}
