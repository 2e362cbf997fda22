//! Regularized perturbation determinants
//! `g_q(lambda) = det_m(I + B R(lambda, A0))` with `m = ceil(q)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::operator::{schatten_power, MatrixOperator};

fn eig_tol(a0: &MatrixOperator) -> f64 {
    1e-8 * a0.operator_norm().max(1e-12)
}

fn distance_to(eigs: &[Complex64], lambda: Complex64) -> f64 {
    eigs.iter().map(|m| (lambda - m).norm()).fold(f64::INFINITY, f64::min)
}

fn shifted(a0: &MatrixOperator, lambda: Complex64) -> DMatrix<Complex64> {
    let mut m = a0.matrix().clone();
    for i in 0..m.nrows() {
        m[(i, i)] -= lambda;
    }
    m
}

/// `det_m(I + T)` with `T = B (A0 - lambda)^-1` and `m = ceil(q)`.
///
/// The regularizer enters through traces:
/// `det_m(I + T) = det(I + T) * exp(sum_{k=1}^{m-1} (-1)^k tr(T^k) / k)`,
/// which is the determinant of `(I + T) exp(sum (-T)^k / k)`.
pub fn perturbation_determinant(
    a0: &MatrixOperator,
    b: &MatrixOperator,
    lambda: Complex64,
    q: f64,
) -> Result<Complex64> {
    if a0.dim() != b.dim() {
        return Err(Error::BadParameter(format!(
            "dimension mismatch: {} against {}",
            a0.dim(),
            b.dim()
        )));
    }
    if !q.is_finite() || q < 1.0 {
        return Err(Error::BadParameter(format!("determinant order needs q >= 1, got {q}")));
    }
    let eigs = a0.eigenvalues()?;
    let tol = eig_tol(a0);
    let d = distance_to(&eigs, lambda);
    if d <= tol {
        return Err(Error::OutsideDomain(format!(
            "lambda within {tol:.3e} of the unperturbed spectrum (d = {d:.3e})"
        )));
    }
    let resolvent = shifted(a0, lambda).try_inverse().ok_or(Error::RankDeficient {
        condition: f64::INFINITY,
    })?;
    let t = b.matrix() * resolvent;
    let n = t.nrows();
    let det = (DMatrix::identity(n, n) + &t).lu().determinant();

    let m = q.ceil() as usize;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut power = DMatrix::identity(n, n);
    let mut sign = 1.0;
    for k in 1..m {
        power *= &t;
        sign = -sign;
        corr += power.trace() * Complex64::new(sign / k as f64, 0.0);
    }
    let g = det * corr.exp();
    if !g.re.is_finite() || !g.im.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "determinant overflowed at lambda = {lambda}"
        )));
    }
    Ok(g)
}

/// Polishes a zero of `g_q` by complex Newton iteration with a numerical
/// derivative, starting from `guess`.
pub fn determinant_zero_near(
    a0: &MatrixOperator,
    b: &MatrixOperator,
    q: f64,
    guess: Complex64,
) -> Result<Complex64> {
    let scale = guess.norm().max(1.0);
    let step = 1e-6 * scale;
    let mut lam = guess;
    for _ in 0..60 {
        let g = perturbation_determinant(a0, b, lam, q)?;
        if g.norm() == 0.0 {
            return Ok(lam);
        }
        let h = Complex64::new(step, 0.0);
        let gp = perturbation_determinant(a0, b, lam + h, q)?;
        let gm = perturbation_determinant(a0, b, lam - h, q)?;
        let deriv = (gp - gm) / (2.0 * h);
        if deriv.norm() == 0.0 {
            return Err(Error::NumericalFailure("flat determinant; cannot polish zero".into()));
        }
        let delta = g / deriv;
        lam -= delta;
        if delta.norm() <= 1e-13 * scale {
            return Ok(lam);
        }
    }
    Err(Error::NumericalFailure(format!(
        "zero polishing did not settle near {guess}"
    )))
}

/// Empirical supremum of `log|g_q| / (||B||^q_{S_q} ||R(lambda)||^q)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthReport {
    pub sup: f64,
    pub used: usize,
    pub skipped: usize,
}

pub fn determinant_growth_check(
    a0: &MatrixOperator,
    b: &MatrixOperator,
    q: f64,
    samples: &[Complex64],
) -> Result<GrowthReport> {
    let b_power = schatten_power(b, q)?;
    if b_power == 0.0 {
        return Ok(GrowthReport { sup: 0.0, used: 0, skipped: samples.len() });
    }
    let eigs = a0.eigenvalues()?;
    let tol = eig_tol(a0);
    let mut sup = f64::NEG_INFINITY;
    let mut used = 0usize;
    let mut skipped = 0usize;
    for &lam in samples {
        if distance_to(&eigs, lam) <= tol {
            skipped += 1;
            continue;
        }
        let g = perturbation_determinant(a0, b, lam, q)?;
        let smin = shifted(a0, lam)
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if smin <= tol {
            skipped += 1;
            continue;
        }
        let resolvent_norm = 1.0 / smin;
        let log_g = g.norm().ln();
        if log_g == f64::NEG_INFINITY {
            // Exactly at a zero: contributes -inf, never the sup.
            used += 1;
            continue;
        }
        sup = sup.max(log_g / (b_power * resolvent_norm.powf(q)));
        used += 1;
    }
    if used == 0 {
        return Err(Error::NumericalFailure("no usable growth samples".into()));
    }
    Ok(GrowthReport { sup: if sup.is_finite() { sup } else { 0.0 }, used, skipped })
}
