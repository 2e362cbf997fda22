//! Constructed operator pairs: the Cayley split of a near-unitary into
//! unitary plus small, and midpoint discretizations of multiplication
//! plus integral operators on `[0, 1]`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectra::operator::{MatrixOperator, OperatorTag};

fn frob(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
}

/// Result of splitting `V = U + B` through the Cayley transform at `zeta`.
#[derive(Debug, Clone)]
pub struct CayleyPair {
    /// `W = i (zeta + V)(zeta - V)^-1`.
    pub w: DMatrix<Complex64>,
    /// Unitary part, tag-checked at construction.
    pub u: MatrixOperator,
    /// `B = V - U`.
    pub b: MatrixOperator,
    /// Frobenius residual of the imaginary-part identity
    /// `W_I = (conj(zeta) - V*)^-1 (I - V*V) (zeta - V)^-1`.
    pub identity_residual: f64,
}

/// Splits `V` into unitary plus small via the Cayley transform at a
/// unimodular `zeta` off the spectrum: `W = i(zeta+V)(zeta-V)^-1`, the
/// Hermitian part of `W` is Cayley-inverted back to the unitary `U`, and
/// `B = V - U` inherits the size of `I - V*V`.
pub fn cayley_pair(v: &MatrixOperator, zeta: Complex64) -> Result<CayleyPair> {
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::BadParameter(format!("zeta must be unimodular, got |zeta| = {}", zeta.norm())));
    }
    let n = v.dim();
    let id = DMatrix::<Complex64>::identity(n, n);
    let zv = &id * zeta - v.matrix();
    let smin = zv
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if smin <= 1e-12 * v.operator_norm().max(1.0) {
        return Err(Error::OutsideDomain(format!(
            "zeta is on the spectrum of V (sigma_min = {smin:.3e})"
        )));
    }
    let zv_inv = zv.clone().try_inverse().ok_or(Error::RankDeficient { condition: f64::INFINITY })?;
    let w = ((&id * zeta + v.matrix()) * &zv_inv) * Complex64::new(0.0, 1.0);

    let w_adj = w.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let w_r = (&w + &w_adj) * half;
    let w_i = (&w - &w_adj) * (half / Complex64::new(0.0, 1.0));

    // The closed form for the Hermitian defect of W.
    let zv_adj_inv = zv.adjoint().try_inverse().ok_or(Error::RankDeficient { condition: f64::INFINITY })?;
    let defect = &id - v.matrix().adjoint() * v.matrix();
    let rhs = zv_adj_inv * defect * &zv_inv;
    let identity_residual = frob(&(&w_i - rhs));
    let tol = 1e-10 * frob(&w_i).max(1.0);
    if identity_residual > tol {
        return Err(Error::NumericalFailure(format!(
            "Cayley identity residual {identity_residual:.3e} above {tol:.3e}"
        )));
    }

    // Invert the Cayley map on the Hermitian part: U = zeta (W_R + i)^-1 (W_R - i).
    let i_unit = Complex64::new(0.0, 1.0);
    let plus = &w_r + &id * i_unit;
    let minus = &w_r - &id * i_unit;
    let u_mat = (plus.try_inverse().ok_or(Error::RankDeficient { condition: f64::INFINITY })? * minus) * zeta;
    let u = MatrixOperator::new(u_mat, OperatorTag::Unitary)?;
    let b = MatrixOperator::general(v.matrix() - u.matrix())?;
    Ok(CayleyPair { w, u, b, identity_residual })
}

/// Midpoint discretization of `[Af](x) = a0(x) f(x) + int_0^1 K(x,y) f(y) dy`
/// on `n` points: `A0 = diag(a0(x_i))` and `B_ij = K(x_i, x_j)/n`.
pub fn example3_operator(
    a0: impl Fn(f64) -> Complex64,
    kernel: impl Fn(f64, f64) -> Complex64,
    n: usize,
) -> Result<(MatrixOperator, MatrixOperator)> {
    if n == 0 {
        return Err(Error::BadParameter("discretization needs at least one point".into()));
    }
    let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let diag = MatrixOperator::diagonal(xs.iter().map(|&x| a0(x)).collect())?;
    let b = DMatrix::from_fn(n, n, |i, j| kernel(xs[i], xs[j]) / n as f64);
    Ok((diag, MatrixOperator::general(b)?))
}
