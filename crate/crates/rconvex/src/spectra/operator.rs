//! Dense complex matrices with structural tags, eigenvalue extraction,
//! and Schatten norms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structural claim about a matrix, verified at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorTag {
    SelfAdjoint,
    Normal,
    Unitary,
    General,
}

/// A square complex matrix together with its verified structure tag.
///
/// The tag drives algorithm choice downstream: self-adjoint matrices use
/// the Hermitian eigensolver, normal ones get exact resolvent profiles.
#[derive(Debug, Clone)]
pub struct MatrixOperator {
    mat: DMatrix<Complex64>,
    tag: OperatorTag,
}

fn frob(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
}

impl MatrixOperator {
    /// Wraps `mat` after checking the structural claim of `tag`:
    /// self-adjointness to 1e-12 relative, normality to 1e-10 relative,
    /// unitarity to 1e-10 absolute (all Frobenius).
    pub fn new(mat: DMatrix<Complex64>, tag: OperatorTag) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::BadParameter(format!(
                "operator must be square and nonempty, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::BadParameter("operator entries must be finite".into()));
        }
        let scale = frob(&mat);
        match tag {
            OperatorTag::SelfAdjoint => {
                let dev = frob(&(&mat - mat.adjoint()));
                let tol = 1e-12 * scale;
                if dev > tol {
                    return Err(Error::TagViolation { tag: "self_adjoint", deviation: dev, tolerance: tol });
                }
            }
            OperatorTag::Normal => {
                let dev = frob(&(&mat * mat.adjoint() - mat.adjoint() * &mat));
                let tol = 1e-10 * scale * scale;
                if dev > tol {
                    return Err(Error::TagViolation { tag: "normal", deviation: dev, tolerance: tol });
                }
            }
            OperatorTag::Unitary => {
                let dev = frob(&(mat.adjoint() * &mat - DMatrix::identity(mat.nrows(), mat.ncols())));
                if dev > 1e-10 {
                    return Err(Error::TagViolation { tag: "unitary", deviation: dev, tolerance: 1e-10 });
                }
            }
            OperatorTag::General => {}
        }
        Ok(MatrixOperator { mat, tag })
    }

    pub fn general(mat: DMatrix<Complex64>) -> Result<Self> {
        Self::new(mat, OperatorTag::General)
    }

    pub fn self_adjoint(mat: DMatrix<Complex64>) -> Result<Self> {
        Self::new(mat, OperatorTag::SelfAdjoint)
    }

    pub fn normal(mat: DMatrix<Complex64>) -> Result<Self> {
        Self::new(mat, OperatorTag::Normal)
    }

    pub fn unitary(mat: DMatrix<Complex64>) -> Result<Self> {
        Self::new(mat, OperatorTag::Unitary)
    }

    /// Diagonal operator; the tag is inferred (real entries give
    /// SelfAdjoint, unimodular give Unitary, otherwise Normal).
    pub fn diagonal(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::BadParameter("diagonal operator needs entries".into()));
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::BadParameter("operator entries must be finite".into()));
        }
        let tag = if entries.iter().all(|e| e.im == 0.0) {
            OperatorTag::SelfAdjoint
        } else if entries.iter().all(|e| (e.norm() - 1.0).abs() <= 1e-12) {
            OperatorTag::Unitary
        } else {
            OperatorTag::Normal
        };
        let n = entries.len();
        let mut mat = DMatrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            mat[(i, i)] = e;
        }
        Ok(MatrixOperator { mat, tag })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn tag(&self) -> OperatorTag {
        self.tag
    }

    /// True when every off-diagonal entry is exactly zero; diagonal
    /// operators short-circuit to exact eigenvalues and singular values.
    pub fn is_exactly_diagonal(&self) -> bool {
        for i in 0..self.mat.nrows() {
            for j in 0..self.mat.ncols() {
                if i != j && self.mat[(i, j)] != Complex64::new(0.0, 0.0) {
                    return false;
                }
            }
        }
        true
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Singular values in decreasing order; exact for diagonal matrices.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = if self.is_exactly_diagonal() {
            (0..self.dim()).map(|i| self.mat[(i, i)].norm()).collect()
        } else {
            self.mat.clone().svd(false, false).singular_values.iter().copied().collect()
        };
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// All eigenvalues with multiplicity, sorted by real then imaginary
    /// part. Diagonal matrices return their entries exactly; self-adjoint
    /// ones go through the Hermitian solver; the rest through a complex
    /// Schur decomposition.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let mut eigs: Vec<Complex64> = if self.is_exactly_diagonal() {
            (0..self.dim()).map(|i| self.mat[(i, i)]).collect()
        } else if self.tag == OperatorTag::SelfAdjoint {
            nalgebra::SymmetricEigen::new(self.mat.clone())
                .eigenvalues
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect()
        } else {
            let schur = self
                .mat
                .clone()
                .try_schur(1e-14, 100_000)
                .ok_or_else(|| Error::EigenFailed(format!("Schur iteration stalled at n = {}", self.dim())))?;
            schur
                .eigenvalues()
                .ok_or_else(|| Error::EigenFailed("Schur form is not triangular".into()))?
                .iter()
                .copied()
                .collect()
        };
        if eigs.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::EigenFailed("non-finite eigenvalue".into()));
        }
        eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(eigs)
    }
}

/// `(sum of s_n^q)^{1/q}` over the singular values; `q >= 1`.
pub fn schatten_norm(b: &MatrixOperator, q: f64) -> Result<f64> {
    Ok(schatten_power(b, q)?.powf(1.0 / q))
}

/// `sum of s_n^q` directly, so `ratio = sum / schatten_power` avoids the
/// lossy `(x^{1/q})^q` round trip in saturation checks.
pub fn schatten_power(b: &MatrixOperator, q: f64) -> Result<f64> {
    if !q.is_finite() || q < 1.0 {
        return Err(Error::BadParameter(format!("Schatten exponent must be >= 1, got {q}")));
    }
    Ok(b.singular_values().iter().map(|s| s.powf(q)).sum())
}
