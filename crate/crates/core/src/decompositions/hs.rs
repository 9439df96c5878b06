use serde::Serialize;

use super::svd::jacobi_svd;
use crate::error::{Error, Result};
use crate::float::numerical_rank;
use crate::matrix::Matrix;
use crate::scalar::{Backend, Scalar, Tol, C64};

/// `B = U · [[ΣK, ΣL], [0, 0]] · U*` with `KK* + LL* = I_r`.
#[derive(Clone, Debug, Serialize)]
pub struct HsForm {
    pub u: Matrix<C64>,
    /// Positive, non-increasing.
    pub sigma: Vec<f64>,
    pub k: Matrix<C64>,
    pub l: Matrix<C64>,
    pub rank: usize,
}

impl HsForm {
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    pub fn sigma_matrix(&self) -> Matrix<C64> {
        diag_real(&self.sigma)
    }

    pub fn sigma_inv_matrix(&self) -> Matrix<C64> {
        diag_real(&self.sigma.iter().map(|s| 1.0 / s).collect::<Vec<_>>())
    }

    /// `[K L]`, an r×n matrix with orthonormal rows.
    pub fn kl(&self) -> Matrix<C64> {
        self.k.hstack(&self.l)
    }

    /// `U · [[top], [0]] · U*` for an r×n block `top`.
    pub fn conjugate_top(&self, top: &Matrix<C64>) -> Matrix<C64> {
        let n = self.n();
        Matrix::chain(&[&self.u, &top.pad_to(n, n), &self.u.adjoint()])
    }

    /// `U · [[left, 0]] · U*` for an n×r block `left`.
    pub fn conjugate_left(&self, left: &Matrix<C64>) -> Matrix<C64> {
        let n = self.n();
        Matrix::chain(&[&self.u, &left.pad_to(n, n), &self.u.adjoint()])
    }

    pub fn reconstruct(&self) -> Matrix<C64> {
        self.conjugate_top(&(&self.sigma_matrix() * &self.kl()))
    }

    /// `B† = U · [[K*Σ⁻¹, 0], [L*Σ⁻¹, 0]] · U*`
    pub fn mp_inverse(&self) -> Matrix<C64> {
        self.conjugate_left(&(&self.kl().adjoint() * &self.sigma_inv_matrix()))
    }

    /// Frobenius norm of `KK* + LL* − I_r`.
    pub fn orthonormality_defect(&self) -> f64 {
        let kl = self.kl();
        (&(&kl * &kl.adjoint()) - &Matrix::identity(self.rank)).frobenius()
    }
}

pub(crate) fn diag_real(values: &[f64]) -> Matrix<C64> {
    Matrix::from_diag(&values.iter().map(|&s| C64::new(s, 0.0)).collect::<Vec<_>>())
}

/// Hartwig–Spindelböck decomposition of a nonzero square matrix.
///
/// With `B = U₁ [[D, 0], [0, 0]] V₁*` an SVD, `U = U₁`, `Σ = D` and
/// `[K L]` the first `r` rows of `V₁*U₁`.
pub fn hartwig_spindelbock<S: Scalar>(b: &Matrix<S>, tol: &Tol) -> Result<HsForm> {
    if S::BACKEND == Backend::Exact {
        return Err(Error::ExactUnsupported("hartwig_spindelbock"));
    }
    if !b.is_square() {
        return Err(Error::NotSquare(b.rows(), b.cols()));
    }
    let b = b.to_float();
    let n = b.rows();
    let svd = jacobi_svd(&b);
    let r = numerical_rank(&svd.singular_values, n, n, tol);
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    let w = &svd.v.adjoint() * &svd.u;
    Ok(HsForm {
        sigma: svd.singular_values[..r].to_vec(),
        k: w.submatrix(0, r, 0, r),
        l: w.submatrix(0, r, r, n),
        u: svd.u,
        rank: r,
    })
}
