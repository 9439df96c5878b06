//! SVD-based kernels for the double-precision backend.

use crate::decompositions::svd::jacobi_svd;
use crate::matrix::Matrix;
use crate::scalar::{Tol, C64};

/// Number of singular values above the rank cutoff.
pub fn rank(a: &Matrix<C64>, tol: &Tol) -> usize {
    let svd = jacobi_svd(a);
    numerical_rank(&svd.singular_values, a.rows(), a.cols(), tol)
}

pub(crate) fn numerical_rank(sigma: &[f64], rows: usize, cols: usize, tol: &Tol) -> usize {
    numerical_rank_at(sigma, rows, cols, 0.0, tol)
}

/// Cutoff taken relative to `max(σ_max, scale)`.
pub(crate) fn numerical_rank_at(
    sigma: &[f64],
    rows: usize,
    cols: usize,
    scale: f64,
    tol: &Tol,
) -> usize {
    let reference = sigma.first().copied().unwrap_or(0.0).max(scale);
    if reference == 0.0 {
        return 0;
    }
    let cutoff = tol.rank_cutoff(rows, cols, reference);
    sigma.iter().take_while(|&&s| s > cutoff).count()
}

pub fn rank_at_scale(a: &Matrix<C64>, scale: f64, tol: &Tol) -> usize {
    let svd = jacobi_svd(a);
    numerical_rank_at(&svd.singular_values, a.rows(), a.cols(), scale, tol)
}

/// Orthonormal basis of the column space: the leading left singular vectors.
pub fn column_basis(a: &Matrix<C64>, tol: &Tol) -> Matrix<C64> {
    column_basis_at_scale(a, 0.0, tol)
}

pub fn column_basis_at_scale(a: &Matrix<C64>, scale: f64, tol: &Tol) -> Matrix<C64> {
    let svd = jacobi_svd(a);
    let r = numerical_rank_at(&svd.singular_values, a.rows(), a.cols(), scale, tol);
    svd.u.submatrix(0, a.rows(), 0, r)
}

/// `A = (U_r Σ_r)(V_r*)`
pub fn rank_factorization(a: &Matrix<C64>, tol: &Tol) -> (Matrix<C64>, Matrix<C64>) {
    let svd = jacobi_svd(a);
    let r = numerical_rank(&svd.singular_values, a.rows(), a.cols(), tol);
    let ur = svd.u.submatrix(0, a.rows(), 0, r);
    let sigma: Vec<C64> = svd.singular_values[..r].iter().map(|&s| C64::new(s, 0.0)).collect();
    let vr = svd.v.submatrix(0, a.cols(), 0, r);
    (&ur * &Matrix::from_diag(&sigma), vr.adjoint())
}

/// `A† = V_r Σ_r⁻¹ U_r*`
pub fn pinv(a: &Matrix<C64>, tol: &Tol) -> Matrix<C64> {
    let svd = jacobi_svd(a);
    let r = numerical_rank(&svd.singular_values, a.rows(), a.cols(), tol);
    let mut out = Matrix::zeros(a.cols(), a.rows());
    for k in 0..r {
        let inv = 1.0 / svd.singular_values[k];
        for i in 0..a.cols() {
            let vik = svd.v[(i, k)] * inv;
            for j in 0..a.rows() {
                out[(i, j)] += vik * svd.u[(j, k)].conj();
            }
        }
    }
    out
}

pub fn inverse(a: &Matrix<C64>, tol: &Tol) -> Option<Matrix<C64>> {
    if !a.is_square() || rank(a, tol) < a.rows() {
        return None;
    }
    Some(pinv(a, tol))
}
