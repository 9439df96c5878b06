//! Moore–Penrose and inner inverses, orthogonal projectors.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tol};

/// Rank factorization on the exact backend, SVD on the float backend.
pub fn moore_penrose<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> Matrix<S> {
    S::pinv(a, tol)
}

/// Residuals of the four Penrose equations for a candidate `X`.
#[derive(Clone, Debug, Serialize)]
pub struct PenroseResiduals {
    /// Frobenius norms of `AXA−A`, `XAX−X`, `(AX)*−AX`, `(XA)*−XA`.
    pub norms: [f64; 4],
    /// Whether each equation holds (exactly, or within `tol.eq` relatively).
    pub holds: [bool; 4],
}

impl PenroseResiduals {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

pub fn penrose_residuals<S: Scalar>(
    a: &Matrix<S>,
    x: &Matrix<S>,
    tol: &Tol,
) -> Result<PenroseResiduals> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: x.shape(),
        });
    }
    let ax = a * x;
    let xa = x * a;
    let pairs = [
        (&ax * a, a.clone()),
        (&xa * x, x.clone()),
        (ax.adjoint(), ax.clone()),
        (xa.adjoint(), xa.clone()),
    ];
    let mut norms = [0.0; 4];
    let mut holds = [false; 4];
    for (k, (lhs, rhs)) in pairs.iter().enumerate() {
        norms[k] = (lhs - rhs).frobenius();
        holds[k] = S::mat_eq(lhs, rhs, tol);
    }
    Ok(PenroseResiduals { norms, holds })
}

/// `G = A† + W − A†AWAA†`, an inner inverse of `A` for every `W`; as `W`
/// ranges over all n×m matrices this sweeps `A{1}`.
pub fn inner_inverse<S: Scalar>(a: &Matrix<S>, w: &Matrix<S>, tol: &Tol) -> Result<Matrix<S>> {
    if w.shape() != (a.cols(), a.rows()) {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: w.shape(),
        });
    }
    let ap = moore_penrose(a, tol);
    Ok(inner_inverse_with(a, &ap, w))
}

pub(crate) fn inner_inverse_with<S: Scalar>(
    a: &Matrix<S>,
    a_pinv: &Matrix<S>,
    w: &Matrix<S>,
) -> Matrix<S> {
    let q = a_pinv * a;
    let p = a * a_pinv;
    let core = Matrix::chain(&[&q, w, &p]);
    &(a_pinv + w) - &core
}

/// Draws `count` inner inverses of `A` with `W` entries from [`Scalar::sample`].
pub fn sample_inner_inverses<S: Scalar, R: Rng + ?Sized>(
    a: &Matrix<S>,
    a_pinv: &Matrix<S>,
    count: usize,
    rng: &mut R,
) -> Vec<Matrix<S>> {
    (0..count)
        .map(|_| {
            let w = Matrix::from_fn(a.cols(), a.rows(), |_, _| S::sample(rng));
            inner_inverse_with(a, a_pinv, &w)
        })
        .collect()
}

/// `P_A = AA†`, the orthogonal projector onto `R(A)`.
pub fn projector_range<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> Matrix<S> {
    a * &moore_penrose(a, tol)
}

/// `Q_A = A†A`, the orthogonal projector onto `R(A*)`.
pub fn projector_rowspace<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> Matrix<S> {
    &moore_penrose(a, tol) * a
}

/// `A† = A*`
pub fn is_partial_isometry<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> bool {
    S::mat_eq(&moore_penrose(a, tol), &a.adjoint(), tol)
}

pub fn is_hermitian<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> bool {
    a.is_square() && S::mat_eq(a, &a.adjoint(), tol)
}

pub fn is_idempotent<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> bool {
    a.is_square() && S::mat_eq(&(a * a), a, tol)
}
