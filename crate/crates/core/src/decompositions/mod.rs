//! SVD, Hartwig–Spindelböck decomposition, the Hung–Markham block formula
//! for the Moore–Penrose inverse and the diamond canonical pair form.
//!
//! Everything here except [`partitioned_mp`] is float-only; exact inputs are
//! rejected with [`Error::ExactUnsupported`](crate::Error::ExactUnsupported).

mod canonical;
mod hs;
pub mod svd;

pub use canonical::{diamond_canonical_pair, CanonicalPair};
pub use hs::{hartwig_spindelbock, HsForm};
pub use svd::{svd, SvdForm};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tol};

/// Moore–Penrose inverse of the square matrix `M = [[P, Q], [0, 0]]`,
/// assembled as `M† = [[P*R†, 0], [Q*R†, 0]]` with `R = PP* + QQ*`.
///
/// The number of zero rows is chosen so that `M` is square; use
/// [`partitioned_mp_padded`] to pick it explicitly.
pub fn partitioned_mp<S: Scalar>(p: &Matrix<S>, q: &Matrix<S>, tol: &Tol) -> Result<Matrix<S>> {
    let width = p.cols() + q.cols();
    if p.rows() > width {
        return Err(Error::InvalidArgument(format!(
            "[P Q] has {} rows but only {width} columns; M cannot be square",
            p.rows()
        )));
    }
    partitioned_mp_padded(p, q, width - p.rows(), tol)
}

pub fn partitioned_mp_padded<S: Scalar>(
    p: &Matrix<S>,
    q: &Matrix<S>,
    zero_rows: usize,
    tol: &Tol,
) -> Result<Matrix<S>> {
    if p.rows() != q.rows() {
        return Err(Error::ShapeMismatch {
            left: p.shape(),
            right: q.shape(),
        });
    }
    let r = &(p * &p.adjoint()) + &(q * &q.adjoint());
    let r_pinv = S::pinv(&r, tol);
    let top = &p.adjoint() * &r_pinv;
    let bottom = &q.adjoint() * &r_pinv;
    Ok(top
        .vstack(&bottom)
        .pad_to(p.cols() + q.cols(), p.rows() + zero_rows))
}

/// `[[P, Q], [0, 0]]` with `zero_rows` zero rows.
pub fn partitioned_matrix<S: Scalar>(p: &Matrix<S>, q: &Matrix<S>, zero_rows: usize) -> Matrix<S> {
    p.hstack(q).pad_to(p.rows() + zero_rows, p.cols() + q.cols())
}
