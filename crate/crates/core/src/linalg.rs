//! Ranks and subspace computations.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tol};

pub fn rank<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> usize {
    S::rank(a, tol)
}

/// A subspace of `S^ambient`, stored as the columns of an `ambient x k`
/// matrix of rank `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis<S> {
    vectors: Matrix<S>,
}

impl<S: Scalar> SubspaceBasis<S> {
    /// Fails if the columns are linearly dependent.
    pub fn new(vectors: Matrix<S>, tol: &Tol) -> Result<Self> {
        if S::rank(&vectors, tol) != vectors.cols() {
            return Err(Error::InvalidArgument(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(SubspaceBasis { vectors })
    }

    pub fn empty(ambient: usize) -> Self {
        SubspaceBasis {
            vectors: Matrix::zeros(ambient, 0),
        }
    }

    pub fn ambient(&self) -> usize {
        self.vectors.rows()
    }

    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    pub fn vectors(&self) -> &Matrix<S> {
        &self.vectors
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        Ok(())
    }
}

/// `R(A)`
pub fn column_space<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> SubspaceBasis<S> {
    SubspaceBasis {
        vectors: S::column_basis(a, tol),
    }
}

/// `R(A)` for a matrix computed from operands of Frobenius norm about
/// `scale`; see [`Scalar::rank_at_scale`].
pub fn column_space_at_scale<S: Scalar>(a: &Matrix<S>, scale: f64, tol: &Tol) -> SubspaceBasis<S> {
    SubspaceBasis {
        vectors: S::column_basis_at_scale(a, scale, tol),
    }
}

/// `rank(B − A)`, with the float cutoff measured against the operands.
pub fn rank_of_difference<S: Scalar>(b: &Matrix<S>, a: &Matrix<S>, tol: &Tol) -> usize {
    S::rank_at_scale(&(b - a), a.frobenius().max(b.frobenius()), tol)
}

/// `S ⊆ T`, decided column by column as `rank([T | s]) == rank(T)`.
pub fn subspace_leq<S: Scalar>(
    s: &SubspaceBasis<S>,
    t: &SubspaceBasis<S>,
    tol: &Tol,
) -> Result<bool> {
    s.check_ambient(t)?;
    let rt = S::rank(&t.vectors, tol);
    Ok((0..s.dim()).all(|j| {
        let col = s.vectors.submatrix(0, s.ambient(), j, j + 1);
        S::rank(&t.vectors.hstack(&col), tol) == rt
    }))
}

/// `dim(S ∩ T) = dim S + dim T − rank([S | T])`
pub fn subspace_intersection_dim<S: Scalar>(
    s: &SubspaceBasis<S>,
    t: &SubspaceBasis<S>,
    tol: &Tol,
) -> Result<usize> {
    s.check_ambient(t)?;
    let joint = S::rank(&s.vectors.hstack(&t.vectors), tol);
    Ok((s.dim() + t.dim()).saturating_sub(joint))
}

/// Basis of `S + T`.
pub fn subspace_sum<S: Scalar>(
    s: &SubspaceBasis<S>,
    t: &SubspaceBasis<S>,
    tol: &Tol,
) -> Result<SubspaceBasis<S>> {
    s.check_ambient(t)?;
    Ok(column_space(&s.vectors.hstack(&t.vectors), tol))
}

/// Whether `R(A+B) = R(A) + R(B)`. Since `R(A+B) ⊆ R(A) + R(B)` always, this
/// is decided by comparing `rank(A+B)` with `rank([A | B])`.
pub fn range_sum_check<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, tol: &Tol) -> Result<bool> {
    a.ensure_same_shape(b)?;
    let sum = S::rank_at_scale(&(a + b), a.frobenius().max(b.frobenius()), tol);
    Ok(sum == S::rank(&a.hstack(b), tol))
}
