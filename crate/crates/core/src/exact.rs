//! Exact Gauss–Jordan elimination over the Gaussian rationals.

use crate::matrix::Matrix;
use crate::scalar::{GaussRational, Scalar};

type Q = GaussRational;

pub struct Rref {
    /// Reduced row echelon form of the input.
    pub reduced: Matrix<Q>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan reduction, pivoting on the first nonzero entry of each column.
pub fn rref(a: &Matrix<Q>) -> Rref {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = Q::one() / m[(r, c)].clone();
        for j in c..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                if m[(r, j)].is_zero() {
                    continue;
                }
                let d = &f * &m[(r, j)];
                m[(i, j)] = m[(i, j)].clone() - d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: m, pivots }
}

/// `A = C·R` with `C` the pivot columns of `A` and `R` the nonzero rows of
/// its reduced form.
pub fn rank_factorization(a: &Matrix<Q>) -> (Matrix<Q>, Matrix<Q>) {
    let Rref { reduced, pivots } = rref(a);
    let r = pivots.len();
    (a.select_columns(&pivots), reduced.submatrix(0, r, 0, a.cols()))
}

pub fn inverse(a: &Matrix<Q>) -> Option<Matrix<Q>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let aug = rref(&a.hstack(&Matrix::identity(n)));
    if aug.pivots.len() < n || aug.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.reduced.submatrix(0, n, n, 2 * n))
}

/// `A† = R*(RR*)⁻¹(C*C)⁻¹C*` from a full-rank factorization `A = CR`.
pub fn pinv(a: &Matrix<Q>) -> Matrix<Q> {
    let (c, r) = rank_factorization(a);
    if r.rows() == 0 {
        return Matrix::zeros(a.cols(), a.rows());
    }
    let rh = r.adjoint();
    let ch = c.adjoint();
    let rr_inv = inverse(&(&r * &rh)).expect("R has full row rank");
    let cc_inv = inverse(&(&ch * &c)).expect("C has full column rank");
    Matrix::chain(&[&rh, &rr_inv, &cc_inv, &ch])
}
