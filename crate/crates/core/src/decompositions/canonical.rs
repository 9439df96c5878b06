use serde::Serialize;

use super::hs::{diag_real, hartwig_spindelbock};
use super::svd::jacobi_svd;
use crate::error::{Error, Result};
use crate::float::numerical_rank;
use crate::matrix::Matrix;
use crate::orders::{leq_diamond, OrderConfig};
use crate::scalar::{Backend, Scalar, Tol, C64};

/// Simultaneous form of a diamond pair `A ≤⋄ B`:
///
/// ```text
/// A = U [[C1, C2, 0], [0, 0, 0], [0, 0, 0]] V*
/// B = U [[D1, D2, 0], [D3, D4, 0], [0, 0, 0]] V*
/// ```
///
/// with `C1C1* + C2C2* = C1D1* + C2D2*` nonsingular. Row/column blocks have
/// sizes `t = rank(A)`, `r − t` and the remainder, where `r = rank(B)`.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalPair {
    pub u: Matrix<C64>,
    pub v: Matrix<C64>,
    pub c1: Matrix<C64>,
    pub c2: Matrix<C64>,
    pub d1: Matrix<C64>,
    pub d2: Matrix<C64>,
    pub d3: Matrix<C64>,
    pub d4: Matrix<C64>,
    pub rank_a: usize,
    pub rank_b: usize,
}

impl CanonicalPair {
    pub fn a_core(&self) -> Matrix<C64> {
        self.c1
            .hstack(&self.c2)
            .pad_to(self.u.rows(), self.v.rows())
    }

    pub fn b_core(&self) -> Matrix<C64> {
        Matrix::block2(&self.d1, &self.d2, &self.d3, &self.d4).pad_to(self.u.rows(), self.v.rows())
    }

    pub fn reconstruct_a(&self) -> Matrix<C64> {
        Matrix::chain(&[&self.u, &self.a_core(), &self.v.adjoint()])
    }

    pub fn reconstruct_b(&self) -> Matrix<C64> {
        Matrix::chain(&[&self.u, &self.b_core(), &self.v.adjoint()])
    }

    /// `C1C1* + C2C2*`
    pub fn gram(&self) -> Matrix<C64> {
        &(&self.c1 * &self.c1.adjoint()) + &(&self.c2 * &self.c2.adjoint())
    }

    /// `C1D1* + C2D2*`
    pub fn cross(&self) -> Matrix<C64> {
        &(&self.c1 * &self.d1.adjoint()) + &(&self.c2 * &self.d2.adjoint())
    }

    /// Whether both reconstructions, the block identity, nonsingularity and
    /// the rank condition on the D-blocks hold.
    pub fn verify(&self, a: &Matrix<C64>, b: &Matrix<C64>, tol: &Tol) -> bool {
        let gram = self.gram();
        let d = Matrix::block2(&self.d1, &self.d2, &self.d3, &self.d4);
        C64::mat_eq(&self.reconstruct_a(), a, tol)
            && C64::mat_eq(&self.reconstruct_b(), b, tol)
            && C64::mat_eq(&gram, &self.cross(), tol)
            && C64::rank(&gram, tol) == self.rank_a
            && C64::rank(&d, tol) == C64::rank(b, tol)
    }
}

/// Builds the canonical pair following the constructive proof: an SVD of
/// `B` forces `A` into its leading r×r block `A1`, and the
/// Hartwig–Spindelböck decomposition of `A1` supplies the inner rotation.
///
/// Rejects pairs outside the diamond relation and `A = 0`, for which the
/// block shapes degenerate.
pub fn diamond_canonical_pair<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<CanonicalPair> {
    if S::BACKEND == Backend::Exact {
        return Err(Error::ExactUnsupported("diamond_canonical_pair"));
    }
    if !leq_diamond(a, b, cfg)?.verdict {
        return Err(Error::NotInRelation("diamond"));
    }
    let tol = &cfg.tol;
    let (a, b) = (a.to_float(), b.to_float());
    let (m, n) = a.shape();

    let sb = jacobi_svd(&b);
    let r = numerical_rank(&sb.singular_values, m, n, tol);
    if r == 0 {
        // A ≤⋄ 0 forces A = 0.
        return Err(Error::ZeroMatrix);
    }
    let d = diag_real(&sb.singular_values[..r]);
    let a1 = Matrix::chain(&[&sb.u.adjoint(), &a, &sb.v]).submatrix(0, r, 0, r);
    let hs = hartwig_spindelbock(&a1, tol)?;
    let t = hs.rank;

    let u2 = &hs.u;
    let u = &sb.u * &Matrix::block_diag(u2, &Matrix::identity(m - r));
    let v = &sb.v * &Matrix::block_diag(u2, &Matrix::identity(n - r));

    let sigma = hs.sigma_matrix();
    let dblock = Matrix::chain(&[&u2.adjoint(), &d, u2]);
    Ok(CanonicalPair {
        c1: &sigma * &hs.k,
        c2: &sigma * &hs.l,
        d1: dblock.submatrix(0, t, 0, t),
        d2: dblock.submatrix(0, t, t, r),
        d3: dblock.submatrix(t, r, 0, t),
        d4: dblock.submatrix(t, r, t, r),
        u,
        v,
        rank_a: t,
        rank_b: r,
    })
}
