//! One-sided (Hestenes) Jacobi SVD for complex matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Backend, Scalar, C64};

const MAX_SWEEPS: usize = 80;

/// `A = U · diag(σ) · V*` with full unitary `U` (m×m) and `V` (n×n).
#[derive(Clone, Debug, Serialize)]
pub struct SvdForm {
    pub u: Matrix<C64>,
    /// Non-increasing, length `min(m, n)`.
    pub singular_values: Vec<f64>,
    pub v: Matrix<C64>,
}

impl SvdForm {
    /// `U · Σ · V*` with Σ the m×n diagonal of singular values.
    pub fn reconstruct(&self) -> Matrix<C64> {
        let (m, n) = (self.u.rows(), self.v.rows());
        let sigma = Matrix::from_fn(m, n, |i, j| {
            if i == j {
                C64::new(self.singular_values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Matrix::chain(&[&self.u, &sigma, &self.v.adjoint()])
    }
}

/// Singular value decomposition; the exact backend is rejected because
/// singular values are irrational in general.
pub fn svd<S: Scalar>(a: &Matrix<S>) -> Result<SvdForm> {
    if S::BACKEND == Backend::Exact {
        return Err(Error::ExactUnsupported("svd"));
    }
    Ok(jacobi_svd(&a.to_float()))
}

pub(crate) fn jacobi_svd(a: &Matrix<C64>) -> SvdForm {
    let (m, n) = a.shape();
    if m < n {
        let t = tall_svd(&a.adjoint());
        return SvdForm {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
    }
    tall_svd(a)
}

/// Requires `m >= n`.
fn tall_svd(a: &Matrix<C64>) -> SvdForm {
    let (m, n) = a.shape();
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate a phase into column q so that <w_p, w_q> is real.
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.iter().map(|c| norm_sqr(c).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable: ties keep input order.
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let smax = order.first().map_or(0.0, |&i| norms[i]);
    let floor = smax * m as f64 * f64::EPSILON;
    let mut ucols: Vec<Vec<C64>> = Vec::with_capacity(m);
    for &j in &order {
        if norms[j] > floor && norms[j] > 0.0 {
            let inv = 1.0 / norms[j];
            ucols.push(w[j].iter().map(|x| x * inv).collect());
        }
    }
    complete_orthonormal(&mut ucols, m);

    SvdForm {
        u: Matrix::from_columns(m, &ucols),
        singular_values: order.iter().map(|&j| norms[j]).collect(),
        v: Matrix::from_columns(n, &order.iter().map(|&j| v[j].clone()).collect::<Vec<_>>()),
    }
}

fn rotate(cols: &mut [Vec<C64>], p: usize, q: usize, phase: C64, c: f64, s: f64) {
    let unphase = phase.conj();
    for k in 0..cols[p].len() {
        let xp = cols[p][k];
        let xq = cols[q][k] * unphase;
        cols[p][k] = xp * c - xq * s;
        cols[q][k] = xp * s + xq * c;
    }
}

fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Extends orthonormal `cols` to a basis of C^dim using the standard basis,
/// taking candidates in index order (two Gram–Schmidt passes each).
pub(crate) fn complete_orthonormal(cols: &mut Vec<Vec<C64>>, dim: usize) {
    for e in 0..dim {
        if cols.len() == dim {
            break;
        }
        let mut x = vec![C64::new(0.0, 0.0); dim];
        x[e] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for c in cols.iter() {
                let d = dot(c, &x);
                for (xi, ci) in x.iter_mut().zip(c) {
                    *xi -= ci * d;
                }
            }
        }
        let nx = norm_sqr(&x).sqrt();
        if nx > 0.5 / (dim as f64).sqrt() {
            cols.push(x.into_iter().map(|z| z / nx).collect());
        }
    }
    debug_assert_eq!(cols.len(), dim);
}

/// Modified Gram–Schmidt on the columns of a square matrix; used to draw
/// unitaries from Gaussian matrices. Dependent columns are replaced by
/// standard-basis completions.
pub(crate) fn orthonormalize_columns(a: &Matrix<C64>) -> Matrix<C64> {
    let m = a.rows();
    let mut cols: Vec<Vec<C64>> = Vec::new();
    for j in 0..a.cols() {
        let mut x = a.column(j);
        for _ in 0..2 {
            for c in &cols {
                let d = dot(c, &x);
                for (xi, ci) in x.iter_mut().zip(c) {
                    *xi -= ci * d;
                }
            }
        }
        let nx = norm_sqr(&x).sqrt();
        if nx > 1e-10 {
            cols.push(x.into_iter().map(|z| z / nx).collect());
        }
    }
    complete_orthonormal(&mut cols, m);
    cols.truncate(a.cols().min(m));
    Matrix::from_columns(m, &cols)
}
