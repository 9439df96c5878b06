//! Diamond predecessors of a square matrix parametrized by idempotents, their
//! closed-form Moore–Penrose inverses, and the reverse order law, bi-dagger
//! and dagger-isotonicity criteria.
//!
//! With `B = U [[ΣK, ΣL], [0, 0]] U*` in Hartwig–Spindelböck form, every
//! `A ≤⋄ B` is `A = U [[XK, XL], [0, 0]] U*` with `X = (Σ⁻¹T)†` for a unique
//! idempotent r×r matrix `T`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decompositions::{hartwig_spindelbock, HsForm};
use crate::error::{Error, Result};
use crate::geninv::{is_idempotent, moore_penrose};
use crate::matrix::Matrix;
use crate::orders::{leq_diamond, OrderConfig};
use crate::scalar::{Scalar, Tol, C64};

/// `T = X(YX)⁻¹Y` for random r×k `X` and k×r `Y`, an idempotent of rank `k`.
///
/// Draws are repeated until `YX` is invertible and `‖T‖_F ≤ 4r`, which keeps
/// the float backend away from ill-conditioned idempotents.
pub fn random_idempotent<S: Scalar, R: Rng + ?Sized>(
    r: usize,
    k: usize,
    rng: &mut R,
) -> Result<Matrix<S>> {
    if k > r {
        return Err(Error::InvalidArgument(format!(
            "idempotent rank {k} exceeds size {r}"
        )));
    }
    if k == 0 {
        return Ok(Matrix::zeros(r, r));
    }
    if k == r {
        return Ok(Matrix::identity(r));
    }
    let tol = Tol::default();
    let bound = 4.0 * r as f64;
    for _ in 0..10_000 {
        let x = Matrix::from_fn(r, k, |_, _| S::sample(rng));
        let y = Matrix::from_fn(k, r, |_, _| S::sample(rng));
        let Some(inv) = S::inverse(&(&y * &x), &tol) else {
            continue;
        };
        let t = Matrix::chain(&[&x, &inv, &y]);
        if t.frobenius() <= bound {
            return Ok(t);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no well-conditioned idempotent of size {r} and rank {k} found"
    )))
}

pub fn random_idempotent_seeded<S: Scalar>(r: usize, k: usize, seed: u64) -> Result<Matrix<S>> {
    random_idempotent(r, k, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn check_idempotent(hs: &HsForm, t: &Matrix<C64>, tol: &Tol) -> Result<()> {
    if t.shape() != (hs.rank, hs.rank) {
        return Err(Error::ShapeMismatch {
            left: (hs.rank, hs.rank),
            right: t.shape(),
        });
    }
    if !is_idempotent(t, tol) {
        return Err(Error::NotIdempotent(Tol::relative_residual(&(t * t), t)));
    }
    Ok(())
}

/// `(Σ⁻¹T)†`
fn core_block(hs: &HsForm, t: &Matrix<C64>, tol: &Tol) -> Matrix<C64> {
    moore_penrose(&(&hs.sigma_inv_matrix() * t), tol)
}

/// `A = U [[(Σ⁻¹T)†K, (Σ⁻¹T)†L], [0, 0]] U*`
pub fn diamond_predecessor(b: &Matrix<C64>, t: &Matrix<C64>, tol: &Tol) -> Result<Matrix<C64>> {
    predecessor_from_hs(&hartwig_spindelbock(b, tol)?, t, tol)
}

pub fn predecessor_from_hs(hs: &HsForm, t: &Matrix<C64>, tol: &Tol) -> Result<Matrix<C64>> {
    check_idempotent(hs, t, tol)?;
    Ok(hs.conjugate_top(&(&core_block(hs, t, tol) * &hs.kl())))
}

/// Closed form `A† = U [[K*Σ⁻¹T, 0], [L*Σ⁻¹T, 0]] U*`.
pub fn predecessor_mp(b: &Matrix<C64>, t: &Matrix<C64>, tol: &Tol) -> Result<Matrix<C64>> {
    predecessor_mp_from_hs(&hartwig_spindelbock(b, tol)?, t, tol)
}

pub fn predecessor_mp_from_hs(hs: &HsForm, t: &Matrix<C64>, tol: &Tol) -> Result<Matrix<C64>> {
    check_idempotent(hs, t, tol)?;
    Ok(hs.conjugate_left(&Matrix::chain(&[
        &hs.kl().adjoint(),
        &hs.sigma_inv_matrix(),
        t,
    ])))
}

/// Inverts the predecessor parametrization: with `G = U*AU`, the top block
/// row equals `X[K L]`, so `X = G_top [K L]*` and `T = Σ X†`.
pub fn recover_idempotent(a: &Matrix<C64>, hs: &HsForm, tol: &Tol) -> Result<Matrix<C64>> {
    let n = hs.n();
    if a.shape() != (n, n) {
        return Err(Error::ShapeMismatch {
            left: (n, n),
            right: a.shape(),
        });
    }
    let r = hs.rank;
    let g = Matrix::chain(&[&hs.u.adjoint(), a, &hs.u]);
    let bottom = g.submatrix(r, n, 0, n);
    let scale = 1.0 + a.frobenius();
    if bottom.frobenius() > tol.eq * scale {
        return Err(Error::NotPredecessor(bottom.frobenius() / scale));
    }
    let x = &g.submatrix(0, r, 0, n) * &hs.kl().adjoint();
    let t = &hs.sigma_matrix() * &moore_penrose(&x, tol);
    let back = match predecessor_from_hs(hs, &t, tol) {
        Ok(back) => back,
        Err(Error::NotIdempotent(res)) => return Err(Error::NotPredecessor(res)),
        Err(e) => return Err(e),
    };
    if !C64::mat_eq(&back, a, tol) {
        return Err(Error::NotPredecessor(Tol::relative_residual(&back, a)));
    }
    Ok(t)
}

/// A property evaluated both directly and through its HS criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionPair {
    pub direct: bool,
    pub criterion: bool,
}

impl CriterionPair {
    pub fn agree(&self) -> bool {
        self.direct == self.criterion
    }
}

/// `(AB)† = B†A†` against `((Σ⁻¹T)†KΣ)† = Σ⁻¹K*Σ⁻¹T`.
///
/// Requires `A ≤⋄ B` with `A` recoverable as a predecessor of `B`.
pub fn reverse_order_law(
    a: &Matrix<C64>,
    b: &Matrix<C64>,
    cfg: &OrderConfig,
) -> Result<CriterionPair> {
    let tol = &cfg.tol;
    if !leq_diamond(a, b, cfg)?.verdict {
        return Err(Error::NotInRelation("diamond"));
    }
    let hs = hartwig_spindelbock(b, tol)?;
    let t = recover_idempotent(a, &hs, tol)?;
    Ok(reverse_order_law_from_hs(a, b, &hs, &t, tol))
}

fn reverse_order_law_from_hs(
    a: &Matrix<C64>,
    b: &Matrix<C64>,
    hs: &HsForm,
    t: &Matrix<C64>,
    tol: &Tol,
) -> CriterionPair {
    let direct = C64::mat_eq(
        &moore_penrose(&(a * b), tol),
        &(&moore_penrose(b, tol) * &moore_penrose(a, tol)),
        tol,
    );
    let sigma = hs.sigma_matrix();
    let sigma_inv = hs.sigma_inv_matrix();
    let lhs = moore_penrose(&Matrix::chain(&[&core_block(hs, t, tol), &hs.k, &sigma]), tol);
    let rhs = Matrix::chain(&[&sigma_inv, &hs.k.adjoint(), &sigma_inv, t]);
    CriterionPair {
        direct,
        criterion: C64::mat_eq(&lhs, &rhs, tol),
    }
}

/// `(B²)† = (B†)²` against `(ΣKΣ)† = Σ⁻¹K*Σ⁻¹`. The zero matrix has no HS
/// form and is rejected.
pub fn is_bidagger(b: &Matrix<C64>, tol: &Tol) -> Result<CriterionPair> {
    let hs = hartwig_spindelbock(b, tol)?;
    let bp = moore_penrose(b, tol);
    let direct = C64::mat_eq(&moore_penrose(&(b * b), tol), &(&bp * &bp), tol);
    let sigma = hs.sigma_matrix();
    let sigma_inv = hs.sigma_inv_matrix();
    let lhs = moore_penrose(&Matrix::chain(&[&sigma, &hs.k, &sigma]), tol);
    let rhs = Matrix::chain(&[&sigma_inv, &hs.k.adjoint(), &sigma_inv]);
    Ok(CriterionPair {
        direct,
        criterion: C64::mat_eq(&lhs, &rhs, tol),
    })
}

/// `A† ≤⋄ B†` for the predecessor `A` built from `T`, against
/// `T(T* − I)Σ⁻²T = 0`.
pub fn dagger_isotone(
    b: &Matrix<C64>,
    t: &Matrix<C64>,
    cfg: &OrderConfig,
) -> Result<CriterionPair> {
    let hs = hartwig_spindelbock(b, &cfg.tol)?;
    dagger_isotone_from_hs(b, &hs, t, cfg)
}

fn dagger_isotone_from_hs(
    b: &Matrix<C64>,
    hs: &HsForm,
    t: &Matrix<C64>,
    cfg: &OrderConfig,
) -> Result<CriterionPair> {
    let tol = &cfg.tol;
    let a = predecessor_from_hs(hs, t, tol)?;
    let direct = leq_diamond(&moore_penrose(&a, tol), &moore_penrose(b, tol), cfg)?.verdict;
    let sigma_inv = hs.sigma_inv_matrix();
    let s2 = &sigma_inv * &sigma_inv;
    // T(T* − I)Σ⁻²T = 0 compared as TT*Σ⁻²T = TΣ⁻²T, so the tolerance
    // scales with the size of the two terms.
    let lhs = Matrix::chain(&[t, &t.adjoint(), &s2, t]);
    let rhs = Matrix::chain(&[t, &s2, t]);
    Ok(CriterionPair {
        direct,
        criterion: C64::mat_eq(&lhs, &rhs, tol),
    })
}

/// A base matrix, its HS form, an idempotent and the predecessor they define.
#[derive(Clone, Debug, Serialize)]
pub struct PredecessorSpec {
    pub b: Matrix<C64>,
    pub hs: HsForm,
    pub t: Matrix<C64>,
    pub a: Matrix<C64>,
}

impl PredecessorSpec {
    pub fn new(b: Matrix<C64>, t: Matrix<C64>, tol: &Tol) -> Result<Self> {
        let hs = hartwig_spindelbock(&b, tol)?;
        let a = predecessor_from_hs(&hs, &t, tol)?;
        Ok(PredecessorSpec { b, hs, t, a })
    }

    /// Uses a random idempotent of rank `k`.
    pub fn random<R: Rng + ?Sized>(b: Matrix<C64>, k: usize, rng: &mut R, tol: &Tol) -> Result<Self> {
        let hs = hartwig_spindelbock(&b, tol)?;
        let t = random_idempotent(hs.rank, k, rng)?;
        let a = predecessor_from_hs(&hs, &t, tol)?;
        Ok(PredecessorSpec { b, hs, t, a })
    }

    pub fn a_pinv(&self, tol: &Tol) -> Matrix<C64> {
        predecessor_mp_from_hs(&self.hs, &self.t, tol).expect("validated on construction")
    }

    pub fn reverse_order_law(&self, tol: &Tol) -> CriterionPair {
        reverse_order_law_from_hs(&self.a, &self.b, &self.hs, &self.t, tol)
    }

    pub fn dagger_isotone(&self, cfg: &OrderConfig) -> Result<CriterionPair> {
        dagger_isotone_from_hs(&self.b, &self.hs, &self.t, cfg)
    }
}
