//! Seeded generators for test matrices and for pairs in each order.
//!
//! Pair generators build the relation in by construction, so fuzzing sees
//! plenty of true verdicts rather than the overwhelmingly false ones of
//! independent random pairs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::constructors::random_idempotent;
use crate::decompositions::svd::orthonormalize_columns;
use crate::geninv::moore_penrose;
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tol, C64};

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Real parts uniform on `{−2..2}`. With `imag`, about a quarter of the
/// entries also get an imaginary part from `{±1/2, ±1}`.
pub fn small_integer_matrix<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| {
        let re = rational(rng.random_range(-2..=2), 1);
        let im = if imag && rng.random_bool(0.25) {
            let (n, d) = [(-1, 1), (-1, 2), (1, 2), (1, 1)][rng.random_range(0..4)];
            rational(n, d)
        } else {
            rational(0, 1)
        };
        S::from_gauss(&re, &im)
    })
}

/// A product of small-integer factors, so of rank at most `rank`.
pub fn low_rank<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    rank: usize,
    imag: bool,
    rng: &mut R,
) -> Matrix<S> {
    let x: Matrix<S> = small_integer_matrix(rows, rank, imag, rng);
    let y: Matrix<S> = small_integer_matrix(rank, cols, imag, rng);
    &x * &y
}

/// `P·diag(units)` for a random permutation `P`, units drawn from `{±1, ±i}`.
/// Unitary on both backends.
pub fn signed_permutation<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<S> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        let (re, im) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.random_range(0..4)];
        m[(i, j)] = S::from_gauss(&rational(re, 1), &rational(im, 1));
    }
    m
}

fn full_rank_factor<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
) -> Matrix<S> {
    let tol = Tol::default();
    let want = rows.min(cols);
    loop {
        let m = small_integer_matrix(rows, cols, imag, rng);
        if S::rank(&m, &tol) == want {
            return m;
        }
    }
}

/// Disjoint row and column supports make `A*C = 0` and `CA* = 0`, so
/// `A ≤* A + C`; signed permutations then hide the block structure.
pub fn star_pair<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
) -> (Matrix<S>, Matrix<S>) {
    let split_rows = rng.random_range(0..=rows);
    let split_cols = rng.random_range(0..=cols);
    let a_block: Matrix<S> = small_integer_matrix(split_rows, split_cols, imag, rng);
    let c_block: Matrix<S> = small_integer_matrix(rows - split_rows, cols - split_cols, imag, rng);
    let a = a_block.pad_to(rows, cols);
    let b = Matrix::block_diag(&a_block, &c_block);
    let p = signed_permutation(rows, rng);
    let q = signed_permutation(cols, rng);
    (Matrix::chain(&[&p, &a, &q]), Matrix::chain(&[&p, &b, &q]))
}

/// `B = XY`, `A = XEY` with full-rank `X`, `Y` and idempotent `E`, so that
/// `B − A = X(I − E)Y` and the ranks add up.
pub fn minus_pair<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
) -> (Matrix<S>, Matrix<S>) {
    let r = rng.random_range(1..=rows.min(cols).max(1));
    let x: Matrix<S> = full_rank_factor(rows, r, imag, rng);
    let y: Matrix<S> = full_rank_factor(r, cols, imag, rng);
    let k = rng.random_range(0..=r);
    let e: Matrix<S> = random_idempotent(r, k, rng).expect("k ≤ r");
    (Matrix::chain(&[&x, &e, &y]), &x * &y)
}

/// Factors `B† = CR` and sets `A = (CER)†` for an idempotent `E`, so that
/// `A† ≤⁻ B†`, which is equivalent to `A ≤⋄ B`.
pub fn diamond_pair<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
) -> (Matrix<S>, Matrix<S>) {
    let tol = Tol::default();
    let r = rng.random_range(1..=rows.min(cols).max(1));
    let b: Matrix<S> = low_rank(rows, cols, r, imag, rng);
    diamond_predecessor_of(&b, rng, &tol)
}

/// A random diamond predecessor of `b` on either backend, together with `b`.
pub fn diamond_predecessor_of<S: Scalar, R: Rng + ?Sized>(
    b: &Matrix<S>,
    rng: &mut R,
    tol: &Tol,
) -> (Matrix<S>, Matrix<S>) {
    let (c, r) = S::rank_factorization(&moore_penrose(b, tol), tol);
    let rank = c.cols();
    let k = rng.random_range(0..=rank);
    let e: Matrix<S> = random_idempotent(rank, k, rng).expect("k ≤ rank");
    (moore_penrose(&Matrix::chain(&[&c, &e, &r]), tol), b.clone())
}

/// `B = A + (I − P_A)Z`: `A*A = A*B` by construction. Redrawn (a bounded
/// number of times) until the ranks add, which gives `R(A) ⊆ R(B)`.
pub fn left_star_pair<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
) -> (Matrix<S>, Matrix<S>) {
    one_sided_pair(rows, cols, imag, rng, true)
}

/// Mirror of [`left_star_pair`] with `B = A + Z(I − Q_A)`.
pub fn right_star_pair<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
) -> (Matrix<S>, Matrix<S>) {
    one_sided_pair(rows, cols, imag, rng, false)
}

fn one_sided_pair<S: Scalar, R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    imag: bool,
    rng: &mut R,
    left: bool,
) -> (Matrix<S>, Matrix<S>) {
    let tol = Tol::default();
    let small = rows.min(cols);
    let mut last = None;
    for _ in 0..8 {
        let ra = rng.random_range(0..=small);
        let a: Matrix<S> = low_rank(rows, cols, ra, imag, rng);
        let rz = rng.random_range(0..=small - S::rank(&a, &tol));
        let z: Matrix<S> = low_rank(rows, cols, rz, imag, rng);
        let ap = moore_penrose(&a, &tol);
        let c = if left {
            &(&Matrix::identity(rows) - &(&a * &ap)) * &z
        } else {
            &z * &(&Matrix::identity(cols) - &(&ap * &a))
        };
        let b = &a + &c;
        let additive =
            S::rank(&b, &tol) == S::rank(&a, &tol) + S::rank_at_scale(&c, z.frobenius(), &tol);
        if additive {
            return (a, b);
        }
        last = Some((a, b));
    }
    last.expect("at least one attempt")
}

/// How a random pair was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    Independent,
    Equal,
    ZeroBelow,
    Star,
    Minus,
    Diamond,
    LeftStar,
    RightStar,
}

impl PairKind {
    pub const ALL: [PairKind; 8] = [
        PairKind::Independent,
        PairKind::Equal,
        PairKind::ZeroBelow,
        PairKind::Star,
        PairKind::Minus,
        PairKind::Diamond,
        PairKind::LeftStar,
        PairKind::RightStar,
    ];
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

/// A pair of the given kind with a random shape in `min_dim..=max_dim`.
pub fn pair_of_kind<S: Scalar, R: Rng + ?Sized>(
    kind: PairKind,
    min_dim: usize,
    max_dim: usize,
    imag: bool,
    rng: &mut R,
) -> (Matrix<S>, Matrix<S>) {
    let rows = rng.random_range(min_dim..=max_dim);
    let cols = rng.random_range(min_dim..=max_dim);
    let small = rows.min(cols);
    match kind {
        PairKind::Independent => {
            let ra = rng.random_range(0..=small);
            let rb = rng.random_range(0..=small);
            (low_rank(rows, cols, ra, imag, rng), low_rank(rows, cols, rb, imag, rng))
        }
        PairKind::Equal => {
            let r = rng.random_range(0..=small);
            let b: Matrix<S> = low_rank(rows, cols, r, imag, rng);
            (b.clone(), b)
        }
        PairKind::ZeroBelow => {
            let r = rng.random_range(0..=small);
            (Matrix::zeros(rows, cols), low_rank(rows, cols, r, imag, rng))
        }
        PairKind::Star => star_pair(rows, cols, imag, rng),
        PairKind::Minus => minus_pair(rows, cols, imag, rng),
        PairKind::Diamond => diamond_pair(rows, cols, imag, rng),
        PairKind::LeftStar => left_star_pair(rows, cols, imag, rng),
        PairKind::RightStar => right_star_pair(rows, cols, imag, rng),
    }
}

/// A pair of uniformly chosen kind.
pub fn random_pair<S: Scalar, R: Rng + ?Sized>(
    min_dim: usize,
    max_dim: usize,
    imag: bool,
    rng: &mut R,
) -> (PairKind, Matrix<S>, Matrix<S>) {
    let kind = PairKind::ALL[rng.random_range(0..PairKind::ALL.len())];
    let (a, b) = pair_of_kind(kind, min_dim, max_dim, imag, rng);
    (kind, a, b)
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix<C64> {
    Matrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Orthonormalized complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<C64> {
    orthonormalize_columns(&gaussian_matrix(n, n, rng))
}

/// `B = U [[ΣK, ΣL], [0, 0]] U*` with random unitary `U`, singular values
/// log-uniform on `[1/4, 4]` and `[K L]` the first `rank` rows of a random
/// unitary.
pub fn random_hs_matrix<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Matrix<C64> {
    assert!(rank <= n, "rank {rank} exceeds size {n}");
    let u = random_unitary(n, rng);
    let w = random_unitary(n, rng);
    let ln4 = 4f64.ln();
    let mut sigma: Vec<f64> = (0..rank)
        .map(|_| rng.random_range(-ln4..=ln4).exp())
        .collect();
    sigma.sort_by(|x, y| y.total_cmp(x));
    let top = Matrix::from_fn(rank, n, |i, j| w[(i, j)] * sigma[i]);
    Matrix::chain(&[&u, &top.pad_to(n, n), &u.adjoint()])
}

/// `U [[I_k, 0], [0, 0]] V*` with random unitaries `U`, `V`.
pub fn random_partial_isometry<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    k: usize,
    rng: &mut R,
) -> Matrix<C64> {
    let u = random_unitary(rows, rng);
    let v = random_unitary(cols, rng);
    partial_isometry_from(&u, &v, &(0..k).collect::<Vec<_>>())
}

fn partial_isometry_from(u: &Matrix<C64>, v: &Matrix<C64>, support: &[usize]) -> Matrix<C64> {
    let mut core = Matrix::zeros(u.cols(), v.cols());
    for &i in support {
        core[(i, i)] = C64::new(1.0, 0.0);
    }
    Matrix::chain(&[u, &core, &v.adjoint()])
}

/// Two partial isometries. Half the time they share `U`, `V` with the
/// support of `A` inside that of `B` (so `A ≤* B`); otherwise independent.
pub fn partial_isometry_pair<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> (Matrix<C64>, Matrix<C64>) {
    let small = rows.min(cols);
    if rng.random_bool(0.5) {
        let u = random_unitary(rows, rng);
        let v = random_unitary(cols, rng);
        let mut idx: Vec<usize> = (0..small).collect();
        idx.shuffle(rng);
        let kb = rng.random_range(0..=small);
        let ka = rng.random_range(0..=kb);
        let b = partial_isometry_from(&u, &v, &idx[..kb]);
        let a = partial_isometry_from(&u, &v, &idx[..ka]);
        (a, b)
    } else {
        let ka = rng.random_range(0..=small);
        let kb = rng.random_range(0..=small);
        (
            random_partial_isometry(rows, cols, ka, rng),
            random_partial_isometry(rows, cols, kb, rng),
        )
    }
}
