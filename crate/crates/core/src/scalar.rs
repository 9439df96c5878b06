//! Scalar backends.
//!
//! Two fields sit behind [`Scalar`]: exact Gaussian rationals
//! ([`GaussRational`]) and double-precision complex numbers ([`C64`]). Each
//! backend also supplies the handful of algorithms whose implementation
//! depends on the arithmetic (rank, column bases, rank factorization, the
//! Moore–Penrose inverse and matrix equality), so that everything above this
//! layer can be written once, generically.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{exact, float};

pub type C64 = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::InvalidArgument(format!("unknown backend {other:?}"))),
        }
    }
}

/// Tolerances used by the float backend. The exact backend ignores them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tol {
    /// Relative Frobenius tolerance for matrix equality.
    pub eq: f64,
    /// Safety factor applied to the machine-epsilon rank cutoff.
    pub rank_factor: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            eq: 1e-9,
            rank_factor: 64.0,
        }
    }
}

impl Tol {
    pub fn new(eq: f64, rank_factor: f64) -> Result<Self> {
        if !(eq > 0.0 && eq.is_finite()) || !(rank_factor > 0.0 && rank_factor.is_finite()) {
            return Err(Error::InvalidArgument(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        Ok(Tol { eq, rank_factor })
    }

    /// Singular values strictly above this count toward the rank.
    pub fn rank_cutoff(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        rows.max(cols) as f64 * sigma_max * f64::EPSILON * self.rank_factor
    }

    /// `‖x − y‖_F / (1 + ‖x‖_F + ‖y‖_F)`, the quantity compared against `eq`.
    pub fn relative_residual<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> f64 {
        (x - y).frobenius() / (1.0 + x.frobenius() + y.frobenius())
    }
}

/// The common field contract shared by both backends.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact for the rational backend, rounded for the float backend.
    fn from_gauss(re: &BigRational, im: &BigRational) -> Self;
    fn conj(&self) -> Self;
    /// Exact zero test (no tolerance on either backend).
    fn is_zero(&self) -> bool;
    fn to_c64(&self) -> C64;

    fn norm_sqr(&self) -> f64 {
        self.to_c64().norm_sqr()
    }

    /// `acc += a * b`
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        *acc = acc.clone() + a.clone() * b.clone();
    }

    /// One draw from the inner-inverse parameter distribution: uniform on
    /// {−2,…,2} for the exact backend, complex standard normal for floats.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn encode(&self) -> [Value; 2];
    fn decode(re: &Value, im: &Value) -> Result<Self>;

    fn rank(a: &Matrix<Self>, tol: &Tol) -> usize;
    /// Rank of a matrix computed from operands of Frobenius norm about
    /// `scale`, such as a difference `B − A`. The float backend measures its
    /// cutoff against `max(σ_max, scale)` so that rounding residue left by
    /// cancellation is not counted; the exact backend ignores `scale`.
    fn rank_at_scale(a: &Matrix<Self>, scale: f64, tol: &Tol) -> usize {
        let _ = scale;
        Self::rank(a, tol)
    }
    /// Columns forming a basis of the column space; exactly `rank` of them.
    fn column_basis(a: &Matrix<Self>, tol: &Tol) -> Matrix<Self>;
    /// [`Scalar::column_basis`] with the cutoff of [`Scalar::rank_at_scale`].
    fn column_basis_at_scale(a: &Matrix<Self>, scale: f64, tol: &Tol) -> Matrix<Self> {
        let _ = scale;
        Self::column_basis(a, tol)
    }
    /// `a = c · r` with `c` of full column rank and `r` of full row rank.
    fn rank_factorization(a: &Matrix<Self>, tol: &Tol) -> (Matrix<Self>, Matrix<Self>);
    fn pinv(a: &Matrix<Self>, tol: &Tol) -> Matrix<Self>;
    /// Inverse of a square matrix, `None` when singular (numerically, for floats).
    fn inverse(a: &Matrix<Self>, tol: &Tol) -> Option<Matrix<Self>>;
    fn mat_eq(a: &Matrix<Self>, b: &Matrix<Self>, tol: &Tol) -> bool;
}

/// A Gaussian rational `re + im·i` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    /// `(re_n/re_d) + (im_n/im_d)·i`
    pub fn from_fractions(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        GaussRational {
            re: BigRational::new(re_n.into(), re_d.into()),
            im: BigRational::new(im_n.into(), im_d.into()),
        }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussRational {
    type Output = Self;
    /// Panics on division by zero, like the rational parts do.
    fn div(self, rhs: Self) -> Self {
        if rhs.im.is_zero() {
            return GaussRational::new(self.re / &rhs.re, self.im / rhs.re);
        }
        let den = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num = &self * &rhs.conj();
        GaussRational::new(num.re / &den, num.im / den)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

fn rational_to_json(q: &BigRational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::Malformed(format!("exact entries must be \"p/q\" strings, got {v}")))?;
    let parse = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Malformed(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (parse(p)?, parse(q)?);
            if !q.is_positive() {
                return Err(Error::Malformed(format!("denominator must be positive in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

impl Scalar for GaussRational {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        GaussRational::default()
    }

    fn one() -> Self {
        GaussRational::new(BigRational::one(), BigRational::zero())
    }

    fn from_i64(v: i64) -> Self {
        GaussRational::from_ints(v, 0)
    }

    fn from_gauss(re: &BigRational, im: &BigRational) -> Self {
        GaussRational::new(re.clone(), im.clone())
    }

    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a * b;
        acc.re += p.re;
        acc.im += p.im;
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        GaussRational::from_i64(rng.random_range(-2..=2))
    }

    fn encode(&self) -> [Value; 2] {
        [rational_to_json(&self.re), rational_to_json(&self.im)]
    }

    fn decode(re: &Value, im: &Value) -> Result<Self> {
        Ok(GaussRational::new(rational_from_json(re)?, rational_from_json(im)?))
    }

    fn rank(a: &Matrix<Self>, _tol: &Tol) -> usize {
        exact::rref(a).pivots.len()
    }

    fn column_basis(a: &Matrix<Self>, _tol: &Tol) -> Matrix<Self> {
        let pivots = exact::rref(a).pivots;
        a.select_columns(&pivots)
    }

    fn rank_factorization(a: &Matrix<Self>, _tol: &Tol) -> (Matrix<Self>, Matrix<Self>) {
        exact::rank_factorization(a)
    }

    fn pinv(a: &Matrix<Self>, _tol: &Tol) -> Matrix<Self> {
        exact::pinv(a)
    }

    fn inverse(a: &Matrix<Self>, _tol: &Tol) -> Option<Matrix<Self>> {
        exact::inverse(a)
    }

    fn mat_eq(a: &Matrix<Self>, b: &Matrix<Self>, _tol: &Tol) -> bool {
        a == b
    }
}

impl Scalar for C64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }

    fn one() -> Self {
        C64::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn from_gauss(re: &BigRational, im: &BigRational) -> Self {
        C64::new(
            re.to_f64().unwrap_or(f64::NAN),
            im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }

    fn encode(&self) -> [Value; 2] {
        [Value::from(self.re), Value::from(self.im)]
    }

    fn decode(re: &Value, im: &Value) -> Result<Self> {
        let num = |v: &Value| {
            v.as_f64()
                .ok_or_else(|| Error::Malformed(format!("float entries must be JSON numbers, got {v}")))
        };
        Ok(C64::new(num(re)?, num(im)?))
    }

    fn rank(a: &Matrix<Self>, tol: &Tol) -> usize {
        float::rank(a, tol)
    }

    fn rank_at_scale(a: &Matrix<Self>, scale: f64, tol: &Tol) -> usize {
        float::rank_at_scale(a, scale, tol)
    }

    fn column_basis(a: &Matrix<Self>, tol: &Tol) -> Matrix<Self> {
        float::column_basis(a, tol)
    }

    fn column_basis_at_scale(a: &Matrix<Self>, scale: f64, tol: &Tol) -> Matrix<Self> {
        float::column_basis_at_scale(a, scale, tol)
    }

    fn rank_factorization(a: &Matrix<Self>, tol: &Tol) -> (Matrix<Self>, Matrix<Self>) {
        float::rank_factorization(a, tol)
    }

    fn pinv(a: &Matrix<Self>, tol: &Tol) -> Matrix<Self> {
        float::pinv(a, tol)
    }

    fn inverse(a: &Matrix<Self>, tol: &Tol) -> Option<Matrix<Self>> {
        float::inverse(a, tol)
    }

    fn mat_eq(a: &Matrix<Self>, b: &Matrix<Self>, tol: &Tol) -> bool {
        a.shape() == b.shape() && Tol::relative_residual(a, b) <= tol.eq
    }
}
