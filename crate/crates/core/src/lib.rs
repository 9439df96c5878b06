//! Generalized inverses and the star, minus, space, diamond, left-star and
//! right-star partial orders on complex matrices.
//!
//! Everything is generic over a [`Scalar`] backend: exact Gaussian rationals
//! ([`GaussRational`]), where every predicate is decidable, or complex
//! doubles ([`C64`]), where equality and rank use the tolerances in [`Tol`].
//!
//! ```
//! use matorder::{mat, orders, GaussRational, Matrix};
//!
//! let a: Matrix<GaussRational> = mat![[0, 1], [0, 0]];
//! let b: Matrix<GaussRational> = mat![[1, 1], [0, 1]];
//! let cfg = orders::OrderConfig::default();
//! assert!(orders::leq_diamond(&a, &b, &cfg).unwrap().verdict);
//! assert!(!orders::leq_minus(&a, &b, &cfg).unwrap().verdict);
//! ```

pub mod batch;
pub mod constructors;
pub mod decompositions;
mod error;
mod exact;
mod float;
pub mod fuzz;
pub mod geninv;
pub mod json;
pub mod linalg;
mod matrix;
pub mod orders;
pub mod poset;
pub mod random;
mod scalar;

pub use constructors::{
    diamond_predecessor, dagger_isotone, is_bidagger, predecessor_mp, random_idempotent,
    recover_idempotent, reverse_order_law, CriterionPair, PredecessorSpec,
};
pub use error::{Error, Result};
pub use exact::{rref, Rref};
pub use geninv::{moore_penrose, penrose_residuals, PenroseResiduals};
pub use json::AnyMatrix;
pub use linalg::{column_space, rank, SubspaceBasis};
pub use matrix::{conj_transpose, Matrix};
pub use orders::{OrderConfig, OrderReport, Relation};
pub use scalar::{Backend, GaussRational, Scalar, Tol, C64};
