//! The star, minus, space, diamond, left-star and right-star relations.
//!
//! Every predicate returns an [`OrderReport`] carrying the verdict plus the
//! ranks, residuals and sub-conditions it was computed from. Each report also
//! evaluates at least one independent characterization of the same relation
//! and records in `consistent` whether the two routes agreed.
//!
//! The diamond relation has four routes, each its own function:
//! [`leq_diamond`] (definition), [`diamond_via_dagger_minus`],
//! [`diamond_via_range_split`] and [`diamond_via_rank`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geninv::{is_hermitian, is_idempotent, moore_penrose, sample_inner_inverses};
use crate::linalg::{
    column_space, column_space_at_scale, rank_of_difference, subspace_intersection_dim,
    subspace_leq, subspace_sum,
};
use crate::matrix::Matrix;
use crate::scalar::{Backend, Scalar, Tol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Star,
    Minus,
    Space,
    Diamond,
    LeftStar,
    RightStar,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Star,
        Relation::Minus,
        Relation::Space,
        Relation::Diamond,
        Relation::LeftStar,
        Relation::RightStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Star => "star",
            Relation::Minus => "minus",
            Relation::Space => "space",
            Relation::Diamond => "diamond",
            Relation::LeftStar => "left-star",
            Relation::RightStar => "right-star",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown order {s:?}")))
    }
}

/// Which characterization produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Characterization {
    Definition,
    DaggerMinus,
    RangeSplit,
    Rank,
    Equivalents,
}

impl Characterization {
    pub fn name(self) -> &'static str {
        match self {
            Characterization::Definition => "definition",
            Characterization::DaggerMinus => "dagger-minus",
            Characterization::RangeSplit => "range-split",
            Characterization::Rank => "rank",
            Characterization::Equivalents => "equivalents",
        }
    }
}

impl FromStr for Characterization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Characterization::Definition,
            Characterization::DaggerMinus,
            Characterization::RangeSplit,
            Characterization::Rank,
            Characterization::Equivalents,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown characterization {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderConfig {
    pub tol: Tol,
    /// Sampled inner inverses used where a condition ranges over `B{1}`,
    /// in addition to `B†`.
    pub inner_samples: usize,
    pub seed: u64,
}

impl Default for OrderConfig {
    fn default() -> Self {
        OrderConfig {
            tol: Tol::default(),
            inner_samples: 5,
            seed: 0,
        }
    }
}

impl OrderConfig {
    pub fn with_tol(tol: Tol) -> Self {
        OrderConfig {
            tol,
            ..Self::default()
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub relation: Relation,
    pub characterization: Characterization,
    pub backend: Backend,
    pub verdict: bool,
    /// Whether the cross-checked characterizations agreed with the verdict.
    pub consistent: bool,
    pub ranks: BTreeMap<String, usize>,
    /// Relative residual `‖X−Y‖/(1+‖X‖+‖Y‖)` of each identity checked.
    pub residuals: BTreeMap<String, f64>,
    pub conditions: BTreeMap<String, bool>,
    /// Float backend only: the largest residual divided by `tol.eq`.
    pub margin: Option<f64>,
}

struct Witness<'a> {
    tol: &'a Tol,
    report: OrderReport,
}

impl<'a> Witness<'a> {
    fn new<S: Scalar>(relation: Relation, characterization: Characterization, tol: &'a Tol) -> Self {
        Witness {
            tol,
            report: OrderReport {
                relation,
                characterization,
                backend: S::BACKEND,
                verdict: false,
                consistent: true,
                ranks: BTreeMap::new(),
                residuals: BTreeMap::new(),
                conditions: BTreeMap::new(),
                margin: (S::BACKEND == Backend::Float).then_some(0.0),
            },
        }
    }

    fn identity<S: Scalar>(&mut self, name: &str, lhs: &Matrix<S>, rhs: &Matrix<S>) -> bool {
        self.identities(name, &[(lhs.clone(), rhs.clone())])
    }

    /// Records the worst residual over several instances of one identity.
    fn identities<S: Scalar>(&mut self, name: &str, pairs: &[(Matrix<S>, Matrix<S>)]) -> bool {
        let mut worst = 0.0f64;
        let mut ok = true;
        for (lhs, rhs) in pairs {
            worst = worst.max(Tol::relative_residual(lhs, rhs));
            ok &= S::mat_eq(lhs, rhs, self.tol);
        }
        self.report.residuals.insert(name.to_string(), worst);
        if let Some(m) = self.report.margin.as_mut() {
            *m = m.max(worst / self.tol.eq);
        }
        self.condition(name, ok)
    }

    fn condition(&mut self, name: &str, value: bool) -> bool {
        self.report.conditions.insert(name.to_string(), value);
        value
    }

    fn rank(&mut self, name: &str, value: usize) -> usize {
        self.report.ranks.insert(name.to_string(), value);
        value
    }

    fn finish(mut self, verdict: bool, consistent: bool) -> OrderReport {
        self.report.verdict = verdict;
        self.report.consistent = consistent;
        self.report
    }
}

fn range_leq<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>, tol: &Tol) -> bool {
    subspace_leq(&column_space(x, tol), &column_space(y, tol), tol).expect("equal row counts")
}

/// `R(A) ⊆ R(B)` and `R(A*) ⊆ R(B*)`, cross-checked against `P_B A = A`,
/// `A Q_B = A` and `A = BGA = AGB` for `G = B†` plus sampled `G ∈ B{1}`.
pub fn leq_space<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, cfg: &OrderConfig) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::Space, Characterization::Definition, tol);
    let col = w.condition("R(A)⊆R(B)", range_leq(a, b, tol));
    let row = w.condition("R(A*)⊆R(B*)", range_leq(&a.adjoint(), &b.adjoint(), tol));
    let verdict = col && row;

    let bp = moore_penrose(b, tol);
    let p = w.identity("P_B·A = A", &(&(b * &bp) * a), a);
    let q = w.identity("A·Q_B = A", &(a * &(&bp * b)), a);

    let mut inverses = vec![bp.clone()];
    inverses.extend(sample_inner_inverses(b, &bp, cfg.inner_samples, &mut cfg.rng()));
    let left: Vec<_> = inverses.iter().map(|g| (Matrix::chain(&[b, g, a]), a.clone())).collect();
    let right: Vec<_> = inverses.iter().map(|g| (Matrix::chain(&[a, g, b]), a.clone())).collect();
    let l = w.identities("B·G·A = A for sampled G∈B{1}", &left);
    let r = w.identities("A·G·B = A for sampled G∈B{1}", &right);

    let consistent = (p && q) == verdict && (l && r) == verdict;
    Ok(w.finish(verdict, consistent))
}

/// `A*A = A*B` and `AA* = BA*`, cross-checked against `A†A = A†B`, `AA† = BA†`.
pub fn leq_star<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, cfg: &OrderConfig) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::Star, Characterization::Definition, tol);
    let ah = a.adjoint();
    let left = w.identity("A*A = A*B", &(&ah * a), &(&ah * b));
    let right = w.identity("AA* = BA*", &(a * &ah), &(b * &ah));
    let verdict = left && right;

    let ap = moore_penrose(a, tol);
    let l1 = w.identity("A†A = A†B", &(&ap * a), &(&ap * b));
    let r1 = w.identity("AA† = BA†", &(a * &ap), &(b * &ap));
    Ok(w.finish(verdict, (l1 && r1) == verdict))
}

/// `rk(B − A) = rk(B) − rk(A)`, cross-checked against
/// `A ≤s B` together with `AB†A = A`.
pub fn leq_minus<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, cfg: &OrderConfig) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let mut w = Witness::new::<S>(Relation::Minus, Characterization::Definition, &cfg.tol);
    let (verdict, cross) = minus_core(&mut w, a, b, ["A", "B"], cfg);
    Ok(w.finish(verdict, cross == verdict))
}

fn minus_core<S: Scalar>(
    w: &mut Witness,
    a: &Matrix<S>,
    b: &Matrix<S>,
    [na, nb]: [&str; 2],
    cfg: &OrderConfig,
) -> (bool, bool) {
    let tol = &cfg.tol;
    let ra = w.rank(&format!("rk({na})"), S::rank(a, tol));
    let rb = w.rank(&format!("rk({nb})"), S::rank(b, tol));
    let rd = w.rank(&format!("rk({nb}−{na})"), rank_of_difference(b, a, tol));
    let verdict = w.condition(
        &format!("rk({nb}−{na}) = rk({nb})−rk({na})"),
        rb >= ra && rd == rb - ra,
    );

    let col = w.condition(&format!("R({na})⊆R({nb})"), range_leq(a, b, tol));
    let row = w.condition(
        &format!("R({na}*)⊆R({nb}*)"),
        range_leq(&a.adjoint(), &b.adjoint(), tol),
    );
    let bp = moore_penrose(b, tol);
    let inner = w.identity(
        &format!("{na}·{nb}⁻·{na} = {na}"),
        &Matrix::chain(&[a, &bp, a]),
        a,
    );
    (verdict, col && row && inner)
}

/// `A ≤s B` and `AB*A = AA*A`.
pub fn leq_diamond<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::Diamond, Characterization::Definition, tol);
    let col = w.condition("R(A)⊆R(B)", range_leq(a, b, tol));
    let row = w.condition("R(A*)⊆R(B*)", range_leq(&a.adjoint(), &b.adjoint(), tol));
    let ah = a.adjoint();
    let id = w.identity(
        "AB*A = AA*A",
        &Matrix::chain(&[a, &b.adjoint(), a]),
        &Matrix::chain(&[a, &ah, a]),
    );
    // A*(B − A)A* = 0, written as an identity between its two terms.
    let cross = w.identity(
        "A*BA* = A*AA*",
        &Matrix::chain(&[&ah, b, &ah]),
        &Matrix::chain(&[&ah, a, &ah]),
    );
    Ok(w.finish(col && row && id, cross == id))
}

/// `A*A = A*B` and `R(A) ⊆ R(B)`.
pub fn leq_left_star<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::LeftStar, Characterization::Definition, tol);
    let ah = a.adjoint();
    let id = w.identity("A*A = A*B", &(&ah * a), &(&ah * b));
    let col = w.condition("R(A)⊆R(B)", range_leq(a, b, tol));
    let ap = moore_penrose(a, tol);
    let cross = w.identity("A†A = A†B", &(&ap * a), &(&ap * b));
    Ok(w.finish(id && col, cross == id))
}

/// `AA* = BA*` and `R(A*) ⊆ R(B*)`.
pub fn leq_right_star<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::RightStar, Characterization::Definition, tol);
    let ah = a.adjoint();
    let id = w.identity("AA* = BA*", &(a * &ah), &(b * &ah));
    let row = w.condition("R(A*)⊆R(B*)", range_leq(&ah, &b.adjoint(), tol));
    let ap = moore_penrose(a, tol);
    let cross = w.identity("AA† = BA†", &(a * &ap), &(b * &ap));
    Ok(w.finish(id && row, cross == id))
}

/// Diamond via `A† ≤⁻ B†`.
pub fn diamond_via_dagger_minus<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::Diamond, Characterization::DaggerMinus, tol);
    let ap = moore_penrose(a, tol);
    let bp = moore_penrose(b, tol);
    let (verdict, cross) = minus_core(&mut w, &ap, &bp, ["A†", "B†"], cfg);
    Ok(w.finish(verdict, cross == verdict))
}

/// Diamond via `R(A*) ∩ R(B† − A†) = {0}` and `R(A*) ⊆ R(B*)`; the stronger
/// direct-sum form `R(B*) = R(A*) ⊕ R(B† − A†)` is evaluated alongside.
pub fn diamond_via_range_split<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::Diamond, Characterization::RangeSplit, tol);
    let (ap, bp) = (moore_penrose(a, tol), moore_penrose(b, tol));
    let diff = &bp - &ap;
    let ra = column_space(&a.adjoint(), tol);
    let rb = column_space(&b.adjoint(), tol);
    let rd = column_space_at_scale(&diff, ap.frobenius().max(bp.frobenius()), tol);
    w.rank("dim R(A*)", ra.dim());
    w.rank("dim R(B*)", rb.dim());
    w.rank("dim R(B†−A†)", rd.dim());

    let meet = w.rank(
        "dim(R(A*)∩R(B†−A†))",
        subspace_intersection_dim(&ra, &rd, tol)?,
    );
    let incl = w.condition("R(A*)⊆R(B*)", subspace_leq(&ra, &rb, tol)?);
    let trivial = w.condition("R(A*)∩R(B†−A†) = {0}", meet == 0);
    let cond_c = trivial && incl;

    let sum = subspace_sum(&ra, &rd, tol)?;
    let sum_eq = subspace_leq(&sum, &rb, tol)? && subspace_leq(&rb, &sum, tol)?;
    let cond_b = w.condition("R(B*) = R(A*)⊕R(B†−A†)", sum_eq && trivial);
    w.condition("intersection and inclusion", cond_c);
    Ok(w.finish(cond_c, cond_b == cond_c))
}

/// Diamond via `rk(B† − A†) = rk((I − Q_A)B†)` and `R(A*) ⊆ R(B*)`,
/// cross-checked against the rank formula
/// `rk((I−Q_A)B†) = rk(B†−A†) − dim(R(B†−A†) ∩ R(A*))`.
pub fn diamond_via_rank<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let mut w = Witness::new::<S>(Relation::Diamond, Characterization::Rank, tol);
    let ap = moore_penrose(a, tol);
    let bp = moore_penrose(b, tol);
    let diff = &bp - &ap;
    let complement = &Matrix::identity(a.cols()) - &(&ap * a);
    let scale = ap.frobenius().max(bp.frobenius());
    let rd = w.rank("rk(B†−A†)", S::rank_at_scale(&diff, scale, tol));
    let rc = w.rank(
        "rk((I−Q_A)B†)",
        S::rank_at_scale(&(&complement * &bp), bp.frobenius(), tol),
    );
    let ranks_equal = w.condition("rk(B†−A†) = rk((I−Q_A)B†)", rd == rc);
    let incl = w.condition("R(A*)⊆R(B*)", range_leq(&a.adjoint(), &b.adjoint(), tol));

    let meet = w.rank(
        "dim(R(B†−A†)∩R(A*))",
        subspace_intersection_dim(
            &column_space_at_scale(&diff, scale, tol),
            &column_space(&a.adjoint(), tol),
            tol,
        )?,
    );
    let formula = w.condition("rank formula", rd >= meet && rc == rd - meet);
    Ok(w.finish(ranks_equal && incl, formula))
}

/// An idempotent `Q` with `A† = Q·B†`, for a pair with `A ≤⋄ B`.
///
/// Uses `Q = A†·B`: since `B ∈ B†{1} ⊆ A†{1}` and `R(A) ⊆ R(B)`, this is
/// idempotent and satisfies `A†BB† = A†`. Sampled `Q = A†G`, `G ∈ B†{1}`,
/// are tried if the float verification fails. Returns `None` when no
/// candidate verifies.
pub fn idempotent_factor_witness<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<Option<Matrix<S>>> {
    if !leq_diamond(a, b, cfg)?.verdict {
        return Err(Error::NotInRelation("diamond"));
    }
    let tol = &cfg.tol;
    let ap = moore_penrose(a, tol);
    let bp = moore_penrose(b, tol);
    let works = |q: &Matrix<S>| is_idempotent(q, tol) && S::mat_eq(&(q * &bp), &ap, tol);

    let q = &ap * b;
    if works(&q) {
        return Ok(Some(q));
    }
    let mut rng = cfg.rng();
    Ok(sample_inner_inverses(&bp, b, cfg.inner_samples.max(1) * 4, &mut rng)
        .into_iter()
        .map(|g| &ap * &g)
        .find(|q| works(q)))
}

/// The four equivalent conditions for `A ≤*left B`:
/// (a) the definition; (b) `A ≤⋄ B` and `A*A = A*B`;
/// (c) `A ≤⋄ B` and `A†A = A†B`; (d) `A ≤⋄ B` and `A*B` Hermitian.
///
/// `verdict` is (a); `consistent` says whether all four agreed.
pub fn left_star_equivalents<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    star_side_equivalents(a, b, cfg, Side::Left)
}

/// Mirror of [`left_star_equivalents`] with `AA* = BA*`, `AA† = BA†` and
/// `BA*` Hermitian.
pub fn right_star_equivalents<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    star_side_equivalents(a, b, cfg, Side::Right)
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn star_side_equivalents<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
    side: Side,
) -> Result<OrderReport> {
    a.ensure_same_shape(b)?;
    let tol = &cfg.tol;
    let (relation, base) = match side {
        Side::Left => (Relation::LeftStar, leq_left_star(a, b, cfg)?),
        Side::Right => (Relation::RightStar, leq_right_star(a, b, cfg)?),
    };
    let mut w = Witness::new::<S>(relation, Characterization::Equivalents, tol);
    let diamond = leq_diamond(a, b, cfg)?.verdict;
    w.condition("A ≤⋄ B", diamond);
    let ah = a.adjoint();
    let ap = moore_penrose(a, tol);
    let (c1, c2, c3) = match side {
        Side::Left => (
            w.identity("A*A = A*B", &(&ah * a), &(&ah * b)),
            w.identity("A†A = A†B", &(&ap * a), &(&ap * b)),
            w.condition("A*B Hermitian", is_hermitian(&(&ah * b), tol)),
        ),
        Side::Right => (
            w.identity("AA* = BA*", &(a * &ah), &(b * &ah)),
            w.identity("AA† = BA†", &(a * &ap), &(b * &ap)),
            w.condition("BA* Hermitian", is_hermitian(&(b * &ah), tol)),
        ),
    };
    let all = [
        w.condition("(a) definition", base.verdict),
        w.condition("(b)", diamond && c1),
        w.condition("(c)", diamond && c2),
        w.condition("(d)", diamond && c3),
    ];
    let consistent = all.iter().all(|&x| x == all[0]);
    Ok(w.finish(all[0], consistent))
}

/// Evaluates `relation` through the chosen characterization. Only the
/// diamond relation has characterizations other than the definition.
pub fn check<S: Scalar>(
    relation: Relation,
    via: Characterization,
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<OrderReport> {
    use Characterization as C;
    match (relation, via) {
        (Relation::Star, C::Definition) => leq_star(a, b, cfg),
        (Relation::Minus, C::Definition) => leq_minus(a, b, cfg),
        (Relation::Space, C::Definition) => leq_space(a, b, cfg),
        (Relation::Diamond, C::Definition) => leq_diamond(a, b, cfg),
        (Relation::Diamond, C::DaggerMinus) => diamond_via_dagger_minus(a, b, cfg),
        (Relation::Diamond, C::RangeSplit) => diamond_via_range_split(a, b, cfg),
        (Relation::Diamond, C::Rank) => diamond_via_rank(a, b, cfg),
        (Relation::LeftStar, C::Definition) => leq_left_star(a, b, cfg),
        (Relation::LeftStar, C::Equivalents) => left_star_equivalents(a, b, cfg),
        (Relation::RightStar, C::Definition) => leq_right_star(a, b, cfg),
        (Relation::RightStar, C::Equivalents) => right_star_equivalents(a, b, cfg),
        (r, v) => Err(Error::InvalidArgument(format!(
            "no {} characterization for the {} order",
            v.name(),
            r.name()
        ))),
    }
}

/// Definition-based verdict.
pub fn holds<S: Scalar>(
    relation: Relation,
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<bool> {
    Ok(check(relation, Characterization::Definition, a, b, cfg)?.verdict)
}

/// `(relation(A, B), relation(P_A, P_B))`.
///
/// The first implies the second for every relation. The converse fails even
/// for the space pre-order: `P_A ≤s P_B` only says `R(A) ⊆ R(B)`, e.g.
/// `A = [[1,0],[0,0]]`, `B = [[0,1],[0,0]]` give `(false, true)`.
pub fn projector_transfer<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    relation: Relation,
    cfg: &OrderConfig,
) -> Result<(bool, bool)> {
    a.ensure_same_shape(b)?;
    let pa = crate::geninv::projector_range(a, &cfg.tol);
    let pb = crate::geninv::projector_range(b, &cfg.tol);
    Ok((holds(relation, a, b, cfg)?, holds(relation, &pa, &pb, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;
    use crate::scalar::{GaussRational as Q, C64};

    fn cfg() -> OrderConfig {
        OrderConfig::default()
    }

    fn ex1() -> (Matrix<Q>, Matrix<Q>) {
        (mat![[0, 1], [0, 0]], mat![[1, 1], [0, 1]])
    }

    fn ex2() -> (Matrix<Q>, Matrix<Q>) {
        (mat![[0, 1], [0, 0]], mat![[1, 0], [-1, 1]])
    }

    fn section4() -> (Matrix<Q>, Matrix<Q>) {
        (mat![[1, 0], [0, 0]], mat![[1, 1], [1, -1]])
    }

    fn diag_pair() -> (Matrix<Q>, Matrix<Q>) {
        (mat![[2, 0], [0, 0]], mat![[2, 0], [0, 1]])
    }

    type Pred = fn(&Matrix<Q>, &Matrix<Q>, &OrderConfig) -> Result<OrderReport>;

    fn verdict(f: Pred, (a, b): &(Matrix<Q>, Matrix<Q>)) -> bool {
        let rep = f(a, b, &cfg()).unwrap();
        assert!(rep.consistent, "{rep:#?}");
        rep.verdict
    }

    #[test]
    fn space_examples() {
        assert!(verdict(leq_space, &ex1()));
        let b: Matrix<Q> = mat![[3, 1], [2, 0]];
        assert!(verdict(leq_space, &(Matrix::zeros(2, 2), b)));
        assert!(!verdict(leq_space, &(mat![[1, 0], [0, 0]], mat![[0, 0], [0, 1]])));
    }

    #[test]
    fn star_examples() {
        assert!(!verdict(leq_star, &(mat![[1, 1], [0, 0]], Matrix::identity(2))));
        assert!(verdict(leq_star, &diag_pair()));
        assert!(verdict(leq_star, &(Matrix::zeros(2, 2), mat![[1, 2], [3, 4]])));
    }

    #[test]
    fn minus_examples() {
        assert!(verdict(leq_minus, &ex2()));
        assert!(!verdict(leq_minus, &ex1()));
        let b: Matrix<Q> = mat![[1, 2], [2, 4]];
        assert!(verdict(leq_minus, &(b.clone(), b)));
        let rep = leq_minus(&ex1().0, &ex1().1, &cfg()).unwrap();
        assert_eq!(rep.ranks["rk(A)"], 1);
        assert_eq!(rep.ranks["rk(B)"], 2);
        assert_eq!(rep.ranks["rk(B−A)"], 2);
    }

    #[test]
    fn diamond_examples() {
        assert!(verdict(leq_diamond, &ex1()));
        assert!(!verdict(leq_diamond, &ex2()));
        assert!(verdict(leq_diamond, &(Matrix::zeros(2, 2), mat![[1, 1], [0, 1]])));
    }

    #[test]
    fn one_sided_star_examples() {
        assert!(!verdict(leq_left_star, &section4()));
        assert!(!verdict(leq_right_star, &section4()));
        assert!(verdict(leq_left_star, &diag_pair()));
        assert!(verdict(leq_right_star, &diag_pair()));
        let z = (Matrix::zeros(2, 2), mat![[1, 1], [1, -1]]);
        assert!(verdict(leq_left_star, &z));
        assert!(verdict(leq_right_star, &z));
    }

    #[test]
    fn dagger_minus_examples() {
        assert!(verdict(diamond_via_dagger_minus, &ex1()));
        assert!(!verdict(diamond_via_dagger_minus, &ex2()));
        let b = ex1().1;
        assert!(verdict(diamond_via_dagger_minus, &(b.clone(), b)));
    }

    #[test]
    fn range_split_examples() {
        let (a, b) = ex1();
        let rep = diamond_via_range_split(&a, &b, &cfg()).unwrap();
        assert!(rep.verdict && rep.consistent);
        assert_eq!(rep.ranks["dim R(B*)"], 2);
        assert_eq!(rep.ranks["dim R(A*)"], 1);
        assert_eq!(rep.ranks["dim R(B†−A†)"], 1);
        assert!(!verdict(diamond_via_range_split, &ex2()));
        assert!(verdict(diamond_via_range_split, &(b.clone(), b)));
    }

    #[test]
    fn rank_route_examples() {
        let (a, b) = ex1();
        let rep = diamond_via_rank(&a, &b, &cfg()).unwrap();
        assert!(rep.verdict && rep.consistent);
        assert_eq!(rep.ranks["rk(B†−A†)"], 1);
        assert_eq!(rep.ranks["rk((I−Q_A)B†)"], 1);
        assert!(!verdict(diamond_via_rank, &ex2()));
        let rep = diamond_via_rank(&Matrix::zeros(2, 2), &b, &cfg()).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.ranks["rk(B†−A†)"], 2);
    }

    #[test]
    fn idempotent_factor_examples() {
        let tol = Tol::default();
        for (a, b) in [ex1(), (ex1().1, ex1().1), (Matrix::zeros(2, 2), ex1().1)] {
            let q = idempotent_factor_witness(&a, &b, &cfg()).unwrap().unwrap();
            assert_eq!(&q * &q, q);
            assert_eq!(&q * &moore_penrose(&b, &tol), moore_penrose(&a, &tol));
            if a.is_zero() {
                assert!(q.is_zero());
            }
        }
        let (a, b) = ex2();
        assert!(matches!(
            idempotent_factor_witness(&a, &b, &cfg()),
            Err(Error::NotInRelation(_))
        ));
    }

    #[test]
    fn star_side_equivalents_examples() {
        for f in [left_star_equivalents as Pred, right_star_equivalents] {
            let rep = f(&diag_pair().0, &diag_pair().1, &cfg()).unwrap();
            assert!(rep.verdict && rep.consistent);
            assert!(rep.conditions.values().all(|&v| v));

            let (a, b) = section4();
            let rep = f(&a, &b, &cfg()).unwrap();
            assert!(!rep.verdict && rep.consistent);
            assert!(rep.conditions["A ≤⋄ B"]);

            let rep = f(&Matrix::zeros(2, 2), &b, &cfg()).unwrap();
            assert!(rep.verdict && rep.consistent);
            let rep = f(&b, &b, &cfg()).unwrap();
            assert!(rep.verdict && rep.consistent);
        }
    }

    #[test]
    fn projector_transfer_examples() {
        let a: Matrix<Q> = mat![[1, 1], [0, 0]];
        let b: Matrix<Q> = Matrix::identity(2);
        assert_eq!(projector_transfer(&a, &b, Relation::Star, &cfg()).unwrap(), (false, true));
        let (a, b) = ex1();
        assert_eq!(projector_transfer(&a, &b, Relation::Diamond, &cfg()).unwrap(), (true, true));
        assert_eq!(projector_transfer(&b, &b, Relation::Minus, &cfg()).unwrap(), (true, true));
    }

    #[test]
    fn space_transfer_is_one_directional() {
        let a: Matrix<Q> = mat![[1, 0], [0, 0]];
        let b: Matrix<Q> = mat![[0, 1], [0, 0]];
        assert_eq!(projector_transfer(&a, &b, Relation::Space, &cfg()).unwrap(), (false, true));
        let (a, b) = ex1();
        assert_eq!(projector_transfer(&a, &b, Relation::Space, &cfg()).unwrap(), (true, true));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a: Matrix<Q> = Matrix::zeros(2, 3);
        let b: Matrix<Q> = Matrix::zeros(3, 2);
        for rel in Relation::ALL {
            assert!(matches!(
                check(rel, Characterization::Definition, &a, &b, &cfg()),
                Err(Error::ShapeMismatch { .. })
            ));
        }
        assert!(check(Relation::Star, Characterization::Rank, &a, &a, &cfg()).is_err());
    }

    #[test]
    fn float_backend_reports_margin() {
        let (a, b) = ex1();
        let rep = leq_diamond(&a.to_float(), &b.to_float(), &cfg()).unwrap();
        assert!(rep.verdict);
        assert!(rep.margin.unwrap() <= 1.0);
        let rep = leq_diamond(&ex2().0.to_float(), &ex2().1.to_float(), &cfg()).unwrap();
        assert!(!rep.verdict);
        assert!(rep.margin.unwrap() > 1.0);
        let exact = leq_diamond(&a, &b, &cfg()).unwrap();
        assert_eq!(exact.margin, None);
        let _: Option<C64> = None;
    }

    #[test]
    fn rectangular_support() {
        let a: Matrix<Q> = mat![[1, 0, 0], [0, 0, 0]];
        let b: Matrix<Q> = mat![[1, 0, 0], [0, 0, 2]];
        for rel in Relation::ALL {
            assert!(holds(rel, &a, &b, &cfg()).unwrap(), "{rel}");
        }
        for f in [diamond_via_dagger_minus as Pred, diamond_via_range_split, diamond_via_rank] {
            assert!(verdict(f, &(a.clone(), b.clone())));
        }
    }
}
