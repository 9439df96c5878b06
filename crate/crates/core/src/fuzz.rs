//! Seeded property suites over random and constructed inputs.
//!
//! Trial `i` draws from a ChaCha8 stream selected by `i`, so the summary is a
//! function of the configuration alone, whatever the execution mode.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::batch::{map_indexed, Execution};
use crate::constructors::{is_bidagger, random_idempotent, PredecessorSpec};
use crate::decompositions::hartwig_spindelbock;
use crate::error::{Error, Result};
use crate::geninv::moore_penrose;
use crate::linalg::{column_space, subspace_leq};
use crate::matrix::Matrix;
use crate::orders::{
    diamond_via_dagger_minus, diamond_via_range_split, diamond_via_rank, leq_diamond,
    left_star_equivalents, projector_transfer, right_star_equivalents, Characterization,
    OrderConfig, OrderReport, Relation,
};
use crate::random::{
    diamond_predecessor_of, partial_isometry_pair, random_hs_matrix, random_pair,
    signed_permutation,
};
use crate::recover_idempotent;
use crate::scalar::{Backend, GaussRational, Scalar, Tol, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub backend: Backend,
    pub tol: Tol,
    pub seed: u64,
    pub trials: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    /// Sampled inner inverses per "for every inner inverse" clause.
    pub inner_samples: usize,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            backend: Backend::Exact,
            tol: Tol::default(),
            seed: 0,
            trials: 100,
            min_dim: 1,
            max_dim: 4,
            inner_samples: 5,
            execution: Execution::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        Tol::new(self.tol.eq, self.tol.rank_factor)?;
        if self.min_dim == 0 || self.max_dim < self.min_dim {
            return Err(Error::InvalidArgument(format!(
                "dimension bounds must satisfy 1 ≤ min ≤ max, got {}..={}",
                self.min_dim, self.max_dim
            )));
        }
        Ok(())
    }

    fn order_config(&self, seed: u64) -> OrderConfig {
        OrderConfig {
            tol: self.tol,
            inner_samples: self.inner_samples,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub detail: String,
    /// Matrix JSON objects keyed by role.
    pub matrices: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertySummary {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub backend: Backend,
    pub trials: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    pub all_passed: bool,
    pub properties: Vec<PropertySummary>,
}

impl FuzzSummary {
    pub fn property(&self, name: &str) -> Option<&PropertySummary> {
        self.properties.iter().find(|p| p.name == name)
    }
}

type Outcome = (&'static str, std::result::Result<(), Counterexample>);

struct Recorder {
    trial: usize,
    matrices: BTreeMap<String, Value>,
    out: Vec<Outcome>,
}

impl Recorder {
    fn new(trial: usize) -> Self {
        Recorder {
            trial,
            matrices: BTreeMap::new(),
            out: Vec::new(),
        }
    }

    fn inputs<S: Scalar>(&mut self, named: &[(&str, &Matrix<S>)]) {
        self.matrices = named
            .iter()
            .map(|(k, m)| (k.to_string(), serde_json::to_value(m).expect("matrix json")))
            .collect();
    }

    fn check(&mut self, name: &'static str, result: Result<std::result::Result<(), String>>) {
        let failure = match result {
            Ok(Ok(())) => None,
            Ok(Err(detail)) => Some(detail),
            Err(e) => Some(format!("error: {e}")),
        };
        let entry = match failure {
            None => Ok(()),
            Some(detail) => Err(Counterexample {
                trial: self.trial,
                detail,
                matrices: self.matrices.clone(),
            }),
        };
        self.out.push((name, entry));
    }
}

fn expect(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn implies(p: bool, q: bool) -> bool {
    !p || q
}

pub fn run(cfg: &RunConfig) -> Result<FuzzSummary> {
    cfg.validate()?;
    let per_trial = map_indexed(cfg.trials, cfg.execution, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let mut rec = Recorder::new(i);
        let ocfg = cfg.order_config(rng.next_u64());
        match cfg.backend {
            Backend::Exact => {
                orders_trial::<GaussRational>(cfg, &mut rng, &mut rec);
                let (a, b) = signed_partial_isometries(cfg, &mut rng);
                collapse_trial::<GaussRational>(a, b, &ocfg, &mut rec);
            }
            Backend::Float => {
                orders_trial::<C64>(cfg, &mut rng, &mut rec);
                let rows = rng.random_range(cfg.min_dim..=cfg.max_dim);
                let cols = rng.random_range(cfg.min_dim..=cfg.max_dim);
                let (a, b) = partial_isometry_pair(rows, cols, &mut rng);
                collapse_trial(a, b, &ocfg, &mut rec);
            }
        }
        constructor_trial(cfg, &mut rng, &mut rec);
        rec.out
    });

    let mut props: Vec<PropertySummary> = Vec::new();
    for outcomes in per_trial {
        for (name, result) in outcomes {
            let idx = match props.iter().position(|p| p.name == name) {
                Some(idx) => idx,
                None => {
                    props.push(PropertySummary {
                        name: name.to_string(),
                        passed: 0,
                        failed: 0,
                        first_counterexample: None,
                    });
                    props.len() - 1
                }
            };
            let p = &mut props[idx];
            match result {
                Ok(()) => p.passed += 1,
                Err(ce) => {
                    p.failed += 1;
                    p.first_counterexample.get_or_insert(ce);
                }
            }
        }
    }
    props.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(FuzzSummary {
        seed: cfg.seed,
        backend: cfg.backend,
        trials: cfg.trials,
        min_dim: cfg.min_dim,
        max_dim: cfg.max_dim,
        all_passed: props.iter().all(|p| p.failed == 0),
        properties: props,
    })
}

fn orders_trial<S: Scalar>(cfg: &RunConfig, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let ocfg = cfg.order_config(rng.next_u64());
    let (kind, a, b) = random_pair::<S, _>(cfg.min_dim, cfg.max_dim, true, rng);
    rec.inputs(&[("A", &a), ("B", &b)]);

    let reports: Result<BTreeMap<Relation, OrderReport>> = Relation::ALL
        .into_iter()
        .map(|rel| Ok((rel, crate::orders::check(rel, Characterization::Definition, &a, &b, &ocfg)?)))
        .collect();
    let reports = match reports {
        Ok(r) => r,
        Err(e) => {
            rec.check("order-evaluation", Err(e));
            return;
        }
    };
    let v = |rel: Relation| reports[&rel].verdict;
    let (star, minus, space, diamond) = (
        v(Relation::Star),
        v(Relation::Minus),
        v(Relation::Space),
        v(Relation::Diamond),
    );
    let (left, right) = (v(Relation::LeftStar), v(Relation::RightStar));

    rec.check(
        "chain-star-minus-space",
        Ok(expect(implies(star, minus) && implies(minus, space), || {
            format!("{kind}: star={star} minus={minus} space={space}")
        })),
    );
    rec.check(
        "chain-star-diamond-space",
        Ok(expect(implies(star, diamond) && implies(diamond, space), || {
            format!("{kind}: star={star} diamond={diamond} space={space}")
        })),
    );
    rec.check(
        "one-sided-star-diagram",
        Ok(expect(
            implies(star, left) && implies(left, diamond) && implies(star, right) && implies(right, diamond),
            || format!("{kind}: star={star} left={left} right={right} diamond={diamond}"),
        )),
    );

    let routes = (|| -> Result<[OrderReport; 3]> {
        Ok([
            diamond_via_dagger_minus(&a, &b, &ocfg)?,
            diamond_via_range_split(&a, &b, &ocfg)?,
            diamond_via_rank(&a, &b, &ocfg)?,
        ])
    })();
    let agreement = match &routes {
        Ok(rs) => Ok(expect(rs.iter().all(|r| r.verdict == diamond), || {
                let names: Vec<String> = rs
                    .iter()
                    .map(|r| format!("{}={}", r.characterization.name(), r.verdict))
                    .collect();
                format!("{kind}: definition={diamond} {}", names.join(" "))
            })),
        Err(e) => Ok(Err(format!("error: {e}"))),
    };
    rec.check("diamond-characterizations", agreement);
    let mut inconsistent: Vec<String> = reports
        .values()
        .filter(|r| !r.consistent)
        .map(|r| r.relation.to_string())
        .collect();
    if let Ok(rs) = &routes {
        inconsistent.extend(rs.iter().filter(|r| !r.consistent).map(|r| r.characterization.name().into()));
    }
    rec.check(
        "cross-checks",
        Ok(expect(inconsistent.is_empty(), || {
            format!("{kind}: inconsistent {}", inconsistent.join(", "))
        })),
    );

    for (name, f) in [
        ("left-star-equivalents", left_star_equivalents::<S> as fn(&_, &_, &_) -> _),
        ("right-star-equivalents", right_star_equivalents::<S>),
    ] {
        rec.check(
            name,
            f(&a, &b, &ocfg).map(|r: OrderReport| {
                expect(r.consistent, || format!("{kind}: {:?}", r.conditions))
            }),
        );
    }

    rec.check(
        "projector-transfer",
        (|| {
            for rel in [Relation::Star, Relation::Minus, Relation::Diamond, Relation::Space] {
                let (x, y) = projector_transfer(&a, &b, rel, &ocfg)?;
                if !implies(x, y) {
                    return Ok(Err(format!("{kind}: {rel} on (A,B)={x}, on projectors={y}")));
                }
            }
            // The converse for space fails; the projectors only see R(A) ⊆ R(B).
            let (_, y) = projector_transfer(&a, &b, Relation::Space, &ocfg)?;
            let col = subspace_leq(&column_space(&a, &ocfg.tol), &column_space(&b, &ocfg.tol), &ocfg.tol)?;
            Ok(expect(y == col, || format!("{kind}: P_A ≤s P_B is {y}, R(A)⊆R(B) is {col}")))
        })(),
    );

    // C ⋄ A ⋄ B through nested predecessors.
    let (pa, pb) = diamond_predecessor_of(&b, rng, &ocfg.tol);
    let (pc, _) = diamond_predecessor_of(&pa, rng, &ocfg.tol);
    let transitive = (|| {
        let def = leq_diamond(&pc, &pb, &ocfg)?.verdict;
        let via = diamond_via_dagger_minus(&pc, &pb, &ocfg)?.verdict;
        let links = leq_diamond(&pc, &pa, &ocfg)?.verdict && leq_diamond(&pa, &pb, &ocfg)?.verdict;
        Ok(expect(links && def && via, || {
            format!("links={links} definition={def} dagger-minus={via}")
        }))
    })();
    let saved = std::mem::take(&mut rec.matrices);
    rec.inputs(&[("C", &pc), ("A", &pa), ("B", &pb)]);
    rec.check("diamond-transitivity", transitive);
    rec.matrices = saved;

}

fn collapse_trial<S: Scalar>(pa: Matrix<S>, pb: Matrix<S>, ocfg: &OrderConfig, rec: &mut Recorder) {
    rec.inputs(&[("A", &pa), ("B", &pb)]);
    rec.check(
        "partial-isometry-collapse",
        (|| {
            let s = crate::orders::leq_star(&pa, &pb, ocfg)?.verdict;
            let d = leq_diamond(&pa, &pb, ocfg)?.verdict;
            let m = crate::orders::leq_minus(&pa, &pb, ocfg)?.verdict;
            Ok(expect(s == d && d == m, || format!("star={s} diamond={d} minus={m}")))
        })(),
    );
}

/// `P·D·Q` with signed permutations `P`, `Q` and 0/1 diagonal `D`; nested
/// supports half the time.
fn signed_partial_isometries<S: Scalar>(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> (Matrix<S>, Matrix<S>) {
    let rows = rng.random_range(cfg.min_dim..=cfg.max_dim);
    let cols = rng.random_range(cfg.min_dim..=cfg.max_dim);
    let small = rows.min(cols);
    let build = |mask: &[bool], p: &Matrix<S>, q: &Matrix<S>| {
        let d = Matrix::from_fn(rows, cols, |i, j| {
            if i == j && mask[i] {
                S::one()
            } else {
                S::zero()
            }
        });
        Matrix::chain(&[p, &d, q])
    };
    let mb: Vec<bool> = (0..small).map(|_| rng.random_bool(0.6)).collect();
    let p = signed_permutation(rows, rng);
    let q = signed_permutation(cols, rng);
    let b = build(&mb, &p, &q);
    let a = if rng.random_bool(0.5) {
        let ma: Vec<bool> = mb.iter().map(|&x| x && rng.random_bool(0.5)).collect();
        build(&ma, &p, &q)
    } else {
        let ma: Vec<bool> = (0..small).map(|_| rng.random_bool(0.5)).collect();
        build(&ma, &signed_permutation(rows, rng), &signed_permutation(cols, rng))
    };
    (a, b)
}

/// Predecessor soundness and the three criteria on one random `(B, T)`.
fn constructor_trial(cfg: &RunConfig, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let ocfg = cfg.order_config(rng.next_u64());
    let tol = &cfg.tol;
    let n = rng.random_range(cfg.min_dim.max(2)..=cfg.max_dim.max(2));
    let r = rng.random_range(1..=n.min(4));
    let k = rng.random_range(0..=r);
    let b = random_hs_matrix(n, r, rng);
    let spec = hartwig_spindelbock(&b, tol).and_then(|hs| {
        let t = random_idempotent::<C64, _>(hs.rank, k, rng)?;
        PredecessorSpec::new(b.clone(), t, tol)
    });
    rec.inputs(&[("B", &b)]);
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            rec.check("predecessor-construction", Err(e));
            return;
        }
    };
    rec.inputs(&[("B", &spec.b), ("T", &spec.t), ("A", &spec.a)]);
    let a = &spec.a;

    rec.check(
        "predecessor-diamond",
        (|| {
            let verdicts = [
                leq_diamond(a, &b, &ocfg)?.verdict,
                diamond_via_dagger_minus(a, &b, &ocfg)?.verdict,
                diamond_via_range_split(a, &b, &ocfg)?.verdict,
                diamond_via_rank(a, &b, &ocfg)?.verdict,
            ];
            Ok(expect(verdicts.iter().all(|&v| v), || format!("verdicts {verdicts:?}")))
        })(),
    );
    let mp_gap = (&spec.a_pinv(tol) - &moore_penrose(a, tol)).frobenius();
    rec.check(
        "predecessor-mp",
        Ok(expect(mp_gap <= 1e-9, || format!("‖A†(closed) − A†‖ = {mp_gap:e}"))),
    );
    rec.check(
        "recover-idempotent",
        recover_idempotent(a, &spec.hs, tol).map(|t| {
            let gap = (&t - &spec.t).frobenius();
            expect(gap <= 1e-8, || format!("‖T(recovered) − T‖ = {gap:e}"))
        }),
    );
    let rol = spec.reverse_order_law(tol);
    rec.check(
        "reverse-order-law",
        Ok(expect(rol.agree(), || format!("{rol:?}"))),
    );
    rec.check(
        "bidagger",
        is_bidagger(&b, tol).map(|p| expect(p.agree(), || format!("{p:?}"))),
    );
    rec.check(
        "dagger-isotone",
        spec.dagger_isotone(&ocfg)
            .map(|p| expect(p.agree(), || format!("{p:?}"))),
    );
}
