//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always shown.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use matorder::batch::{map_indexed, Execution};
use matorder::constructors::{
    dagger_isotone, is_bidagger, predecessor_mp, recover_idempotent, reverse_order_law,
    PredecessorSpec,
};
use matorder::geninv::{is_partial_isometry, projector_range};
use matorder::orders::{
    diamond_via_dagger_minus, diamond_via_range_split, diamond_via_rank, holds, leq_diamond,
    leq_left_star, leq_minus, leq_right_star, leq_space, leq_star, left_star_equivalents,
    right_star_equivalents,
};
use matorder::random::{
    diamond_predecessor_of, low_rank, random_hs_matrix, random_pair, random_unitary,
    small_integer_matrix,
};
use matorder::{mat, GaussRational, Matrix, OrderConfig, Relation, Scalar, Tol, C64};

type Ex = Matrix<GaussRational>;
type Fl = Matrix<C64>;

const SEED: u64 = 0x5eed;
/// Float equality tolerance in the relative sense of `Scalar::mat_eq`.
const TAU_EQ: f64 = 1e-9;
const MP_ABS: f64 = 1e-9;
const RECOVER_ABS: f64 = 1e-8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng_for(criterion: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ criterion);
    rng.set_stream(trial as u64);
    rng
}

fn cfg() -> OrderConfig {
    OrderConfig::with_tol(Tol::new(TAU_EQ, 64.0).unwrap())
}

fn exec() -> Execution {
    Execution::default()
}

fn fixture_nilpotent_unipotent() -> Outcome {
    let a: Ex = mat![[0, 1], [0, 0]];
    let b: Ex = mat![[1, 1], [0, 1]];
    let c = cfg();
    let d = leq_diamond(&a, &b, &c).unwrap().verdict;
    let m = leq_minus(&a, &b, &c).unwrap().verdict;
    let s = leq_space(&a, &b, &c).unwrap().verdict;
    let o = common::verdicts(&a, &b);
    let pass = d && !m && s && (o.diamond, o.minus, o.space) == (d, m, s);
    outcome(pass, format!("diamond={d} minus={m} space={s}"))
}

fn fixture_minus_not_diamond() -> Outcome {
    let a: Ex = mat![[0, 1], [0, 0]];
    let b: Ex = mat![[1, 0], [-1, 1]];
    let c = cfg();
    let m = leq_minus(&a, &b, &c).unwrap().verdict;
    let d = leq_diamond(&a, &b, &c).unwrap().verdict;
    let o = common::verdicts(&a, &b);
    let pass = m && !d && (o.minus, o.diamond) == (m, d);
    outcome(pass, format!("minus={m} diamond={d}"))
}

fn fixture_projectors() -> Outcome {
    let a: Ex = mat![[1, 1], [0, 0]];
    let b: Ex = Matrix::identity(2);
    let c = cfg();
    let pa = projector_range(&a, &c.tol);
    let pb = projector_range(&b, &c.tol);
    let expected: Ex = mat![[1, 0], [0, 0]];
    let on_projectors = leq_star(&pa, &pb, &c).unwrap().verdict;
    let on_matrices = leq_star(&a, &b, &c).unwrap().verdict;
    let pass = pa == expected && on_projectors && !on_matrices;
    outcome(
        pass,
        format!("P_A={:?} star(P_A,P_B)={on_projectors} star(A,B)={on_matrices}", pa.data()),
    )
}

fn fixture_one_sided() -> Outcome {
    let a: Ex = mat![[1, 0], [0, 0]];
    let b: Ex = mat![[1, 1], [1, -1]];
    let c = cfg();
    let d = leq_diamond(&a, &b, &c).unwrap().verdict;
    let l = leq_left_star(&a, &b, &c).unwrap().verdict;
    let r = leq_right_star(&a, &b, &c).unwrap().verdict;
    let o = common::verdicts(&a, &b);
    let pass = d && !l && !r && (o.diamond, o.left, o.right) == (d, l, r);
    outcome(pass, format!("diamond={d} left-star={l} right-star={r}"))
}

/// Literal small-integer pairs every third trial, structured pairs otherwise.
fn exact_pair(rng: &mut ChaCha8Rng, trial: usize) -> (Ex, Ex) {
    if trial.is_multiple_of(3) {
        let rows = rng.random_range(1..=5);
        let cols = rng.random_range(1..=5);
        let a = if rng.random_bool(0.3) {
            let r = rng.random_range(0..=rows.min(cols));
            low_rank(rows, cols, r, true, rng)
        } else {
            small_integer_matrix(rows, cols, true, rng)
        };
        (a, small_integer_matrix(rows, cols, true, rng))
    } else {
        let (_, a, b) = random_pair(1, 5, true, rng);
        (a, b)
    }
}

fn implication_chains() -> Outcome {
    const N: usize = 1000;
    let c = cfg();
    let rows = map_indexed(N, exec(), |i| {
        let mut rng = rng_for(5, i);
        let (a, b) = exact_pair(&mut rng, i);
        let lib: Vec<bool> = Relation::ALL
            .into_iter()
            .map(|rel| holds(rel, &a, &b, &c).unwrap())
            .collect();
        (lib, common::verdicts(&a, &b))
    });
    let imp = |p: bool, q: bool| !p || q;
    let mut violations = 0;
    let mut oracle_mismatch = 0;
    let mut counts = [0usize; 6];
    for (lib, o) in &rows {
        // Relation::ALL order: star, minus, space, diamond, left-star, right-star
        let [star, minus, space, diamond, left, right] = lib[..] else {
            unreachable!()
        };
        for (n, v) in counts.iter_mut().zip(lib) {
            *n += *v as usize;
        }
        let ok = imp(star, minus)
            && imp(minus, space)
            && imp(star, diamond)
            && imp(diamond, space)
            && imp(left, diamond)
            && imp(right, diamond);
        violations += !ok as usize;
        let expect = [o.star, o.minus, o.space, o.diamond, o.left, o.right];
        oracle_mismatch += (lib[..] != expect[..]) as usize;
    }
    outcome(
        violations == 0 && oracle_mismatch == 0,
        format!(
            "{N} exact pairs, {violations} violations, {oracle_mismatch} oracle mismatches; \
             holding star/minus/space/diamond/left/right = {counts:?}"
        ),
    )
}

fn diamond_routes<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, c: &OrderConfig) -> [bool; 4] {
    [
        leq_diamond(a, b, c).unwrap().verdict,
        diamond_via_dagger_minus(a, b, c).unwrap().verdict,
        diamond_via_range_split(a, b, c).unwrap().verdict,
        diamond_via_rank(a, b, c).unwrap().verdict,
    ]
}

fn characterization_equivalence() -> Outcome {
    const EXACT: usize = 250;
    const FLOAT: usize = 250;
    let c = cfg();
    let exact = map_indexed(EXACT, exec(), |i| {
        let mut rng = rng_for(6, i);
        let (_, a, b) = random_pair::<GaussRational, _>(1, 5, true, &mut rng);
        let routes = diamond_routes(&a, &b, &c);
        let oracle = common::verdicts(&a, &b).diamond;
        (routes, Some(oracle))
    });
    // Float pairs built on HS matrices with singular values in [1/4, 4]:
    // a predecessor, twice a nonzero predecessor, an unrelated matrix, or B itself.
    let float = map_indexed(FLOAT, exec(), |i| {
        let mut rng = rng_for(60, i);
        let n = rng.random_range(2..=5);
        let r = rng.random_range(1..=n);
        let b = random_hs_matrix(n, r, &mut rng);
        let (a, expected) = match i % 4 {
            0 => {
                let k = rng.random_range(0..=r);
                (PredecessorSpec::random(b.clone(), k, &mut rng, &c.tol).unwrap().a, Some(true))
            }
            1 => {
                let k = rng.random_range(1..=r);
                let a = PredecessorSpec::random(b.clone(), k, &mut rng, &c.tol).unwrap().a;
                (a.scale(&C64::new(2.0, 0.0)), Some(false))
            }
            2 => (random_hs_matrix(n, rng.random_range(1..=n), &mut rng), None),
            _ => (b.clone(), Some(true)),
        };
        (diamond_routes(&a, &b, &c), expected)
    });
    let mut disagreements = 0;
    let mut wrong = 0;
    let mut holding = 0;
    for (routes, expected) in exact.iter().chain(&float) {
        disagreements += routes.iter().any(|&v| v != routes[0]) as usize;
        wrong += expected.is_some_and(|e| e != routes[0]) as usize;
        holding += routes[0] as usize;
    }
    let total = EXACT + FLOAT;
    outcome(
        disagreements == 0 && wrong == 0,
        format!(
            "{total} pairs ({EXACT} exact, {FLOAT} float), {disagreements} route disagreements, \
             {wrong} against oracle or construction, diamond holds on {holding}"
        ),
    )
}

struct Instance {
    spec: PredecessorSpec,
}

fn instances() -> Vec<Instance> {
    let tol = cfg().tol;
    map_indexed(200, exec(), |i| {
        let mut rng = rng_for(7, i);
        let n = 2 + i % 5;
        let r = rng.random_range(1..=n.min(4));
        let k = rng.random_range(0..=r);
        let b = random_hs_matrix(n, r, &mut rng);
        Instance {
            spec: PredecessorSpec::random(b, k, &mut rng, &tol).unwrap(),
        }
    })
}

/// Largest relative residual of the four Penrose equations.
fn penrose_defect(a: &Fl, x: &Fl) -> f64 {
    let rel = |lhs: Fl, rhs: &Fl| (&lhs - rhs).frobenius() / (1.0 + rhs.frobenius());
    let ax = a * x;
    let xa = x * a;
    [
        rel(&ax * a, a),
        rel(&xa * x, x),
        rel(ax.adjoint(), &ax),
        rel(xa.adjoint(), &xa),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

fn constructor_soundness(inst: &[Instance]) -> Outcome {
    let c = cfg();
    let rows = map_indexed(inst.len(), exec(), |i| {
        let s = &inst[i].spec;
        let diamond = leq_diamond(&s.a, &s.b, &c).unwrap().verdict
            && diamond_via_dagger_minus(&s.a, &s.b, &c).unwrap().verdict;
        let x = predecessor_mp(&s.b, &s.t, &c.tol).unwrap();
        let mp_err = (&x - &matorder::moore_penrose(&s.a, &c.tol)).frobenius();
        let penrose = penrose_defect(&s.a, &x);
        let t_err = recover_idempotent(&s.a, &s.hs, &c.tol)
            .map(|t| (&t - &s.t).frobenius())
            .unwrap_or(f64::INFINITY);
        (diamond, mp_err, penrose, t_err)
    });
    let not_diamond = rows.iter().filter(|r| !r.0).count();
    let worst = |f: fn(&(bool, f64, f64, f64)) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    let (mp, pen, rec) = (worst(|r| r.1), worst(|r| r.2), worst(|r| r.3));
    outcome(
        not_diamond == 0 && mp <= MP_ABS && pen <= TAU_EQ && rec <= RECOVER_ABS,
        format!(
            "{} instances, {not_diamond} not diamond, max ‖A†−mp‖_F={mp:.2e}, \
             max Penrose defect={pen:.2e}, max ‖T̂−T‖_F={rec:.2e}",
            inst.len()
        ),
    )
}

fn criteria_agreement(inst: &[Instance]) -> Outcome {
    let c = cfg();
    let rows = map_indexed(inst.len(), exec(), |i| {
        let s = &inst[i].spec;
        [
            reverse_order_law(&s.a, &s.b, &c).unwrap(),
            is_bidagger(&s.b, &c.tol).unwrap(),
            dagger_isotone(&s.b, &s.t, &c).unwrap(),
        ]
    });
    let mut disagree = [0usize; 3];
    let mut direct_true = [0usize; 3];
    for r in &rows {
        for (j, p) in r.iter().enumerate() {
            disagree[j] += !p.agree() as usize;
            direct_true[j] += p.direct as usize;
        }
    }
    outcome(
        disagree == [0; 3],
        format!(
            "{} instances, disagreements rol/bidagger/isotone = {disagree:?}, \
             direct true = {direct_true:?}",
            inst.len()
        ),
    )
}

fn four_way_equivalence() -> Outcome {
    const N: usize = 500;
    let c = cfg();
    let rows = map_indexed(N, exec(), |i| {
        let mut rng = rng_for(9, i);
        let (_, a, b) = random_pair::<GaussRational, _>(1, 5, true, &mut rng);
        let l = left_star_equivalents(&a, &b, &c).unwrap();
        let r = right_star_equivalents(&a, &b, &c).unwrap();
        let o = common::verdicts(&a, &b);
        (l.consistent, r.consistent, l.verdict == o.left && r.verdict == o.right, l.verdict, r.verdict)
    });
    let violations = rows.iter().filter(|r| !(r.0 && r.1)).count();
    let mismatch = rows.iter().filter(|r| !r.2).count();
    let (lt, rt) = (
        rows.iter().filter(|r| r.3).count(),
        rows.iter().filter(|r| r.4).count(),
    );
    outcome(
        violations == 0 && mismatch == 0,
        format!(
            "{N} pairs, {violations} violations, {mismatch} oracle mismatches, \
             left-star holds on {lt}, right-star on {rt}"
        ),
    )
}

/// `U·diag(mask)·V*` padded to `rows × cols`.
fn partial_isometry(u: &Fl, v: &Fl, mask: &[bool]) -> Fl {
    let core = Matrix::from_fn(u.cols(), v.cols(), |i, j| {
        if i == j && mask[i] {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Matrix::chain(&[u, &core, &v.adjoint()])
}

fn partial_isometry_collapse() -> Outcome {
    const N: usize = 100;
    let c = cfg();
    let rows = map_indexed(N, exec(), |i| {
        let mut rng = rng_for(10, i);
        let m = rng.random_range(1..=5);
        let n = rng.random_range(1..=5);
        let small = m.min(n);
        let (u, v) = (random_unitary(m, &mut rng), random_unitary(n, &mut rng));
        let mb: Vec<bool> = (0..small).map(|_| rng.random_bool(0.7)).collect();
        let b = partial_isometry(&u, &v, &mb);
        // even trials nest the supports, so all three orders hold
        let nested = i % 2 == 0;
        let a = if nested {
            let ma: Vec<bool> = mb.iter().map(|&x| x && rng.random_bool(0.5)).collect();
            partial_isometry(&u, &v, &ma)
        } else {
            let ma: Vec<bool> = (0..small).map(|_| rng.random_bool(0.5)).collect();
            partial_isometry(&random_unitary(m, &mut rng), &random_unitary(n, &mut rng), &ma)
        };
        let inputs_ok = is_partial_isometry(&a, &c.tol) && is_partial_isometry(&b, &c.tol);
        let s = leq_star(&a, &b, &c).unwrap().verdict;
        let d = leq_diamond(&a, &b, &c).unwrap().verdict;
        let mi = leq_minus(&a, &b, &c).unwrap().verdict;
        (inputs_ok, s == d && d == mi, !nested || s, s)
    });
    let bad_inputs = rows.iter().filter(|r| !r.0).count();
    let violations = rows.iter().filter(|r| !r.1).count();
    let nested_missed = rows.iter().filter(|r| !r.2).count();
    let holding = rows.iter().filter(|r| r.3).count();
    outcome(
        bad_inputs == 0 && violations == 0 && nested_missed == 0,
        format!(
            "{N} partial isometries, {violations} violations, {nested_missed} nested pairs \
             rejected, orders hold on {holding}"
        ),
    )
}

/// Twenty distinct 3×3 exact matrices: four roots and repeated random
/// diamond predecessors of corpus members, plus the zero matrix.
fn corpus() -> Vec<Ex> {
    let tol = cfg().tol;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let mut out: Vec<Ex> = vec![Matrix::zeros(3, 3)];
    for r in [3, 3, 2, 2] {
        out.push(low_rank(3, 3, r, true, &mut rng));
    }
    let mut tries = 0;
    while out.len() < 20 {
        tries += 1;
        assert!(tries < 10_000, "corpus generation stalled at {}", out.len());
        let parent = out[rng.random_range(1..out.len())].clone();
        let (p, _) = diamond_predecessor_of(&parent, &mut rng, &tol);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn poset_axioms() -> Outcome {
    let c = cfg();
    let items = corpus();
    let n = items.len();
    let cells = map_indexed(n * n, exec(), |k| {
        let (a, b) = (&items[k / n], &items[k % n]);
        let def = leq_diamond(a, b, &c).unwrap().verdict;
        let via = diamond_via_dagger_minus(a, b, &c).unwrap().verdict;
        (def, via)
    });
    let route_mismatch = cells.iter().filter(|(d, v)| d != v).count();
    let le = |i: usize, j: usize| cells[i * n + j].0;
    let reflexive = (0..n).filter(|&i| !le(i, i)).count();
    let mut antisym = 0;
    let mut transitive = 0;
    let mut triples = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j && le(i, j) && le(j, i) {
                antisym += 1;
            }
            for k in 0..n {
                triples += 1;
                if le(i, j) && le(j, k) && !le(i, k) {
                    transitive += 1;
                }
            }
        }
    }
    let related = (0..n * n).filter(|&k| k / n != k % n && cells[k].0).count();
    outcome(
        route_mismatch == 0 && reflexive + antisym + transitive == 0,
        format!(
            "{n} matrices, {triples} triples, {related} strict relations; failures: \
             reflexive {reflexive}, antisymmetric {antisym}, transitive {transitive}, \
             route mismatches {route_mismatch}"
        ),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let start = Instant::now();
    let inst = instances();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("nilpotent below unipotent fixture", Box::new(fixture_nilpotent_unipotent)),
        ("minus without diamond fixture", Box::new(fixture_minus_not_diamond)),
        ("projector star counterexample", Box::new(fixture_projectors)),
        ("diamond without one-sided star", Box::new(fixture_one_sided)),
        ("implication chains", Box::new(implication_chains)),
        ("diamond characterizations agree", Box::new(characterization_equivalence)),
        ("predecessor constructor soundness", Box::new(|| constructor_soundness(&inst))),
        ("criteria agree with direct checks", Box::new(|| criteria_agreement(&inst))),
        ("one-sided star four-way equivalence", Box::new(four_way_equivalence)),
        ("partial isometry collapse", Box::new(partial_isometry_collapse)),
        ("diamond poset axioms", Box::new(poset_axioms)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        failed += !o.pass as usize;
        println!(
            "{} {:>2} {name}: {} [{:.2}s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
