use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use matorder::batch::Execution;
use matorder::constructors::{
    dagger_isotone, diamond_predecessor, is_bidagger, predecessor_mp, random_idempotent_seeded,
    reverse_order_law,
};
use matorder::decompositions::{hartwig_spindelbock, svd};
use matorder::fuzz::{self, RunConfig};
use matorder::orders::{self, Characterization, OrderConfig, Relation};
use matorder::poset::{load_dir, PosetGraph};
use matorder::{
    penrose_residuals, AnyMatrix, Backend, Error, GaussRational, Matrix, Result, Scalar, Tol,
    C64,
};

#[derive(Parser)]
#[command(name = "matorder", version, about = "Generalized inverses and matrix partial orders")]
struct Cli {
    /// Backend to evaluate on; inputs are converted to it. By default the
    /// backend of the input files is used.
    #[arg(long, global = true)]
    backend: Option<Backend>,
    /// Matrix equality tolerance for the float backend.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Safety factor in the float rank cutoff.
    #[arg(long, global = true, default_value_t = 64.0)]
    rank_factor: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an order between two matrices; exit 0 if it holds, 1 if not.
    Check {
        #[arg(long)]
        order: OrderArg,
        #[arg(long, default_value = "definition")]
        via: ViaArg,
        a: PathBuf,
        b: PathBuf,
    },
    /// Moore–Penrose inverse, written in the matrix file format.
    Pinv { a: PathBuf },
    /// SVD and Hartwig–Spindelböck form (float backend).
    Decompose {
        a: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        kind: DecompKind,
    },
    /// Diamond predecessor of B from an idempotent T, given or random.
    Predecessor {
        b: PathBuf,
        #[arg(long, conflicts_with = "rank")]
        t: Option<PathBuf>,
        /// Rank of a random idempotent T.
        #[arg(long, required_unless_present = "t")]
        rank: Option<usize>,
    },
    /// Reverse order law, bi-dagger and dagger-isotonicity: direct vs criterion.
    Criteria {
        b: PathBuf,
        #[arg(long)]
        t: PathBuf,
    },
    /// Run the seeded property suites; exit 1 if any property failed.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        min_dim: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 5)]
        inner_samples: usize,
        /// Run trials on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Hasse diagram of the matrices in a directory, as DOT.
    Poset {
        dir: PathBuf,
        #[arg(long)]
        order: OrderArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Star,
    Minus,
    Space,
    Diamond,
    LeftStar,
    RightStar,
}

impl From<OrderArg> for Relation {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Star => Relation::Star,
            OrderArg::Minus => Relation::Minus,
            OrderArg::Space => Relation::Space,
            OrderArg::Diamond => Relation::Diamond,
            OrderArg::LeftStar => Relation::LeftStar,
            OrderArg::RightStar => Relation::RightStar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ViaArg {
    Definition,
    DaggerMinus,
    RangeSplit,
    Rank,
    Equivalents,
}

impl From<ViaArg> for Characterization {
    fn from(v: ViaArg) -> Self {
        match v {
            ViaArg::Definition => Characterization::Definition,
            ViaArg::DaggerMinus => Characterization::DaggerMinus,
            ViaArg::RangeSplit => Characterization::RangeSplit,
            ViaArg::Rank => Characterization::Rank,
            ViaArg::Equivalents => Characterization::Equivalents,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DecompKind {
    Svd,
    Hs,
    Both,
}

struct Ctx {
    backend: Option<Backend>,
    tol: Tol,
    seed: u64,
}

impl Ctx {
    fn order_config(&self) -> OrderConfig {
        OrderConfig {
            tol: self.tol,
            seed: self.seed,
            ..OrderConfig::default()
        }
    }

    /// Loads matrices and brings them to one backend.
    fn load(&self, paths: &[&Path]) -> Result<Vec<AnyMatrix>> {
        let loaded = paths
            .iter()
            .map(AnyMatrix::load)
            .collect::<Result<Vec<_>>>()?;
        self.unify(loaded)
    }

    fn unify(&self, loaded: Vec<AnyMatrix>) -> Result<Vec<AnyMatrix>> {
        match self.backend {
            Some(b) => loaded.into_iter().map(|m| m.convert(b)).collect(),
            None => {
                if let Some(first) = loaded.first() {
                    if let Some(other) = loaded.iter().find(|m| m.backend() != first.backend()) {
                        return Err(Error::BackendMismatch(first.backend(), other.backend()));
                    }
                }
                Ok(loaded)
            }
        }
    }

    /// Float-only commands accept exact files but refuse `--backend exact`.
    fn load_float(&self, path: &Path, what: &'static str) -> Result<Matrix<C64>> {
        if self.backend == Some(Backend::Exact) {
            return Err(Error::ExactUnsupported(what));
        }
        Ok(AnyMatrix::load(path)?.to_float())
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn check<S: Scalar>(
    rel: Relation,
    via: Characterization,
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &OrderConfig,
) -> Result<ExitCode> {
    let report = orders::check(rel, via, a, b, cfg)?;
    print_json(&report);
    Ok(if report.verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn pinv<S: Scalar>(a: &Matrix<S>, tol: &Tol) -> Result<ExitCode> {
    let x = matorder::moore_penrose(a, tol);
    if !penrose_residuals(a, &x, tol)?.all_hold() {
        return Err(Error::InvalidArgument(
            "Moore–Penrose inverse failed the Penrose equations; try a larger --tol".into(),
        ));
    }
    println!("{}", x.to_json());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ctx = Ctx {
        backend: cli.backend,
        tol: Tol::new(cli.tol, cli.rank_factor)?,
        seed: cli.seed,
    };
    let tol = &ctx.tol;
    match cli.command {
        Command::Check { order, via, a, b } => {
            let cfg = ctx.order_config();
            let (rel, via) = (order.into(), via.into());
            match <[AnyMatrix; 2]>::try_from(ctx.load(&[&a, &b])?).expect("two inputs") {
                [AnyMatrix::Exact(a), AnyMatrix::Exact(b)] => check(rel, via, &a, &b, &cfg),
                [AnyMatrix::Float(a), AnyMatrix::Float(b)] => check(rel, via, &a, &b, &cfg),
                _ => unreachable!("unified backends"),
            }
        }
        Command::Pinv { a } => match ctx.load(&[&a])?.remove(0) {
            AnyMatrix::Exact(a) => pinv(&a, tol),
            AnyMatrix::Float(a) => pinv(&a, tol),
        },
        Command::Decompose { a, kind } => {
            let a = ctx.load_float(&a, "decompose")?;
            let mut out = serde_json::Map::new();
            if kind != DecompKind::Hs {
                out.insert("svd".into(), serde_json::to_value(svd(&a)?)?);
            }
            if kind != DecompKind::Svd {
                out.insert("hs".into(), serde_json::to_value(hartwig_spindelbock(&a, tol)?)?);
            }
            print_json(&out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Predecessor { b, t, rank } => {
            let b = ctx.load_float(&b, "predecessor")?;
            let t = match (t, rank) {
                (Some(t), _) => ctx.load_float(&t, "predecessor")?,
                (None, Some(k)) => {
                    let r = hartwig_spindelbock(&b, tol)?.rank;
                    random_idempotent_seeded::<C64>(r, k, ctx.seed)?
                }
                (None, None) => unreachable!("enforced by clap"),
            };
            let a = diamond_predecessor(&b, &t, tol)?;
            let a_pinv = predecessor_mp(&b, &t, tol)?;
            print_json(&json!({ "seed": ctx.seed, "T": t, "A": a, "A_pinv": a_pinv }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Criteria { b, t } => {
            let b = ctx.load_float(&b, "criteria")?;
            let t = ctx.load_float(&t, "criteria")?;
            let cfg = ctx.order_config();
            let a = diamond_predecessor(&b, &t, tol)?;
            print_json(&json!({
                "reverse_order_law": reverse_order_law(&a, &b, &cfg)?,
                "bidagger": is_bidagger(&b, tol)?,
                "dagger_isotone": dagger_isotone(&b, &t, &cfg)?,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuzz {
            trials,
            min_dim,
            max_dim,
            inner_samples,
            sequential,
        } => {
            let cfg = RunConfig {
                backend: ctx.backend.unwrap_or(Backend::Exact),
                tol: ctx.tol,
                seed: ctx.seed,
                trials,
                min_dim,
                max_dim,
                inner_samples,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::default()
                },
            };
            let summary = fuzz::run(&cfg)?;
            print_json(&summary);
            Ok(if summary.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Poset { dir, order } => {
            let (labels, mats): (Vec<String>, Vec<AnyMatrix>) = load_dir(&dir)?.into_iter().unzip();
            let mats = ctx.unify(mats)?;
            let cfg = ctx.order_config();
            let exec = Execution::default();
            let graph = match mats.first().map(AnyMatrix::backend) {
                Some(Backend::Float) => {
                    let items = labels.into_iter().zip(mats.iter().map(AnyMatrix::to_float)).collect::<Vec<_>>();
                    PosetGraph::build(&items, order.into(), &cfg, exec)?
                }
                _ => {
                    let items: Vec<(String, Matrix<GaussRational>)> = labels
                        .into_iter()
                        .zip(mats)
                        .map(|(l, m)| match m {
                            AnyMatrix::Exact(m) => (l, m),
                            AnyMatrix::Float(_) => unreachable!("unified backends"),
                        })
                        .collect();
                    PosetGraph::build(&items, order.into(), &cfg, exec)?
                }
            };
            print!("{}", graph.to_dot());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
