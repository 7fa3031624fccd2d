//! `bk`: command-line front end for baerkit.

mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use baerkit::dimension::{d, dim_fgp, dim_real, TraceWeights};
use baerkit::io::{algebra_to_json, element_to_json, module_to_json, scalar_to_json};
use baerkit::k0::{k0_group, mu_and_inverse, proj_monoid};
use baerkit::modules::{
    closure_bnd, closure_goldie, closure_projinf, closure_summands, split, torsion_filtration,
};
use baerkit::par::Execution;
use baerkit::projections::{
    ann_left, ann_right, equivalent, generalized_comparability, join, lp, meet, parallelogram_defect,
    partial_isometry_witness, rp,
};
use baerkit::torsion_lab::{self, FDAlgebra};
use baerkit::verify::{self, Failure, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use input::{load, Elements};

#[derive(Parser)]
#[command(
    name = "bk",
    version,
    about = "Exact dimension, lattice, torsion and K0 computations"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// An algebra and one or more elements of `M_n(A)`. Every input is a file
/// path, inline JSON, or a built-in algebra name.
#[derive(Args)]
struct ElementArgs {
    #[arg(long)]
    algebra: String,
    /// Elements live in `M_n(A)`.
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long = "element", required = true)]
    elements: Vec<String>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    module: String,
}

#[derive(Args)]
struct SeedArg {
    /// Falls back to `BK_SEED`, then to 1.
    #[arg(long, env = "BK_SEED", default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Center-valued dimension of a projection, optionally with a real trace.
    Dim {
        #[command(flatten)]
        input: ElementArgs,
        /// Trace weights such as `1/3,2/3`.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Right projection of an element.
    Rp(ElementArgs),
    /// Left projection of an element.
    Lp(ElementArgs),
    /// Projection onto the right annihilator of the given elements.
    Annr(ElementArgs),
    /// Projection onto the left annihilator of the given elements.
    Annl(ElementArgs),
    /// Infimum of projections.
    Meet(ElementArgs),
    /// Supremum of projections.
    Join(ElementArgs),
    /// Murray-von Neumann equivalence, decided by dimension.
    Equiv(PairArgs),
    /// A partial isometry between equivalent projections.
    Witness(PairArgs),
    /// The central projection of generalized comparability.
    Gc(PairArgs),
    /// `p - p∧q` and `p∨q - q`, and whether they are equivalent.
    Pgram(PairArgs),
    /// Closure of the image of a presentation in `A^n`.
    Close {
        #[command(flatten)]
        input: ModuleArgs,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Split `coker F` into its bounded and projective parts.
    Split(ModuleArgs),
    /// The torsion filtration `tM ⊆ TM ⊆ M`.
    Filtration(ModuleArgs),
    /// Projection classes and `K_0`.
    K0 {
        #[command(subcommand)]
        command: K0Command,
    },
    /// Torsion theories over a finite-dimensional algebra.
    Lab {
        #[command(subcommand)]
        command: LabCommand,
    },
    /// Run a verification suite.
    Verify {
        /// dimension, lattice, closure, split, k0, lab, witness, realdim or all.
        suite: String,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Run cases on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Re-run a failure dumped by `verify`.
    Replay {
        /// A failure object, or a list of them.
        failure: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bnd,
    Summands,
    Projinf,
    Goldie,
    All,
}

#[derive(Subcommand)]
enum K0Command {
    /// Classes realisable in `M_n(A)` for `n <= nmax`.
    Monoid {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        nmax: usize,
    },
    /// `K_0(A)` with the class of the unit.
    Group {
        #[arg(long)]
        algebra: String,
    },
    /// Class over `Q = A` and the recovered summand.
    Mu {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        projection: String,
    },
}

#[derive(Args)]
struct LabArgs {
    /// A built-in lab algebra.
    #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
    builtin: Option<String>,
    /// A lab algebra as `{"dim", "table", "unit"}`.
    #[arg(long)]
    algebra: Option<String>,
    /// regular, quotient_by_radical, radical, socle, or `{"dim", "actions"}`.
    #[arg(long, default_value = "regular")]
    module: String,
}

#[derive(Subcommand)]
enum LabCommand {
    Radical(LabArgs),
    Socle(LabArgs),
    Goldie(LabArgs),
    Bounded(LabArgs),
    Report(LabArgs),
}

/// Input problems exit with 1, failed verification with 2.
enum Outcome {
    Done(Value),
    Failed(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done(v)) => {
            emit(&render::render(&v, cli.format));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(v)) => {
            emit(&render::render(&v, cli.format));
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Writes to stdout, treating a closed pipe (`bk ... | head`) as success.
fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{out}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    let out = match command {
        Command::Dim { input, weights } => {
            let el = Elements::load(&input.algebra, input.n, &input.elements)?;
            let p = el.projection(0)?;
            let v = dim_fgp(&el.ring, &p)?;
            let mut out = json!({ "dim": v.to_strings() });
            if let Some(w) = weights {
                let w = TraceWeights::parse(&w)?;
                out["real"] = scalar_to_json(&dim_real(&v, &w)?);
            }
            out
        }
        Command::Rp(input) => {
            let el = Elements::load(&input.algebra, input.n, &input.elements)?;
            json!({ "projection": element_to_json(rp(&el.elements[0]).element()) })
        }
        Command::Lp(input) => {
            let el = Elements::load(&input.algebra, input.n, &input.elements)?;
            json!({ "projection": element_to_json(lp(&el.elements[0]).element()) })
        }
        Command::Annr(input) => {
            let el = Elements::load(&input.algebra, input.n, &input.elements)?;
            json!({ "projection": element_to_json(ann_right(&el.elements)?.element()) })
        }
        Command::Annl(input) => {
            let el = Elements::load(&input.algebra, input.n, &input.elements)?;
            json!({ "projection": element_to_json(ann_left(&el.elements)?.element()) })
        }
        Command::Meet(input) => {
            let el = Elements::load(&input.algebra, input.n, &input.elements)?;
            json!({ "projection": element_to_json(meet(&el.projections()?)?.element()) })
        }
        Command::Join(input) => {
            let el = Elements::load(&input.algebra, input.n, &input.elements)?;
            json!({ "projection": element_to_json(join(&el.projections()?)?.element()) })
        }
        Command::Equiv(pair) => {
            let el = Elements::load(&pair.algebra, pair.n, &[pair.p, pair.q])?;
            let (p, q) = (el.projection(0)?, el.projection(1)?);
            json!({
                "equivalent": equivalent(&p, &q)?,
                "d_p": d(&p).to_strings(),
                "d_q": d(&q).to_strings(),
            })
        }
        Command::Witness(pair) => {
            let el = Elements::load(&pair.algebra, pair.n, &[pair.p, pair.q])?;
            let w = partial_isometry_witness(&el.projection(0)?, &el.projection(1)?)?;
            json!({
                "algebra": algebra_to_json(w.algebra()),
                "w": element_to_json(w.element()),
            })
        }
        Command::Gc(pair) => {
            let el = Elements::load(&pair.algebra, pair.n, &[pair.p, pair.q])?;
            let c = generalized_comparability(&el.projection(0)?, &el.projection(1)?)?;
            json!({ "c": element_to_json(c.element()) })
        }
        Command::Pgram(pair) => {
            let el = Elements::load(&pair.algebra, pair.n, &[pair.p, pair.q])?;
            let (lower, upper, eq) = parallelogram_defect(&el.projection(0)?, &el.projection(1)?)?;
            json!({
                "lower": element_to_json(lower.element()),
                "upper": element_to_json(upper.element()),
                "equivalent": eq,
            })
        }
        Command::Close { input, method, seed } => close(&input, method, seed.seed)?,
        Command::Split(input) => {
            let m = input::module(&input.algebra, &input.module)?;
            let s = split(&m)?;
            json!({
                "closure_projection": element_to_json(s.closure_projection.element()),
                "projective_part": element_to_json(s.projective_part.element()),
                "bounded_part": module_to_json(&s.bounded_part),
                "bounded_is_zero": s.bounded_part.is_zero(),
                "dims": s.dims,
            })
        }
        Command::Filtration(input) => {
            let m = input::module(&input.algebra, &input.module)?;
            serde_json::to_value(torsion_filtration(&m)?)?
        }
        Command::K0 { command } => k0(command)?,
        Command::Lab { command } => lab(command)?,
        Command::Verify {
            suite,
            seed,
            cases,
            sequential,
        } => {
            let cfg = VerifyConfig {
                seed: seed.seed,
                cases,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
            };
            let reports = verify::run(&suite, &cfg)?;
            let passed = verify::all_passed(&reports);
            let v = serde_json::to_value(&reports)?;
            return Ok(if passed {
                Outcome::Done(v)
            } else {
                Outcome::Failed(v)
            });
        }
        Command::Replay { failure } => {
            let v = load(&failure)?;
            let failures: Vec<Failure> = match v {
                Value::Array(_) => serde_json::from_value(v)?,
                _ => vec![serde_json::from_value(v)?],
            };
            let mut again = Vec::new();
            for f in &failures {
                again.extend(verify::replay(f)?);
            }
            let reproduced = !again.is_empty();
            let v = json!({ "reproduced": reproduced, "failures": again });
            return Ok(if reproduced {
                Outcome::Failed(v)
            } else {
                Outcome::Done(v)
            });
        }
    };
    Ok(Outcome::Done(out))
}

fn close(input: &ModuleArgs, method: Method, seed: u64) -> Result<Value> {
    const CERTIFICATES: usize = 4;
    let m = input::module(&input.algebra, &input.module)?;
    let k = m.image();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = serde_json::Map::new();
    let methods: &[Method] = match method {
        Method::All => &[Method::Bnd, Method::Summands, Method::Projinf, Method::Goldie],
        _ => std::slice::from_ref(&method),
    };
    let mut results = Vec::new();
    for m in methods {
        let (name, p) = match m {
            Method::Bnd => ("bnd", closure_bnd(&k)?),
            Method::Summands => ("summands", closure_summands(&k, &mut rng, CERTIFICATES)?),
            Method::Projinf => ("projinf", closure_projinf(&k, &mut rng, CERTIFICATES)?),
            Method::Goldie => ("goldie", closure_goldie(&k)?),
            Method::All => unreachable!("expanded above"),
        };
        out.insert(name.into(), element_to_json(p.element()));
        results.push(p);
    }
    let agree = results.windows(2).all(|w| w[0] == w[1]);
    out.insert("agree".into(), json!(agree));
    if !agree {
        bail!("closure characterisations disagree: {}", Value::Object(out));
    }
    Ok(Value::Object(out))
}

fn k0(command: K0Command) -> Result<Value> {
    Ok(match command {
        K0Command::Monoid { algebra, nmax } => {
            let a = input::algebra(&algebra)?;
            let classes = proj_monoid(&a, nmax)?;
            json!({
                "count": classes.len(),
                "classes": classes
                    .iter()
                    .map(|c| json!({ "ranks": c.ranks(), "dim": c.dim_vector().to_strings() }))
                    .collect::<Vec<_>>(),
            })
        }
        K0Command::Group { algebra } => serde_json::to_value(k0_group(&input::algebra(&algebra)?))?,
        K0Command::Mu {
            algebra,
            n,
            projection,
        } => {
            let el = Elements::load(&algebra, n, &[projection])?;
            let p = el.projection(0)?;
            let mu = mu_and_inverse(&el.ring, &p)?;
            json!({
                "class_over_q": {
                    "ranks": mu.class_over_q.ranks(),
                    "dim": mu.class_over_q.dim_vector().to_strings(),
                },
                "round_trip": element_to_json(mu.round_trip.element()),
                "round_trip_exact": mu.round_trip == p,
            })
        }
    })
}

fn lab(command: LabCommand) -> Result<Value> {
    let (kind, args) = match command {
        LabCommand::Radical(a) => ("radical", a),
        LabCommand::Socle(a) => ("socle", a),
        LabCommand::Goldie(a) => ("goldie", a),
        LabCommand::Bounded(a) => ("bounded", a),
        LabCommand::Report(a) => ("report", a),
    };
    let r = match (&args.builtin, &args.algebra) {
        (Some(name), _) => FDAlgebra::builtin(name)?,
        (None, Some(src)) => baerkit::io::lab_algebra_from_json(&load(src)?)?,
        (None, None) => bail!("give --builtin or --algebra"),
    };
    let module = if torsion_lab::BUILTIN_MODULES.contains(&args.module.as_str()) {
        torsion_lab::builtin_module(&r, &args.module)?
    } else {
        baerkit::io::lab_module_from_json(&load(&args.module)?, &r)?
    };
    let part = |name: &str, s: &baerkit::linalg::Subspace| -> Result<Value> {
        Ok(serde_json::to_value(baerkit::report::TorsionPart::computed(
            name, s,
        ))?)
    };
    match kind {
        "radical" => part("radical", &torsion_lab::radical(&r)?),
        "socle" => part("socle", &torsion_lab::socle(&module, &r)?),
        "goldie" => part("goldie", &torsion_lab::goldie_torsion(&module, &r)?),
        "bounded" => part("bounded", &torsion_lab::bounded_submodule(&module, &r)?),
        _ => Ok(serde_json::to_value(torsion_lab::theory_report(&module, &r)?)?),
    }
    .context("lab computation")
}
