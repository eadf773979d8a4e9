use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootforge::abstract_roots::{is_abstract_root_basis, BetweennessTable, Realization, Window};
use rootforge::io;
use rootforge::orders::{lex_system, standard_basis, CocycleTable};
use rootforge::real_roots::{generate_roots, BasedRootDatum};
use rootforge::twisting::{apply_twist, twist_sign_solve, validate_twist};
use rootforge::{CoxeterGroup, CoxeterMatrix, Exec, DEFAULT_DEPTH, DEFAULT_ELEMENT_CAP, DEFAULT_MAX_LEN};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "rootforge", version, about = "Root systems, reflection cocycles and orders of Coxeter groups")]
struct Cli {
    /// Element cap for enumerations [env: ROOTFORGE_CAP_ELEMENTS] [default: 200000]
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Run kernels on the calling thread only
    #[arg(long, global = true)]
    sequential: bool,
    /// Write output here instead of stdout
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coxeter matrix checks and element enumeration
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Real root generation
    Roots {
        #[command(subcommand)]
        op: RootsOp,
    },
    /// Reflection cocycle N(w) of a word
    Cocycle {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Quasi-positive systems
    Qps {
        #[arg(value_enum)]
        op: QpsOp,
        #[command(flatten)]
        win: WindowArgs,
        #[arg(long)]
        system: PathBuf,
    },
    /// Abstract root bases
    Basis {
        #[command(subcommand)]
        op: BasisOp,
    },
    /// Diagram twists
    Twist {
        #[arg(value_enum)]
        op: TwistOp,
        #[arg(long)]
        spec: PathBuf,
        /// Base group, when the spec does not embed one
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Weak and twisted Bruhat orders on a finite group
    Order {
        #[arg(value_enum)]
        op: OrderOp,
        #[arg(long)]
        group: PathBuf,
        /// Twist set A (array of reflection words); empty when omitted
        #[arg(long)]
        twist_set: Option<PathBuf>,
        /// Use A from the lexicographic construction with the coordinate order reversed
        #[arg(long, conflicts_with = "twist_set")]
        lex: bool,
        /// Also write the Hasse diagram as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OrderFormat,
    },
    /// Based root data
    Datum {
        #[command(subcommand)]
        op: DatumOp,
    },
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long)]
    group: PathBuf,
    /// Reflection length bound for infinite groups
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
}

#[derive(Subcommand)]
enum GroupOp {
    /// Check a Coxeter matrix file
    Validate {
        #[arg(long)]
        group: PathBuf,
    },
    /// List elements up to a length, in ShortLex order
    Enum {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
}

#[derive(Subcommand)]
enum RootsOp {
    /// Generate roots up to a depth
    Gen {
        /// Datum or NGCM file
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        datum: Option<PathBuf>,
        /// Coxeter matrix file (standard datum)
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QpsOp {
    /// Simple roots of the system
    Simple,
    /// Closure test against betweenness
    Biclosed,
    /// Find w with the system equal to w(T_+)
    Conjugator,
}

#[derive(Subcommand)]
enum BasisOp {
    /// Decide whether a family is an abstract root basis
    Check {
        #[command(flatten)]
        win: WindowArgs,
        #[arg(long)]
        delta: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TwistOp {
    /// Check the block conditions
    Validate,
    /// Build the twisted Coxeter system
    Apply,
    /// Solve for signs making the twisted generators a simple family
    Signs,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderOp {
    /// Left weak order
    Weak,
    /// Twisted Bruhat order for a twist set A
    Bruhat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum DatumOp {
    /// Validate a datum and report reducedness and symmetrizability
    Lint {
        #[arg(long)]
        datum: PathBuf,
    },
}

/// What a command produced, plus whether its property check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn json(v: Value, ok: bool) -> Self {
        Self { text: serde_json::to_string_pretty(&v).expect("json values serialize") + "\n", ok }
    }
}

struct Ctx {
    cap: usize,
    exec: Exec,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_group(path: &Path) -> Result<CoxeterGroup> {
    Ok(CoxeterGroup::new(io::read_coxeter_matrix(&read(path)?)?))
}

fn window(ctx: &Ctx, g: &CoxeterGroup, max_len: usize) -> Result<Arc<Window>> {
    let w = if g.is_finite() { Window::full(g, ctx.cap, ctx.exec)? } else { Window::new(g, max_len, ctx.cap, ctx.exec)? };
    Ok(Arc::new(w))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cap = match cli.cap {
        Some(c) => c,
        None => match std::env::var("ROOTFORGE_CAP_ELEMENTS") {
            Ok(v) => v.parse().map_err(|_| rootforge::Error::Invalid(format!("ROOTFORGE_CAP_ELEMENTS=`{v}`")))?,
            Err(_) => DEFAULT_ELEMENT_CAP,
        },
    };
    let ctx = Ctx { cap, exec: if cli.sequential { Exec::Sequential } else { Exec::default() } };
    match &cli.command {
        Command::Group { op: GroupOp::Validate { group } } => {
            let g = load_group(group)?;
            let m = g.matrix();
            Ok(Outcome::json(
                json!({
                    "valid": true,
                    "rank": m.rank(),
                    "generators": m.names(),
                    "finite": g.is_finite(),
                    "components": g.irreducible_components().iter()
                        .map(|c| c.iter().map(|&i| m.names()[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        Command::Group { op: GroupOp::Enum { group, max_len, format } } => {
            let g = load_group(group)?;
            let els = g.enumerate(*max_len, ctx.cap, ctx.exec)?;
            Ok(match format {
                TableFormat::Json => Outcome::json(
                    json!({ "count": els.len(), "elements": els.iter().map(|w| g.format(w)).collect::<Vec<_>>() }),
                    true,
                ),
                TableFormat::Tsv => {
                    let mut s = String::from("length\tword\n");
                    for w in &els {
                        s += &format!("{}\t{}\n", w.len(), g.format(w));
                    }
                    Outcome { text: s, ok: true }
                }
            })
        }
        Command::Roots { op: RootsOp::Gen { datum, group, depth, format } } => {
            let d = match (datum, group) {
                (Some(p), _) => io::read_datum(&read(p)?)?,
                (None, Some(p)) => BasedRootDatum::standard(&io::read_coxeter_matrix(&read(p)?)?),
                (None, None) => unreachable!("clap requires one of --datum/--group"),
            };
            let slice = generate_roots(&d, *depth, ctx.cap)?;
            Ok(match format {
                TableFormat::Tsv => Outcome { text: slice.to_tsv(), ok: true },
                TableFormat::Json => Outcome::json(
                    json!({
                        "complete": slice.complete,
                        "positive": slice.positive_count(),
                        "roots": slice.roots().iter().map(|r| json!({
                            "depth": r.depth, "root": r.root, "coroot": r.coroot, "positive": r.positive,
                        })).collect::<Vec<_>>(),
                    }),
                    true,
                ),
            })
        }
        Command::Cocycle { group, word } => {
            let g = load_group(group)?;
            let w = g.parse(word)?;
            let n = rootforge::abstract_roots::cocycle(&g, &w)?;
            Ok(Outcome::json(
                json!({
                    "word": g.format(&w),
                    "length": w.len(),
                    "N": n.iter().map(|t| g.format(t)).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        Command::Qps { op, win, system } => {
            let g = load_group(&win.group)?;
            let window = window(&ctx, &g, win.max_len)?;
            let q = io::qps_from_value(&window, &io::parse_json(&read(system)?)?)?;
            let certainty = window.certainty();
            match op {
                QpsOp::Simple => {
                    let simple = q.simple_roots();
                    let gen = q.is_generative()?;
                    let roots: Vec<_> = simple.roots.iter().map(|&t| q.root(t)).collect();
                    Ok(Outcome::json(
                        json!({
                            "simple_roots": io::roots_json(&g, &roots),
                            "generative": gen.generative,
                            "certainty": gen.certainty,
                        }),
                        true,
                    ))
                }
                QpsOp::Biclosed => {
                    let real = Realization::standard(&g, window.bound() + 1)?;
                    let table = BetweennessTable::new(&window, &real, ctx.exec)?;
                    let b = table.is_biclosed_system(&q);
                    Ok(Outcome::json(json!({ "biclosed": b, "certainty": certainty }), b))
                }
                QpsOp::Conjugator => match q.find_conjugator() {
                    Ok((w, eps)) => Ok(Outcome::json(
                        json!({ "conjugate": true, "w": g.format(&w), "sign": i8::from(eps), "certainty": certainty }),
                        true,
                    )),
                    Err(rootforge::Error::Precondition(msg)) => {
                        Ok(Outcome::json(json!({ "conjugate": false, "reason": msg, "certainty": certainty }), false))
                    }
                    Err(e) => Err(e.into()),
                },
            }
        }
        Command::Basis { op: BasisOp::Check { win, delta } } => {
            let g = load_group(&win.group)?;
            let window = window(&ctx, &g, win.max_len)?;
            let delta = io::roots_from_value(&g, &io::parse_json(&read(delta)?)?)?;
            let table = if g.is_finite() {
                let real = Realization::standard(&g, window.bound() + 1)?;
                Some(BetweennessTable::new(&window, &real, ctx.exec)?)
            } else {
                None
            };
            let rep = is_abstract_root_basis(&window, &delta, table.as_ref())?;
            Ok(Outcome::json(
                json!({
                    "basis": rep.basis,
                    "generates": rep.generates,
                    "pairwise": rep.pairs_ok,
                    "rank_matches": rep.rank_ok,
                    "failures": rep.failures,
                    "biclosed": rep.biclosed,
                    "system": rep.system.as_ref().map(io::qps_json),
                    "certainty": rep.certainty,
                }),
                rep.basis,
            ))
        }
        Command::Twist { op, spec, group } => {
            let base: Option<CoxeterMatrix> = group.as_deref().map(|p| read(p).and_then(|t| Ok(io::read_coxeter_matrix(&t)?))).transpose()?;
            let spec = io::twist_spec_from_value(&io::parse_json(&read(spec)?)?, base)?;
            let g = CoxeterGroup::new(spec.base.clone());
            match op {
                TwistOp::Validate => {
                    let r = validate_twist(&spec)?;
                    Ok(Outcome::json(
                        json!({ "valid": r.valid, "problems": r.problems, "w_K": r.w_k.as_ref().map(|w| g.format(w)) }),
                        r.valid,
                    ))
                }
                TwistOp::Apply => Ok(Outcome::json(io::twist_result_json(&apply_twist(&spec)?), true)),
                TwistOp::Signs => {
                    let tw = apply_twist(&spec)?;
                    let sol = twist_sign_solve(&spec)?;
                    let roots = sol.signs.as_ref().map(|s| {
                        tw.matrix.names().iter().zip(tw.family(s)).map(|(n, r)| {
                            json!({ "name": n, "refl": g.format(&r.reflection), "sign": i8::from(r.sign) })
                        }).collect::<Vec<_>>()
                    });
                    Ok(Outcome::json(json!({ "feasible": sol.feasible, "roots": roots }), sol.feasible))
                }
            }
        }
        Command::Order { op, group, twist_set, lex, dot, format } => {
            let g = load_group(group)?;
            if !g.is_finite() {
                return Err(rootforge::Error::Precondition("orders need a finite group".into()).into());
            }
            let window = Arc::new(Window::full(&g, ctx.cap, ctx.exec)?);
            let (table, a) = if *lex {
                let n = g.rank();
                let mut prec = standard_basis(n);
                prec.reverse();
                let lex = lex_system(window.clone(), prec, standard_basis(n))?;
                let table = CocycleTable::new(&lex.psi, ctx.cap, ctx.exec)?;
                let a: Vec<_> = lex.a.iter().map(|&t| window.reflection(t).clone()).collect();
                (table, a)
            } else {
                let a = match twist_set {
                    Some(p) => io::twist_set_from_value(&g, &window, &io::parse_json(&read(p)?)?)?,
                    None => Vec::new(),
                };
                (CocycleTable::standard(&g, ctx.cap, ctx.exec)?, a)
            };
            let rel = match op {
                OrderOp::Weak => table.weak(),
                OrderOp::Bruhat => table.bruhat(&table.twist_set(&a)?),
            };
            let dot_text = rel.to_dot(&g);
            if let Some(p) = dot {
                fs::write(p, &dot_text).with_context(|| format!("cannot write {}", p.display()))?;
            }
            Ok(match format {
                OrderFormat::Dot => Outcome { text: dot_text, ok: true },
                OrderFormat::Json => Outcome::json(rel.to_json(&g), true),
            })
        }
        Command::Datum { op: DatumOp::Lint { datum } } => {
            let d = io::read_datum(&read(datum)?)?;
            let report = d.validate();
            let mut problems = report.problems.clone();
            let matrix = match d.coxeter_matrix() {
                Ok(m) => Some(io::coxeter_matrix_json(&m)),
                Err(e) => {
                    problems.push(e.to_string());
                    None
                }
            };
            problems.dedup();
            let props = d.properties();
            let valid = report.valid && matrix.is_some();
            Ok(Outcome::json(
                json!({
                    "valid": valid,
                    "problems": problems,
                    "coxeter_matrix": matrix,
                    "reduced": props.reduced,
                    "symmetrizable": props.symmetrizable,
                }),
                valid,
            ))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<rootforge::Error>() {
        Some(e) if e.is_resource() => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => fs::write(p, &out.text).with_context(|| format!("cannot write {}", p.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_INPUT);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
