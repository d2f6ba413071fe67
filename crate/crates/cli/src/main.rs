use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use affa::classify::GraphClass;
use affa::equiv::Which;
use affa::{fusion, labeling, relations, Family, Label, Morphism, Theory};
use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

mod selftest;

/// Exact evaluation and checks for the index-4 affine A planar algebras.
#[derive(Parser)]
#[command(name = "affa", version)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a closed morphism.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        /// Treat the input as JSON lines, one morphism per line.
        #[arg(long)]
        batch: bool,
    },
    /// Region labels and the labeling invariant of a closed diagram.
    Label {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check every defining relation of a theory.
    Relcheck(TheoryArgs),
    /// Dimension of Hom(bottom, top).
    Homdim {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Comma-separated labels, e.g. `Up,Down`.
        #[arg(long, default_value = "")]
        bottom: String,
        #[arg(long, default_value = "")]
        top: String,
    },
    /// Principal graph.
    Graph {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Truncation radius, needed for the infinite families.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bratteli diagram of the tensor powers of the generator.
    Bratteli {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Gram matrix of a spanning set of `∅ → word`.
    Gram {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, default_value = "")]
        word: String,
        /// Defaults to as many boxes as the boundary can feed.
        #[arg(long)]
        max_boxes: Option<usize>,
        /// Use the version with the outer region shaded.
        #[arg(long)]
        shaded: bool,
    },
    /// Check one of the equivalence functors.
    FunctorCheck {
        /// `vec` or `rep`.
        #[arg(long)]
        which: String,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        zeta_exp: i64,
    },
    /// Count isomorphism classes of presentations with one principal graph.
    Classify {
        /// A graph class such as `unshaded-a-odd`, or a family name.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Relation suite and oracle comparison over every small theory.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Random diagrams per theory.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_boxes: usize,
    },
}

#[derive(Args)]
struct TheoryArgs {
    /// Theory as a JSON file or inline JSON object.
    #[arg(long)]
    theory: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    root_exp: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A check ran and found a mismatch; the report is still written.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "check failed: {}", self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<CheckFailed>().is_some() {
        2
    } else if e
        .downcast_ref::<affa::Error>()
        .is_some_and(|x| x.is_internal())
    {
        3
    } else {
        1
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let out = cli.out.as_deref();
    match &cli.cmd {
        Cmd::Eval {
            input,
            batch: false,
        } => {
            let m = read_morphism(input)?;
            let v = affa::evaluate::eval_closed(&m)?;
            emit(out, &json!({ "value": v.to_string() }))
        }
        Cmd::Eval { input, batch: true } => eval_batch(input, out),
        Cmd::Label { input } => emit(out, &label(&read_morphism(input)?)?),
        Cmd::Relcheck(t) => {
            let th = t.resolve()?;
            let rels = if th.family.is_source() {
                affa::equiv::source_relations(&th)?
            } else {
                relations::defining_relations(&th)?
            };
            let mut failed = 0;
            let mut rows = Vec::new();
            for r in &rels {
                let holds = r.holds()?;
                failed += usize::from(!holds);
                rows.push(json!({ "group": r.group, "name": r.name, "holds": holds }));
            }
            emit(
                out,
                &json!({ "theory": th.to_string(), "relations": rows, "failed": failed }),
            )?;
            check(failed == 0, || format!("{failed} relations fail in {th}"))
        }
        Cmd::Homdim {
            theory,
            bottom,
            top,
        } => {
            let th = theory.resolve()?;
            let (b, t) = (parse_word(bottom)?, parse_word(top)?);
            let dim = if th.family.is_source() {
                affa::equiv::source_hom_dim(&th, &b, &t)
            } else {
                fusion::hom_dim(&th, &b, &t)?
            };
            emit(
                out,
                &json!({ "theory": th.to_string(), "bottom": bottom, "top": top, "dim": dim }),
            )
        }
        Cmd::Graph {
            theory,
            radius,
            format,
        } => {
            let g = fusion::principal_graph(&theory.resolve()?, *radius)?;
            match format {
                Format::Json => emit(out, &g.to_json()),
                Format::Dot => write_text(out, &g.to_dot()),
            }
        }
        Cmd::Bratteli {
            theory,
            rows,
            format,
        } => {
            let b = fusion::bratteli(&theory.resolve()?, *rows)?;
            match format {
                Format::Json => emit(out, &b.to_json()),
                Format::Dot => write_text(out, &b.to_dot()),
            }
        }
        Cmd::Gram {
            theory,
            word,
            max_boxes,
            shaded,
        } => {
            let th = theory.resolve()?;
            let w = parse_word(word)?;
            let boxes = max_boxes.unwrap_or_else(|| fusion::box_bound(&th, w.len()));
            let g = fusion::gram_matrix_shaded(&th, &w, boxes, *shaded)?;
            let predicted = fusion::hom_dim(&th, &[], &w)?;
            let mut report = g.to_json();
            report["predicted"] = json!(predicted);
            emit(out, &report)?;
            check(g.rank == predicted && g.hermitian && g.psd, || {
                format!(
                    "rank {} vs predicted {predicted}, hermitian {}, psd {}",
                    g.rank, g.hermitian, g.psd
                )
            })
        }
        Cmd::FunctorCheck { which, m, zeta_exp } => {
            let rep = affa::equiv::check_functor(Which::parse(which)?, *m, *zeta_exp)?;
            emit(out, &rep.to_json())?;
            check(rep.passed(), || {
                format!("functor {which} fails for m = {m}")
            })
        }
        Cmd::Classify { family, n } => {
            let class = GraphClass::parse(family)?;
            let c = affa::classify::classify(class, *n)?;
            let expected = expected_count(class, *n);
            let roots_ok = c.theories.iter().zip(&c.eigenvalues).all(|(t, e)| match e {
                Some(e) => *e == t.root_value(),
                None => class.is_infinite(),
            });
            let mut report = c.to_json();
            report["expected"] = json!(expected);
            emit(out, &report)?;
            check(c.count == expected && roots_ok, || {
                format!("{} classes, expected {expected}", c.count)
            })
        }
        Cmd::Selftest {
            seed,
            n,
            count,
            max_boxes,
        } => {
            let report = selftest::run(*n, *count, *max_boxes, *seed)?;
            emit(out, &report.to_json())?;
            if report.measure_violations > 0 {
                return Err(affa::Error::Internal(
                    "the evaluator's measure failed to decrease".into(),
                )
                .into());
            }
            check(report.passed(), || "selftest found mismatches".into())
        }
    }
}

fn expected_count(class: GraphClass, n: u32) -> usize {
    let n = n as usize;
    match class {
        GraphClass::ShadedAOdd => n,
        GraphClass::UnshadedAOdd => 3 * n,
        GraphClass::UnshadedAEven => 2 * n + 1,
        GraphClass::ShadedAInf => 1,
        GraphClass::UnshadedAInf => 2,
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> anyhow::Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CheckFailed(msg()).into())
    }
}

impl TheoryArgs {
    fn resolve(&self) -> anyhow::Result<Theory> {
        if let Some(t) = &self.theory {
            let text = if t.trim_start().starts_with('{') {
                t.clone()
            } else {
                fs::read_to_string(t).with_context(|| format!("reading {t}"))?
            };
            let v: Value =
                serde_json::from_str(&text).map_err(|e| affa::Error::Parse(e.to_string()))?;
            return Ok(Theory::from_json(&v)?);
        }
        let family = Family::parse(
            self.family
                .as_deref()
                .ok_or_else(|| anyhow!("need --theory or --family"))?,
        )?;
        if family.is_infinite() {
            return Ok(Theory::infinite(family));
        }
        let n = self.n.ok_or_else(|| anyhow!("need --n for {family}"))?;
        Ok(Theory::with_root_exp(
            family,
            n,
            self.root_exp.unwrap_or(0),
        )?)
    }
}

fn parse_word(s: &str) -> anyhow::Result<Vec<Label>> {
    Ok(s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(Label::parse)
        .collect::<affa::Result<_>>()?)
}

fn read_morphism(path: &Path) -> anyhow::Result<Morphism> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Morphism::parse(&text)?)
}

fn label(m: &Morphism) -> anyhow::Result<Value> {
    if !m.is_closed() {
        bail!(affa::Error::Boundary("label needs a closed diagram".into()));
    }
    let mut terms = Vec::new();
    for (d, c) in &m.terms {
        let (lab, ell, value) = labeling::report(d)?;
        let regions: Vec<Value> = lab
            .faces
            .iter()
            .zip(&lab.labels)
            .enumerate()
            .map(|(i, (corners, g))| json!({ "face": i, "corners": corners.len(), "label": g.word() }))
            .collect();
        terms.push(json!({
            "coefficient": c.to_string(),
            "regions": regions,
            "star_face": lab.star_face,
            "box_faces": lab.box_face,
            "ell": ell,
            "value": value.mul_ref(c).to_string(),
        }));
    }
    Ok(json!({ "terms": terms, "value": labeling::invariant(m)?.to_string() }))
}

/// Worker pool capped by `AFFA_THREADS`.
pub(crate) fn pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(t) = std::env::var("AFFA_THREADS") {
        let t: usize = t
            .parse()
            .map_err(|_| anyhow!("AFFA_THREADS must be a positive integer"))?;
        b = b.num_threads(t.max(1));
    }
    Ok(b.build()?)
}

const CHUNK: usize = 256;

/// JSON lines in, JSON lines out, in input order; evaluated a chunk at a time.
fn eval_batch(input: &Path, out: Option<&Path>) -> anyhow::Result<()> {
    let file = fs::File::open(input).with_context(|| format!("reading {}", input.display()))?;
    let mut sink = sink(out)?;
    let pool = pool()?;
    let mut lines = BufReader::new(file)
        .lines()
        .enumerate()
        .filter(|(_, l)| !matches!(l, Ok(l) if l.trim().is_empty()));
    let mut failed = 0usize;
    loop {
        let chunk: Vec<(usize, io::Result<String>)> = lines.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Value> = pool.install(|| {
            chunk
                .into_par_iter()
                .map(|(i, line)| {
                    let r = line
                        .map_err(|e| affa::Error::Parse(e.to_string()))
                        .and_then(|l| Morphism::parse(&l))
                        .and_then(|m| affa::evaluate::eval_closed(&m));
                    match r {
                        Ok(v) => json!({ "line": i + 1, "value": v.to_string() }),
                        Err(e) => json!({ "line": i + 1, "error": e.to_string() }),
                    }
                })
                .collect()
        });
        for r in results {
            failed += usize::from(r.get("error").is_some());
            writeln!(sink, "{r}")?;
        }
    }
    sink.flush()?;
    if failed > 0 {
        bail!(affa::Error::Parse(format!(
            "{failed} lines could not be evaluated"
        )));
    }
    Ok(())
}

fn sink(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("writing {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn emit(out: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    write_text(out, &format!("{}\n", serde_json::to_string_pretty(v)?))
}

fn write_text(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    let mut s = sink(out)?;
    s.write_all(text.as_bytes())?;
    s.flush()?;
    Ok(())
}
