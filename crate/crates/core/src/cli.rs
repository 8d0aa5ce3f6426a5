//! The `iasi` command-line front end.
//!
//! [`run`] takes the full argument vector and returns the exit status with the
//! captured stdout/stderr text, so the binary and the tests share one path.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | usage error, invalid argument or failed precondition |
//! | 2 | the labeling is not an IASI (or a label is missing) |
//! | 3 | construction impossible |
//! | 4 | audit found counterexamples |
//! | 5 | I/O or parse error |

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::constructors::{
    construct_first_kind, construct_isoarithmetic, construct_second_kind, default_difference_pool,
    uniform_sizes, ConstructionParams,
};
use crate::error::Error;
use crate::graphcore::{parse_edge_list, write_edge_list, Edge, ElementCorrespondence, Graph};
use crate::harness::{audit, AuditReport, Claim, SearchBounds};
use crate::labeling::{
    classify, transport_labeling, ClassificationReport, SetLabeling, Transform, Verdict,
};
use crate::setcore::{compatibility_index, maximal_class_size, sumset, IntegerSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_IASI: i32 = 2;
pub const EXIT_IMPOSSIBLE: i32 = 3;
pub const EXIT_COUNTEREXAMPLES: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "iasi", version, about = "Integer additive set-indexer toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify and classify a labeled graph.
    Classify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a labeling for a graph; always prints JSON.
    Construct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Label size (first kind: the smaller class; iso: every vertex).
        #[arg(long, default_value_t = 3)]
        m: u64,
        #[arg(long, default_value_t = 4)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long)]
        k: Option<u64>,
        /// Comma-separated pairwise coprime differences for `--kind second`.
        #[arg(long)]
        diffs: Option<String>,
    },
    /// Apply a graph transform and carry the labeling across.
    Transform {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Edge as `u,v` for subdivide and contract.
        #[arg(long)]
        edge: Option<String>,
        /// Vertex for reduce.
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively audit a claim over bounded AP labels.
    Audit {
        #[arg(long)]
        theorem: Claim,
        /// `first_max,diff_max,len_min,len_max`
        #[arg(long)]
        bounds: Option<SearchBounds>,
        #[arg(long)]
        json: bool,
    },
    /// Sum-set and compatibility data of two sets.
    Sumset {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    First,
    Iso,
    Second,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Line,
    Total,
    Subdivide,
    Contract,
    Reduce,
}

/// JSON shape of `transform --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformOutput {
    pub transform: Transform,
    pub graph: Graph,
    pub labeling: SetLabeling,
    pub correspondence: Option<ElementCorrespondence>,
    pub fresh_vertex: Option<String>,
    pub verdict: Verdict,
    /// Present when the derived labeling is an IASI.
    pub classification: Option<ClassificationReport>,
}

/// JSON shape of `sumset --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsetOutput {
    pub a: IntegerSet,
    pub b: IntegerSet,
    pub sumset: IntegerSet,
    pub compatibility_index: usize,
    pub max_class_size: usize,
    pub saturated: bool,
}

enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Lib(e) => match e {
                Error::InvalidArgument(_)
                | Error::NotFound(_)
                | Error::Precondition(_)
                | Error::Internal(_) => EXIT_USAGE,
                Error::MissingLabel(_) | Error::NotIasi(_) => EXIT_NOT_IASI,
                Error::ConstructionImpossible(_) => EXIT_IMPOSSIBLE,
                Error::Parse { .. } => EXIT_IO,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
        }
    }
}

struct Success {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Success {
    fn ok(stdout: String) -> Self {
        Success {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(s) => CliOutput {
            code: s.code,
            stdout: s.stdout,
            stderr: s.stderr,
        },
        Err(f) => CliOutput {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

fn dispatch(command: Command) -> Result<Success, Failure> {
    match command {
        Command::Classify {
            graph,
            labels,
            json,
        } => {
            let g = read_graph(&graph)?;
            let f = read_labels(&labels)?;
            let report = classify(&g, &f)?;
            Ok(Success::ok(if json {
                to_json(&report)
            } else {
                render_classification(&report)
            }))
        }
        Command::Construct {
            graph,
            kind,
            m,
            n,
            d,
            k,
            diffs,
        } => {
            let g = read_graph(&graph)?;
            let f = match kind {
                Kind::First => construct_first_kind(&g, &ConstructionParams::new(m, n, d, k)?)?,
                Kind::Iso => construct_isoarithmetic(&g, d, &uniform_sizes(&g, m))?,
                Kind::Second => {
                    let pool = match diffs {
                        Some(text) => parse_list(&text)?,
                        None => default_difference_pool(&g),
                    };
                    construct_second_kind(&g, &pool)?
                }
            };
            Ok(Success::ok(to_json(&f)))
        }
        Command::Transform {
            graph,
            labels,
            op,
            edge,
            vertex,
            json,
        } => {
            let g = read_graph(&graph)?;
            let f = read_labels(&labels)?;
            let t = match op {
                Op::Line => Transform::Line,
                Op::Total => Transform::Total,
                Op::Subdivide => Transform::Subdivide(parse_edge(edge.as_deref(), "subdivide")?),
                Op::Contract => Transform::Contract(parse_edge(edge.as_deref(), "contract")?),
                Op::Reduce => {
                    Transform::Reduce(vertex.ok_or_else(|| {
                        Failure::Usage("`--op reduce` requires `--vertex v`".into())
                    })?)
                }
            };
            let derived = transport_labeling(&t, &g, &f)?;
            let classification = if derived.verdict.is_ok() {
                Some(classify(&derived.graph, &derived.labeling)?)
            } else {
                None
            };
            let out = TransformOutput {
                transform: t,
                graph: derived.graph,
                labeling: derived.labeling,
                correspondence: derived.correspondence,
                fresh_vertex: derived.fresh_vertex,
                verdict: derived.verdict,
                classification,
            };
            Ok(Success::ok(if json {
                to_json(&out)
            } else {
                render_transform(&out)
            }))
        }
        Command::Audit {
            theorem,
            bounds,
            json,
        } => {
            let bounds = bounds.unwrap_or_default();
            let report = audit(theorem, &bounds)?;
            let code = if report.is_consistent() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLES
            };
            Ok(Success {
                code,
                stdout: if json {
                    to_json(&report)
                } else {
                    render_audit(&report)
                },
                stderr: format!(
                    "search space: {} descriptors, {} ordered pairs; {} instances checked\n",
                    bounds.descriptor_count(),
                    bounds.pair_count(),
                    report.checked
                ),
            })
        }
        Command::Sumset { a, b, json } => {
            let a: IntegerSet = a.parse()?;
            let b: IntegerSet = b.parse()?;
            let s = sumset(&a, &b)?;
            let max = maximal_class_size(&a, &b);
            let out = SumsetOutput {
                compatibility_index: compatibility_index(&a, &b),
                max_class_size: max,
                saturated: max == a.len().min(b.len()),
                sumset: s,
                a,
                b,
            };
            Ok(Success::ok(if json {
                to_json(&out)
            } else {
                render_sumset(&out)
            }))
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { .. } => Failure::Io(format!("{}: {e}", path.display())),
        other => Failure::Lib(other),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_file(path)?;
    parse_edge_list(&text).map_err(|e| with_path(path, e))
}

fn read_labels(path: &Path) -> Result<SetLabeling, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Io(format!(
            "{}: parse error at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn parse_list(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_edge(text: Option<&str>, op: &str) -> Result<Edge, Failure> {
    let text = text.ok_or_else(|| Failure::Usage(format!("`--op {op}` requires `--edge u,v`")))?;
    match text.split(',').map(str::trim).collect::<Vec<_>>()[..] {
        [u, v] if !u.is_empty() && !v.is_empty() => Ok(Edge::new(u, v)?),
        _ => Err(Failure::Usage(format!(
            "`{text}` is not an edge of the form u,v"
        ))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<w$}", w = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn kv(pairs: Vec<(&str, String)>) -> Vec<Vec<String>> {
    pairs
        .into_iter()
        .map(|(k, v)| vec![k.to_string(), v])
        .collect()
}

fn render_classification(r: &ClassificationReport) -> String {
    let mut out = table(&kv(vec![
        ("vertex_arithmetic", r.vertex_arithmetic.to_string()),
        ("edge_arithmetic", r.edge_arithmetic.to_string()),
        ("arithmetic", r.arithmetic.to_string()),
        ("isoarithmetic", r.isoarithmetic.to_string()),
        ("biarithmetic", r.biarithmetic.to_string()),
        (
            "semi_arithmetic_first_kind",
            r.semi_arithmetic_first_kind.to_string(),
        ),
        (
            "semi_arithmetic_second_kind",
            r.semi_arithmetic_second_kind.to_string(),
        ),
        ("strong", r.strong.to_string()),
        ("edge_uniform_k", opt(r.edge_uniform_k)),
        ("vertex_uniform_l", opt(r.vertex_uniform_l)),
    ]));
    if !r.per_edge.is_empty() {
        out.push('\n');
        let mut rows = vec![vec![
            "edge".to_string(),
            "relation".into(),
            "k".into(),
            "index".into(),
            "strong".into(),
            "ap".into(),
        ]];
        for e in &r.per_edge {
            rows.push(vec![
                e.edge.to_string(),
                opt(e.kind.as_ref().map(|k| k.relation.as_str())),
                opt(e.kind.as_ref().and_then(|k| k.k)),
                e.set_indexing_number.to_string(),
                e.strong.to_string(),
                e.label_is_ap.to_string(),
            ]);
        }
        out.push_str(&table(&rows));
    }
    out
}

fn render_transform(t: &TransformOutput) -> String {
    let mut out = format!("{}\n\n", t.transform);
    let mut rows = vec![vec!["vertex".to_string(), "label".into()]];
    rows.extend(
        t.labeling
            .iter()
            .map(|(v, s)| vec![v.to_string(), s.to_string()]),
    );
    out.push_str(&table(&rows));
    out.push('\n');
    out.push_str("edges\n");
    out.push_str(&write_edge_list(&t.graph));
    out.push('\n');
    match &t.verdict {
        Verdict::Ok => out.push_str("derived labeling is an IASI\n"),
        Verdict::Violation(v) => {
            let _ = writeln!(out, "derived labeling is not an IASI: {v}");
        }
    }
    if let Some(c) = &t.classification {
        out.push('\n');
        out.push_str(&render_classification(c));
    }
    out
}

fn render_audit(r: &AuditReport) -> String {
    let mut out = table(&kv(vec![
        ("theorem", r.theorem.tag().to_string()),
        ("bounds", r.bounds.to_string()),
        ("checked", r.checked.to_string()),
        ("counterexamples", r.counterexamples.len().to_string()),
        ("verdict", r.verdict.as_str().to_string()),
    ]));
    if !r.readings.is_empty() {
        out.push('\n');
        let mut rows = vec![vec!["reading".to_string(), "agreed".into(), "rate".into()]];
        for rd in &r.readings {
            rows.push(vec![
                rd.reading.clone(),
                format!("{}/{}", rd.agreed, rd.checked),
                format!("{:.4}", rd.rate()),
            ]);
        }
        out.push_str(&table(&rows));
    }
    if !r.counterexamples.is_empty() {
        out.push('\n');
        let mut rows = vec![vec![
            "instance".to_string(),
            "expected".into(),
            "observed".into(),
        ]];
        for c in &r.counterexamples {
            let instance = match (&c.instance, &c.p, &c.q) {
                (Some(s), _, _) => s.clone(),
                (None, Some(p), Some(q)) => format!("{p} {q}"),
                _ => "-".into(),
            };
            rows.push(vec![
                instance,
                serde_json::to_string(&c.expected).expect("evidence serializes"),
                serde_json::to_string(&c.observed).expect("evidence serializes"),
            ]);
        }
        out.push_str(&table(&rows));
    }
    out
}

fn render_sumset(s: &SumsetOutput) -> String {
    table(&kv(vec![
        ("a", s.a.to_string()),
        ("b", s.b.to_string()),
        ("sumset", s.sumset.to_string()),
        ("compatibility_index", s.compatibility_index.to_string()),
        ("max_class_size", s.max_class_size.to_string()),
        ("saturated", s.saturated.to_string()),
    ]))
}
