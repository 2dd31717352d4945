//! `tropjac`: batch front end for tropical Jacobians and torsor invariants.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a mathematical precondition
//! failed, 3 an internal consistency check failed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::Value;

use tropjac::json::{self, Limits};
use tropjac::plfun::{harmonic_space, make_pl};
use tropjac::torsors::{
    alpha_p_torsor_group, classify, extendability, weil_pairing_split, BaseDescriptor, Bt1Descriptor,
    GroupDescriptor, LocalLocal,
};
use tropjac::tropjac::{bounded_sublattice, critical_group, specialize, trojac, trojac_torsion};
use tropjac::{Error, MetricGraph, MonoidHom};

#[derive(Parser)]
#[command(name = "tropjac", version, about = "Tropical Jacobians of monoid-metrized graphs")]
struct Cli {
    /// Write machine-readable output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph JSON file.
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical Jacobian in invariant-factor normal form.
    Trojac {
        #[command(flatten)]
        g: GraphArg,
        /// Cross-check against the critical group of the unit subdivision (monoid N only).
        #[arg(long)]
        verify: bool,
    },
    /// n-torsion of the tropical Jacobian.
    Torsion {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        n: BigInt,
    },
    /// First Betti number.
    Betti {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Gram matrix of the cycle basis, or the pairing of two cycles.
    Pairing {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, requires = "y")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        y: Option<PathBuf>,
    },
    /// Basis of the bounded-monodromy lattice.
    Bounded {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Subdivide one edge, or every edge into unit pieces.
    Subdivide {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, required_unless_present = "unit", requires = "parts")]
        edge: Option<String>,
        /// JSON list of part lengths, e.g. '[1,2]' or '[[1,0],[0,1]]'.
        #[arg(long)]
        parts: Option<String>,
        #[arg(long, conflicts_with_all = ["edge", "parts"])]
        unit: bool,
    },
    /// Contract along a monoid homomorphism.
    Contract {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Push a cocycle forward along a monoid homomorphism.
    Specialize {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Critical group of a graph with unit edges over N.
    CriticalGroup {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Basis of the harmonic PL functions.
    Harmonic {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Slopes and multidegree of a PL function.
    Multidegree {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        values: PathBuf,
    },
    /// Discrete torsor invariant Hom(G^D, TroJac).
    Classify { descriptor: PathBuf, graph: PathBuf },
    /// Whether torsors extend over the base.
    Extend {
        descriptor: PathBuf,
        #[arg(long)]
        residue_char: u64,
        #[arg(long, default_value_t = 1)]
        log_rank: u64,
    },
    /// Split-model Weil pairing on (Z/n)^2.
    Weil {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        a: (i64, i64),
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        b: (i64, i64),
    },
    /// Group governing torsors under alpha_p-type BT1 parts.
    AlphaP {
        #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
        h1: Option<u64>,
        /// Take h1 from the Betti number of this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        p_rank: u64,
        #[arg(long)]
        hom_dim: u64,
        #[arg(long)]
        alpha_power: Option<u64>,
    },
    /// Cartier dual of a descriptor.
    Dual { descriptor: PathBuf },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected two integers a,b, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(x)?, p(y)?))
}

/// A failure together with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Input(String),
    Precondition(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Internal(m) => m,
        }
    }
}

/// Errors while reading inputs are validation failures.
fn input(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

/// Errors from an operation on valid inputs.
fn op(e: impl Into<Error>) -> Failure {
    let e = e.into();
    if e.is_internal() {
        Failure::Internal(format!("internal error: {e}"))
    } else {
        Failure::Precondition(e.to_string())
    }
}

struct Report {
    text: String,
    json: Value,
}

struct Loader {
    limits: Limits,
}

impl Loader {
    fn from_env() -> Result<Self, Failure> {
        let max_rank = match std::env::var("TROPJAC_MAX_RANK") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("TROPJAC_MAX_RANK must be a non-negative integer, got {s:?}")))?,
            Err(_) => json::DEFAULT_MAX_RANK,
        };
        Ok(Loader {
            limits: Limits { max_rank },
        })
    }

    fn value(&self, path: &Path) -> Result<Value, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        json::parse(&text).map_err(|e| input(path)(e.into()))
    }

    fn graph(&self, path: &Path) -> Result<MetricGraph, Failure> {
        json::graph_from_json(&self.value(path)?, &self.limits).map_err(input(path))
    }

    fn hom(&self, path: &Path, g: &MetricGraph) -> Result<MonoidHom, Failure> {
        let h = json::hom_from_json(&self.value(path)?, Some(g.monoid()), &self.limits).map_err(input(path))?;
        let fail = |m: &str| Failure::Input(format!("{}: {m}", path.display()));
        if h.source() != g.monoid() {
            return Err(fail("hom source is not the graph's monoid"));
        }
        if !h.validate() {
            return Err(fail("hom does not map the source monoid into the target monoid"));
        }
        Ok(h)
    }

    fn descriptor(&self, path: &Path) -> Result<GroupDescriptor, Failure> {
        json::descriptor_from_json(&self.value(path)?).map_err(input(path))
    }
}

fn lines<T: std::fmt::Display>(rows: impl IntoIterator<Item = T>) -> String {
    rows.into_iter().fold(String::new(), |mut s, r| {
        let _ = writeln!(s, "{r}");
        s
    })
}

fn run(cmd: &Command, load: &Loader) -> Result<Report, Failure> {
    use json::object_of as obj;
    Ok(match cmd {
        Command::Trojac { g, verify } => {
            let graph = load.graph(&g.graph)?;
            let t = trojac(&graph).map_err(op)?;
            let mut text = format!("{}\n", t.group);
            let mut out = json::trojac_to_json(&t);
            if *verify {
                if !graph.is_over_n() {
                    return Err(Failure::Precondition("--verify needs a graph over the monoid N".into()));
                }
                let unit = graph.unit_subdivision().map_err(op)?;
                let oracle = critical_group(&unit).map_err(op)?;
                let torsion = t.group.torsion_subgroup();
                if torsion != oracle {
                    return Err(Failure::Internal(format!(
                        "internal error: verification failed: torsion {torsion} but critical group {oracle}"
                    )));
                }
                text.push_str(&format!("verified: critical group of the unit subdivision is {oracle}\n"));
                out.as_object_mut()
                    .expect("object")
                    .insert("verifiedCriticalGroup".into(), json::group_to_json(&oracle));
            }
            Report { text, json: out }
        }
        Command::Torsion { g, n } => {
            if *n < BigInt::from(1) {
                return Err(Failure::Input(format!("--n must be at least 1, got {n}")));
            }
            let graph = load.graph(&g.graph)?;
            let t = trojac_torsion(&graph, n).map_err(op)?;
            Report {
                text: format!("{t}\n"),
                json: obj([("group", json::group_to_json(&t)), ("normalForm", t.to_string().into())]),
            }
        }
        Command::Betti { g } => {
            let b = load.graph(&g.graph)?.betti1();
            Report {
                text: format!("{b}\n"),
                json: obj([("betti1", (b as u64).into())]),
            }
        }
        Command::Pairing { g, x, y } => {
            let graph = load.graph(&g.graph)?;
            match (x, y) {
                (Some(xp), Some(yp)) => {
                    let cx = json::cycle_from_json(&graph, &load.value(xp)?).map_err(input(xp))?;
                    let cy = json::cycle_from_json(&graph, &load.value(yp)?).map_err(input(yp))?;
                    let v = graph.intersection_pairing(&cx, &cy).map_err(op)?;
                    Report {
                        text: format!("{v}\n"),
                        json: obj([("pairing", json::lattice_to_json(&v))]),
                    }
                }
                _ => {
                    let h = graph.cycle_basis();
                    let text = lines(h.gram().iter().map(|row| {
                        row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                    }));
                    let gram = h
                        .gram()
                        .iter()
                        .map(|row| Value::Array(row.iter().map(json::lattice_to_json).collect()))
                        .collect();
                    let basis = h.basis().iter().map(|c| json::cycle_to_json(&graph, c)).collect();
                    Report {
                        text: if text.is_empty() { "(empty)\n".into() } else { text },
                        json: obj([("basis", Value::Array(basis)), ("gram", Value::Array(gram))]),
                    }
                }
            }
        }
        Command::Bounded { g } => {
            let graph = load.graph(&g.graph)?;
            let h = graph.cycle_basis();
            let b = bounded_sublattice(&graph, &h);
            let cols = b.columns();
            let mut text = format!("rank {}\n", cols.len());
            text.push_str(&lines(cols.iter().map(|c| {
                c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            })));
            Report {
                text,
                json: obj([
                    ("rank", (cols.len() as u64).into()),
                    ("boundedBasis", json::matrix_to_json(&b)),
                ]),
            }
        }
        Command::Subdivide { g, edge, parts, unit } => {
            let graph = load.graph(&g.graph)?;
            let result = if *unit {
                graph.unit_subdivision().map_err(op)?
            } else {
                let (edge, parts) = (edge.as_deref().unwrap_or_default(), parts.as_deref().unwrap_or_default());
                let bad = |e: Error| Failure::Input(format!("--parts: {e}"));
                let v = json::parse(parts).map_err(|e| bad(e.into()))?;
                let k = graph.monoid().rank();
                let list = v
                    .as_array()
                    .ok_or_else(|| Failure::Input("--parts: expected a JSON list".into()))?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| json::lattice_vector(x, k, &format!("parts[{i}]")))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| bad(e.into()))?;
                graph.subdivide(edge, &list).map_err(op)?.0
            };
            Report {
                text: format!(
                    "{} vertices, {} edges, betti1 {}\n",
                    result.vertices().len(),
                    result.edges().len(),
                    result.betti1()
                ),
                json: json::graph_to_json(&result),
            }
        }
        Command::Contract { g, hom } => {
            let graph = load.graph(&g.graph)?;
            let h = load.hom(hom, &graph)?;
            let (c, _) = graph.contract(&h).map_err(op)?;
            Report {
                text: format!("{} vertices, {} edges, betti1 {}\n", c.vertices().len(), c.edges().len(), c.betti1()),
                json: json::graph_to_json(&c),
            }
        }
        Command::Specialize { g, hom, cocycle } => {
            let graph = load.graph(&g.graph)?;
            let h = load.hom(hom, &graph)?;
            let f = json::cocycle_from_json(&graph, &load.value(cocycle)?).map_err(input(cocycle))?;
            let s = specialize(&f, &h).map_err(op)?;
            Report {
                text: if s.values().is_empty() { "(empty)\n".into() } else { lines(s.values()) },
                json: json::cocycle_to_json(&s),
            }
        }
        Command::CriticalGroup { g } => {
            let graph = load.graph(&g.graph)?;
            let c = critical_group(&graph).map_err(op)?;
            Report {
                text: format!("{c}\n"),
                json: obj([("group", json::group_to_json(&c)), ("normalForm", c.to_string().into())]),
            }
        }
        Command::Harmonic { g } => {
            let graph = load.graph(&g.graph)?;
            let h = harmonic_space(&graph);
            let constant = h.iter().all(|f| f.is_constant());
            Report {
                text: format!("dimension {}, all constant: {constant}\n", h.len()),
                json: obj([
                    ("dimension", (h.len() as u64).into()),
                    ("basis", Value::Array(h.iter().map(json::pl_to_json).collect())),
                ]),
            }
        }
        Command::Multidegree { g, values } => {
            let graph = load.graph(&g.graph)?;
            let vals = json::vertex_values_from_json(&graph, &load.value(values)?).map_err(input(values))?;
            let f = make_pl(&graph, vals).map_err(|e| input(values)(e.into()))?;
            let deg = f.multidegree();
            let text = lines(graph.vertices().iter().zip(&deg).map(|(v, d)| format!("{v} {d}")));
            Report {
                text,
                json: obj([
                    ("multidegree", json::multidegree_to_json(&graph, &deg)),
                    ("function", json::pl_to_json(&f)),
                ]),
            }
        }
        Command::Classify { descriptor, graph } => {
            let d = load.descriptor(descriptor)?;
            let g = load.graph(graph)?;
            let c = classify(&d, &g).map_err(op)?;
            Report {
                text: format!(
                    "G = {}\nG^D = {}\nHom(G^D, TroJac) = {}\n{}\n",
                    c.group, c.dual, c.discrete, c.pic0_layer
                ),
                json: obj([
                    ("group", json::descriptor_to_json(&c.group)),
                    ("dual", json::descriptor_to_json(&c.dual)),
                    ("discrete", json::group_to_json(&c.discrete)),
                    ("discreteNormalForm", c.discrete.to_string().into()),
                    ("pic0Layer", c.pic0_layer.into()),
                ]),
            }
        }
        Command::Extend {
            descriptor,
            residue_char,
            log_rank,
        } => {
            let d = load.descriptor(descriptor)?;
            let base = BaseDescriptor::new(*residue_char, *log_rank).map_err(|e| Failure::Input(e.to_string()))?;
            let v = extendability(&d, &base);
            Report {
                text: format!("{v}\n"),
                json: json::verdict_to_json(&v),
            }
        }
        Command::Weil { n, a, b } => {
            let w = weil_pairing_split(*n, *a, *b).map_err(|e| Failure::Input(e.to_string()))?;
            Report {
                text: format!("{w}\n"),
                json: obj([("n", (*n).into()), ("value", w.into())]),
            }
        }
        Command::AlphaP {
            h1,
            graph,
            p,
            p_rank,
            hom_dim,
            alpha_power,
        } => {
            let h1 = match (h1, graph) {
                (Some(h), _) => *h,
                (None, Some(path)) => load.graph(path)?.betti1() as u64,
                (None, None) => unreachable!("clap requires --h1 or --graph"),
            };
            let bad = |e: tropjac::torsors::DescriptorError| Failure::Input(e.to_string());
            let ll = LocalLocal::new(*p, *hom_dim, *alpha_power).map_err(bad)?;
            let u = alpha_p_torsor_group(h1, &Bt1Descriptor::new(*p_rank, ll)).map_err(bad)?;
            Report {
                text: format!("{u}\n"),
                json: obj([
                    ("p", u.p.into()),
                    ("alphaP", u.alpha_p.into()),
                    ("gA", u.g_a.into()),
                    ("opaqueHomDim", u.opaque_hom_dim.into()),
                    ("normalForm", u.to_string().into()),
                ]),
            }
        }
        Command::Dual { descriptor } => {
            let d = load.descriptor(descriptor)?.cartier_dual();
            Report {
                text: format!("{d}\n"),
                json: json::descriptor_to_json(&d),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Loader::from_env().and_then(|load| run(&cli.command, &load));
    match result {
        Ok(report) => {
            print!("{}", report.text);
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, json::render(&report.json)) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
