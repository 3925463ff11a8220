//! Command-line front end. Every subcommand reads an edge list from a file or
//! stdin and writes text or JSON.
//!
//! Exit codes: 0 success, 1 unsupported graph or over the oracle limit,
//! 2 malformed input, 3 crosscheck mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{bound_report, BoundReport, KnownValues};
use crate::classgen::{generate, Family, GenSpec, Generated};
use crate::decomposition::{decompose, DecompTree, NodeKind};
use crate::error::Error;
use crate::graph::{parse_edge_list, Graph, Vertex};
use crate::oracle::{Oracle, DEFAULT_LIMIT, MAX_LIMIT};
use crate::reductions::blowup_gf;
use crate::sequence::{footprint, Certificate};
use crate::solvers::{solve, Method, SolveResult};

pub const EXIT_UNSUPPORTED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gddn", version, about = "Grundy double domination and maximum double neighborhood sequences")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Edge list file; stdin when omitted or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest graph the exact oracle accepts.
    #[arg(long, default_value_t = DEFAULT_LIMIT as u64, value_parser = clap::value_parser!(u64).range(1..=MAX_LIMIT as u64))]
    pub limit: u64,
}

impl Common {
    fn oracle(&self) -> Oracle {
        Oracle::with_limit(self.limit as usize)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Longest double neighborhood sequence with a certificate.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Footprint of a given sequence.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated vertex ids.
        #[arg(long)]
        sequence: String,
    },
    /// Union/join decomposition into recognized modular pieces.
    Recognize {
        #[command(flatten)]
        common: Common,
    },
    /// Oracle-backed bound report.
    Bounds {
        #[command(flatten)]
        common: Common,
    },
    /// Seeded graph from a family, as an edge list.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the construction as JSON.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// True-twin blow-up `G_f` as an edge list.
    Blowup {
        #[command(flatten)]
        common: Common,
        /// Multiplicities as `v:k,…`; unlisted vertices get 0.
        #[arg(long)]
        f: String,
    },
    /// Structural solver against the oracle on generated instances.
    Crosscheck {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest instance size; sizes cycle up to it.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_LIMIT as u64, value_parser = clap::value_parser!(u64).range(1..=MAX_LIMIT as u64))]
        limit: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::VertexOutOfRange { .. }
            | Error::DuplicateVertex(_)
            | Error::InvalidArgument(_) => EXIT_MALFORMED,
            _ => EXIT_UNSUPPORTED,
        };
        Failure { code, message: e.to_string() }
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_MALFORMED, message: message.into() }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut text = String::new();
    let outcome = execute(config.command, stdin, &mut text);
    let _ = out.write_all(text.as_bytes());
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut String) -> Outcome {
    match command {
        Command::Solve { common, method } => {
            let g = read_graph(&common, stdin)?;
            let result = solve(&g, method, &common.oracle())?;
            emit_solve(&g, &result, common.format, out)?;
        }
        Command::Verify { common, sequence } => {
            let g = read_graph(&common, stdin)?;
            let cert = footprint(&g, &parse_sequence(&sequence)?)?;
            emit_certificate(&cert, common.format, out);
        }
        Command::Recognize { common } => {
            let g = read_graph(&common, stdin)?;
            match decompose(&g) {
                Ok(tree) => emit_tree(&tree, common.format, out),
                Err(ns) => {
                    match common.format {
                        Format::Json => push_json(out, &json!({ "not_supported": ns })),
                        Format::Text => {
                            let _ = writeln!(out, "not supported: piece {}", join_ids(&ns.vertices));
                        }
                    }
                    return Ok(EXIT_UNSUPPORTED);
                }
            }
        }
        Command::Bounds { common } => {
            let g = read_graph(&common, stdin)?;
            let report = bound_report(&g, KnownValues::default(), &common.oracle())?;
            emit_bounds(&report, common.format, out);
        }
        Command::Gen { family, size, seed, sidecar, format } => {
            let generated = generate(GenSpec { family, size, seed })?;
            if let Some(path) = sidecar {
                let body = serde_json::to_string_pretty(&generated.structure).expect("serializable");
                std::fs::write(&path, body + "\n")
                    .map_err(|e| malformed(format!("cannot write {}: {e}", path.display())))?;
            }
            emit_generated(&generated, format, out);
        }
        Command::Blowup { common, f } => {
            let g = read_graph(&common, stdin)?;
            let mult = parse_multiplicities(&f, g.n())?;
            let (h, classes) = blowup_gf(&g, &mult)?;
            match common.format {
                Format::Text => out.push_str(&h.to_edge_list()),
                Format::Json => push_json(
                    out,
                    &json!({ "n": h.n(), "edges": h.edges().collect::<Vec<_>>(), "classes": classes }),
                ),
            }
        }
        Command::Crosscheck { family, count, size, seed, limit, format } => {
            return crosscheck(family, count, size, seed, limit as usize, format, out);
        }
    }
    Ok(0)
}

fn read_graph(common: &Common, stdin: &mut dyn Read) -> std::result::Result<Graph, Failure> {
    let mut text = String::new();
    match &common.input {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path)
                .map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| malformed(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(parse_edge_list(&text)?)
}

fn parse_sequence(text: &str) -> std::result::Result<Vec<Vertex>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| malformed(format!("bad vertex id `{t}` in sequence"))))
        .collect()
}

fn parse_multiplicities(text: &str, n: usize) -> std::result::Result<Vec<usize>, Failure> {
    let mut f = vec![0; n];
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (v, k) = item
            .split_once(':')
            .ok_or_else(|| malformed(format!("expected `v:k`, got `{item}`")))?;
        let v: Vertex = v.trim().parse().map_err(|_| malformed(format!("bad vertex `{v}`")))?;
        let k: usize = k.trim().parse().map_err(|_| malformed(format!("bad multiplicity `{k}`")))?;
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n }.into());
        }
        f[v] = k;
    }
    Ok(f)
}

fn push_json<T: Serialize + ?Sized>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("serializable"));
    out.push('\n');
}

fn join_ids(ids: &[Vertex]) -> String {
    ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn emit_solve(g: &Graph, r: &SolveResult, format: Format, out: &mut String) -> Outcome {
    let report = r.report(g)?;
    match format {
        Format::Json => push_json(out, &report),
        Format::Text => {
            let _ = writeln!(out, "value: {}", report.value);
            let _ = writeln!(out, "method: {}", report.method);
            emit_certificate(&report.certificate, format, out);
        }
    }
    Ok(0)
}

fn emit_certificate(cert: &Certificate, format: Format, out: &mut String) {
    match format {
        Format::Json => push_json(out, cert),
        Format::Text => {
            let _ = writeln!(out, "sequence: {}", join_ids(&cert.sequence));
            let _ = writeln!(out, "is_dns: {}", cert.is_dns);
            let _ = writeln!(out, "is_dds: {}", cert.is_dds);
            for s in &cert.steps {
                let _ = writeln!(out, "step {}: new [{}] once [{}]", s.vertex, join_ids(&s.new_set), join_ids(&s.once_set));
            }
        }
    }
}

fn emit_tree(tree: &DecompTree, format: Format, out: &mut String) {
    match format {
        Format::Json => push_json(out, tree),
        Format::Text => write_node(tree, tree.root, 0, out),
    }
}

fn write_node(tree: &DecompTree, i: usize, depth: usize, out: &mut String) {
    let node = tree.node(i);
    let label = match &node.kind {
        NodeKind::Leaf => "leaf".to_string(),
        NodeKind::Union => "union".to_string(),
        NodeKind::Join => "join".to_string(),
        NodeKind::Special { shape, labeling } => format!("{shape:?} roles [{}]", join_ids(labeling)),
        NodeKind::Spider { partition: p } => format!(
            "{} spider r={} quasi={} S [{}] C [{}] H [{}]{}",
            serde_json::to_value(p.kind).unwrap().as_str().unwrap(),
            p.r,
            serde_json::to_value(p.quasi).unwrap().as_str().unwrap(),
            join_ids(&p.stable),
            join_ids(&p.clique),
            join_ids(&p.head),
            p.twin_vertex.map(|t| format!(" twin {t}")).unwrap_or_default(),
        ),
    };
    let _ = writeln!(out, "{:indent$}{label} {{{}}}", "", join_ids(&node.vertices), indent = 2 * depth);
    for &c in &node.children {
        write_node(tree, c, depth + 1, out);
    }
}

fn emit_bounds(r: &BoundReport, format: Format, out: &mut String) {
    match format {
        Format::Json => push_json(out, r),
        Format::Text => {
            let value = serde_json::to_value(r).unwrap();
            for key in ["spherical_lower", "gamma_x2", "gddn", "upper", "grundy", "grundy_lower", "grundy_upper"] {
                let _ = writeln!(out, "{key}: {}", value[key]);
            }
        }
    }
}

fn emit_generated(generated: &Generated, format: Format, out: &mut String) {
    match format {
        Format::Text => out.push_str(&generated.graph.to_edge_list()),
        Format::Json => push_json(
            out,
            &json!({
                "n": generated.graph.n(),
                "edges": generated.graph.edges().collect::<Vec<_>>(),
                "structure": generated.structure,
            }),
        ),
    }
}

#[derive(Debug, Serialize)]
struct CrosscheckRow {
    index: usize,
    seed: u64,
    n: usize,
    structural: Option<usize>,
    oracle: usize,
    witness_ok: bool,
    ok: bool,
}

fn crosscheck_one(family: Family, size: usize, seed: u64, oracle: &Oracle) -> std::result::Result<CrosscheckRow, Failure> {
    let g = generate(GenSpec { family, size, seed })?.graph;
    let exact = oracle.mdns(&g)?.value;
    let (structural, witness_ok) = match solve(&g, family.solver(), oracle) {
        Ok(r) => {
            let cert = footprint(&g, &r.sequence)?;
            let ok = cert.is_dns && r.sequence.len() == r.value && (g.has_isolated() || cert.is_dds);
            (Some(r.value), ok)
        }
        Err(_) => (None, false),
    };
    Ok(CrosscheckRow {
        index: 0,
        seed,
        n: g.n(),
        structural,
        oracle: exact,
        witness_ok,
        ok: witness_ok && structural == Some(exact),
    })
}

fn crosscheck(
    family: Family,
    count: usize,
    size: usize,
    seed: u64,
    limit: usize,
    format: Format,
    out: &mut String,
) -> Outcome {
    let min = family.min_size();
    if size < min {
        return Err(malformed(format!("family {family} needs size at least {min}")));
    }
    let oracle = Oracle::with_limit(limit);
    let rows: Vec<_> = (0..count)
        .into_par_iter()
        .map(|i| {
            let n = min + i % (size - min + 1);
            crosscheck_one(family, n, seed.wrapping_add(i as u64), &oracle)
                .map(|row| CrosscheckRow { index: i, ..row })
        })
        .collect();
    let rows = rows.into_iter().collect::<std::result::Result<Vec<_>, _>>()?;
    let mismatches = rows.iter().filter(|r| !r.ok).count();
    match format {
        Format::Json => push_json(out, &json!({ "family": family, "rows": rows, "mismatches": mismatches })),
        Format::Text => {
            for r in &rows {
                let structural = r.structural.map_or("-".to_string(), |v| v.to_string());
                let status = if r.ok { "ok" } else { "MISMATCH" };
                let _ = writeln!(out, "{} seed={} n={} structural={structural} oracle={} {status}", r.index, r.seed, r.n, r.oracle);
            }
            let _ = writeln!(out, "{} instances, {mismatches} mismatches", rows.len());
        }
    }
    Ok(if mismatches == 0 { 0 } else { EXIT_MISMATCH })
}
