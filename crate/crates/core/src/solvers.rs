//! Constructive MDNS algorithms for trees, threshold graphs, cographs and
//! P4-tidy graphs, the union/join and spider combinators they are built
//! from, and a dispatcher that falls back to the exact oracle.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decomposition::{
    decompose, DecompTree, NodeKind, NotSupported, QuasiKind, SpecialGraph, SpiderKind,
    SpiderPartition,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracle::Oracle;
use crate::reductions::{lift_isolated, lift_universal};
use crate::sequence::{concat, footprint, Certificate, VertexSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Tree,
    Threshold,
    Cograph,
    P4tidy,
    Auto,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Auto,
        Method::Oracle,
        Method::Tree,
        Method::Threshold,
        Method::Cograph,
        Method::P4tidy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Tree => "tree",
            Method::Threshold => "threshold",
            Method::Cograph => "cograph",
            Method::P4tidy => "p4tidy",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub sequence: VertexSeq,
    pub method: Method,
}

/// JSON form of a [`SolveResult`] together with the footprint of its witness.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub value: usize,
    pub method: Method,
    pub certificate: Certificate,
}

impl SolveResult {
    pub fn new(sequence: VertexSeq, method: Method) -> Self {
        SolveResult { value: sequence.len(), sequence, method }
    }

    /// `dgri` of the empty graph.
    pub fn empty(method: Method) -> Self {
        SolveResult::new(VertexSeq::empty(), method)
    }

    pub fn report(&self, g: &Graph) -> Result<SolveReport> {
        Ok(SolveReport {
            value: self.value,
            method: self.method,
            certificate: footprint(g, &self.sequence)?,
        })
    }
}

pub fn mdns_union(a: &SolveResult, b: &SolveResult) -> Result<SolveResult> {
    Ok(SolveResult::new(concat(&a.sequence, &b.sequence)?, a.method))
}

/// Which side's MDNS the join keeps, and whether a vertex of the other side is
/// appended (only when the winning side has an isolated vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JoinCase {
    Left,
    LeftAppend,
    Right,
    RightAppend,
}

/// MDNS of the join of `g[left]` and `g[right]`, with `dgri(G ∨ H) =
/// max{dgri(G) + a(G), dgri(H) + a(H)}`. Ties keep the left side.
pub fn mdns_join(
    g: &Graph,
    left: &[Vertex],
    a: &SolveResult,
    right: &[Vertex],
    b: &SolveResult,
) -> Result<(SolveResult, JoinCase)> {
    for &u in left {
        g.check_vertex(u)?;
        for &v in right {
            g.check_vertex(v)?;
            if !g.has_edge(u, v) {
                return Err(Error::InconsistentJoin { u, v });
            }
        }
    }
    let (Some(&first_left), Some(&first_right)) = (left.first(), right.first()) else {
        return Err(Error::InvalidArgument("join sides must be nonempty".into()));
    };
    let a_left = g.has_isolated_within(left);
    let a_right = g.has_isolated_within(right);
    let left_total = a.value + usize::from(a_left);
    let right_total = b.value + usize::from(a_right);
    let (base, extra, case) = if left_total >= right_total {
        if a_left {
            (a, Some(first_right), JoinCase::LeftAppend)
        } else {
            (a, None, JoinCase::Left)
        }
    } else if a_right {
        (b, Some(first_left), JoinCase::RightAppend)
    } else {
        (b, None, JoinCase::Right)
    };
    let mut sequence = base.sequence.clone();
    if let Some(v) = extra {
        sequence.push(v)?;
    }
    Ok((SolveResult::new(sequence, a.method), case))
}

fn spider_result(head: &SolveResult, tail: Vec<Vertex>) -> Result<SolveResult> {
    Ok(SolveResult::new(concat(&head.sequence, &tail)?, Method::P4tidy))
}

/// `T_H ⊕ (c_1..c_r, s_1..s_r)` for thin spiders and `T_H ⊕ (s_1..s_r, c_1, c_2)`
/// for thick ones, where `T_H` is an MDNS of the head.
pub fn mdns_spider(p: &SpiderPartition, head: &SolveResult) -> Result<SolveResult> {
    p.check_shape()?;
    if p.quasi != QuasiKind::None {
        return Err(Error::InvalidPartition("expected a spider without twin".into()));
    }
    let tail = match p.kind {
        SpiderKind::Thin => [&p.clique[..], &p.stable[..]].concat(),
        SpiderKind::Thick => [&p.stable[..], &p.clique[..2]].concat(),
    };
    spider_result(head, tail)
}

/// Quasi-spider MDNS by case on the kind, the twin's side and type, and
/// whether the head is empty or has an isolated vertex.
pub fn mdns_quasi_spider(p: &SpiderPartition, head: &SolveResult, a_head: bool) -> Result<SolveResult> {
    p.check_shape()?;
    let twin = p
        .twin_vertex
        .ok_or_else(|| Error::InvalidPartition("expected a quasi-spider".into()))?;
    let r = p.r;
    let (s, c) = (&p.stable[..], &p.clique[..]);
    let plain_thin = || [c, s].concat();
    let head_empty = p.head.is_empty();
    let tail = match (p.kind, p.quasi.on_stable_side()) {
        (SpiderKind::Thin, true) if p.quasi == QuasiKind::SFalse => [c, s, &[twin]].concat(),
        (SpiderKind::Thin, true) => {
            if head_empty || a_head {
                [&[s[r - 1], twin, c[r - 1]], &c[..r - 1], &s[..r - 1]].concat()
            } else {
                plain_thin()
            }
        }
        (SpiderKind::Thin, false) => {
            if head_empty {
                [&[s[r - 1], c[r - 1], twin], &c[..r - 1], &s[..r - 1]].concat()
            } else {
                plain_thin()
            }
        }
        (SpiderKind::Thick, true) => [s, &[twin], &c[..2]].concat(),
        (SpiderKind::Thick, false) => [s, &c[..2]].concat(),
    };
    spider_result(head, tail)
}

/// Level order of a BFS from vertex 0; every tree has `dgri = n`.
pub fn solve_tree(g: &Graph) -> Result<SolveResult> {
    if !g.is_tree() {
        return Err(Error::NotTree);
    }
    let mut seen = vec![false; g.n()];
    let mut order = vec![0];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    Ok(SolveResult::new(VertexSeq::new(order)?, Method::Tree))
}

/// Peels isolated and universal vertices, then rebuilds the MDNS from the
/// last vertex outwards. `None` when `g` is not a threshold graph.
pub fn solve_threshold(g: &Graph) -> Option<SolveResult> {
    if g.n() == 0 {
        return None;
    }
    let mut alive = vec![true; g.n()];
    let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut remaining = g.n();
    let mut peeled = Vec::with_capacity(g.n());
    while remaining > 1 {
        let v = (0..g.n())
            .find(|&v| alive[v] && (degree[v] == 0 || degree[v] + 1 == remaining))?;
        alive[v] = false;
        remaining -= 1;
        for &w in g.neighbors(v) {
            degree[w] -= 1;
        }
        peeled.push(v);
    }
    let last = (0..g.n()).find(|&v| alive[v]).expect("one vertex remains");
    let mut current = vec![last];
    let mut sequence = VertexSeq::single(last);
    for &v in peeled.iter().rev() {
        current.push(v);
        current.sort_unstable();
        let (sub, map) = g.induced_subgraph(&current).expect("vertices in range");
        let local_v = map.local(v).expect("v was just added");
        let local_seq: Vec<Vertex> = sequence.iter().map(|&w| map.local(w).unwrap()).collect();
        let lifted = if sub.degree(local_v) == 0 {
            lift_isolated(&sub, local_v, &local_seq)
        } else {
            lift_universal(&sub, local_v, &local_seq)
        }
        .expect("peeling order is a valid construction");
        sequence = lifted.sequence.map(|w| map.parent(w));
    }
    Some(SolveResult::new(sequence, Method::Threshold))
}

/// Union/join recursion down to single vertices. `None` when some piece is
/// connected and co-connected, i.e. `g` contains an induced `P4`.
pub fn solve_cograph(g: &Graph) -> Option<SolveResult> {
    let all: Vec<Vertex> = (0..g.n()).collect();
    cograph_part(g, &all)
}

fn cograph_part(g: &Graph, vertices: &[Vertex]) -> Option<SolveResult> {
    match vertices {
        [] => return Some(SolveResult::empty(Method::Cograph)),
        [v] => return Some(SolveResult::new(VertexSeq::single(*v), Method::Cograph)),
        _ => {}
    }
    let (h, map) = g.induced_subgraph(vertices).expect("vertices in range");
    let lift = |part: &Vec<Vertex>| part.iter().map(|&v| map.parent(v)).collect::<Vec<_>>();
    let components = h.components();
    if components.len() > 1 {
        let mut acc = SolveResult::empty(Method::Cograph);
        for part in &components {
            acc = mdns_union(&acc, &cograph_part(g, &lift(part))?).expect("parts are disjoint");
        }
        return Some(acc);
    }
    let co_components = h.complement().components();
    if co_components.len() < 2 {
        return None;
    }
    let parts: Vec<Vec<Vertex>> = co_components.iter().map(lift).collect();
    let mut solved = Vec::with_capacity(parts.len());
    for part in &parts {
        solved.push(cograph_part(g, part)?);
    }
    Some(fold_join(g, &parts, solved))
}

fn fold_join(g: &Graph, parts: &[Vec<Vertex>], solved: Vec<SolveResult>) -> SolveResult {
    let mut solved = solved.into_iter();
    let mut acc = solved.next().expect("at least two parts");
    let mut covered = parts[0].clone();
    for (part, result) in parts[1..].iter().zip(solved) {
        acc = mdns_join(g, &covered, &acc, part, &result).expect("co-components are joined").0;
        covered.extend_from_slice(part);
    }
    acc
}

/// Witness role orders for the three special modular pieces, on the role
/// labels of [`SpecialGraph::edges`].
pub fn special_witness_roles(shape: SpecialGraph) -> &'static [usize] {
    match shape {
        SpecialGraph::P5 => &[0, 1, 2, 3, 4],
        SpecialGraph::C5 => &[0, 2, 4, 1],
        SpecialGraph::House => &HOUSE_ROLES,
    }
}

const HOUSE_ROLES: [usize; 4] = [0, 1, 2, 3];

/// Evaluates the decomposition tree bottom-up.
pub fn solve_p4tidy(g: &Graph) -> std::result::Result<SolveResult, NotSupported> {
    let tree = decompose(g)?;
    Ok(evaluate(g, &tree, tree.root))
}

fn evaluate(g: &Graph, tree: &DecompTree, i: usize) -> SolveResult {
    let node = tree.node(i);
    let children: Vec<SolveResult> = node.children.iter().map(|&c| evaluate(g, tree, c)).collect();
    let result = match &node.kind {
        NodeKind::Leaf => SolveResult::new(VertexSeq::new(node.vertices.clone()).unwrap(), Method::P4tidy),
        NodeKind::Union => children
            .iter()
            .try_fold(SolveResult::empty(Method::P4tidy), |acc, c| mdns_union(&acc, c))
            .expect("components are disjoint"),
        NodeKind::Join => {
            let parts: Vec<Vec<Vertex>> =
                node.children.iter().map(|&c| tree.node(c).vertices.clone()).collect();
            fold_join(g, &parts, children)
        }
        NodeKind::Special { shape, labeling } => {
            let seq = special_witness_roles(*shape).iter().map(|&role| labeling[role]).collect();
            SolveResult::new(VertexSeq::new(seq).unwrap(), Method::P4tidy)
        }
        NodeKind::Spider { partition } => {
            let head = children.into_iter().next().unwrap_or_else(|| SolveResult::empty(Method::P4tidy));
            if partition.quasi == QuasiKind::None {
                mdns_spider(partition, &head)
            } else {
                mdns_quasi_spider(partition, &head, g.has_isolated_within(&partition.head))
            }
            .expect("recognized partitions are valid")
        }
    };
    SolveResult { method: Method::P4tidy, ..result }
}

fn oracle_result(g: &Graph, oracle: &Oracle) -> Result<SolveResult> {
    let r = oracle.mdns(g)?;
    Ok(SolveResult { value: r.value, sequence: r.witness, method: Method::Oracle })
}

/// Tree, threshold, cograph and P4-tidy solvers in that order, then the
/// oracle when `g` is within its size limit.
pub fn solve_auto(g: &Graph, oracle: &Oracle) -> Result<SolveResult> {
    if g.is_tree() {
        return solve_tree(g);
    }
    if let Some(r) = solve_threshold(g).or_else(|| solve_cograph(g)) {
        return Ok(r);
    }
    if let Ok(r) = solve_p4tidy(g) {
        return Ok(r);
    }
    if g.n() <= oracle.limit {
        return oracle_result(g, oracle);
    }
    Err(Error::Unsupported(format!(
        "graph with {} vertices is not P4-tidy and exceeds the oracle limit {}",
        g.n(),
        oracle.limit
    )))
}

/// Runs the requested method; structural methods fail with
/// [`Error::Unsupported`] outside their class.
pub fn solve(g: &Graph, method: Method, oracle: &Oracle) -> Result<SolveResult> {
    let outside = |class: &str| Error::Unsupported(format!("graph is not a {class}"));
    match method {
        Method::Auto => solve_auto(g, oracle),
        Method::Oracle => oracle_result(g, oracle),
        Method::Tree => solve_tree(g),
        Method::Threshold => solve_threshold(g).ok_or_else(|| outside("threshold graph")),
        Method::Cograph => solve_cograph(g).ok_or_else(|| outside("cograph")),
        Method::P4tidy => solve_p4tidy(g).map_err(|_| outside("P4-tidy graph")),
    }
}
