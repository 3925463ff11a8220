//! Union/join splitting and recognition of the modular pieces of P4-tidy
//! graphs: single vertices, `P5`, the house, `C5`, spiders and quasi-spiders.
//!
//! A spider `(S, C, H)` has a stable set `S = {s_1..s_r}`, a clique
//! `C = {c_1..c_r}` and a head `H` complete to `C` and anticomplete to `S`.
//! Thin spiders match `s_i` with `c_i` only; thick spiders join `s_i` to every
//! `c_j` with `j ≠ i`. The complement of a thick spider is a thin spider with
//! the roles of `S` and `C` swapped, which is how thick spiders are found.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, TwinKind, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpiderKind {
    Thin,
    Thick,
}

/// Which twin, if any, was added to a spider.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuasiKind {
    #[serde(rename = "none")]
    None,
    /// False twin of `s_r`.
    #[serde(rename = "S_f")]
    SFalse,
    /// True twin of `s_r`.
    #[serde(rename = "S_t")]
    STrue,
    /// False twin of `c_r`.
    #[serde(rename = "C_f")]
    CFalse,
    /// True twin of `c_r`.
    #[serde(rename = "C_t")]
    CTrue,
}

impl QuasiKind {
    pub const ALL: [QuasiKind; 5] = [
        QuasiKind::None,
        QuasiKind::SFalse,
        QuasiKind::STrue,
        QuasiKind::CFalse,
        QuasiKind::CTrue,
    ];

    pub fn on_stable_side(self) -> bool {
        matches!(self, QuasiKind::SFalse | QuasiKind::STrue)
    }

    pub fn twin_kind(self) -> Option<TwinKind> {
        match self {
            QuasiKind::None => None,
            QuasiKind::SFalse | QuasiKind::CFalse => Some(TwinKind::False),
            QuasiKind::STrue | QuasiKind::CTrue => Some(TwinKind::True),
        }
    }
}

/// Spider or quasi-spider partition. `stable[i]` and `clique[i]` are `s_{i+1}`
/// and `c_{i+1}`; for quasi-spiders the twinned vertex sits at index `r - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpiderPartition {
    pub kind: SpiderKind,
    pub r: usize,
    #[serde(rename = "S")]
    pub stable: Vec<Vertex>,
    #[serde(rename = "C")]
    pub clique: Vec<Vertex>,
    #[serde(rename = "H")]
    pub head: Vec<Vertex>,
    pub quasi: QuasiKind,
    pub twin_vertex: Option<Vertex>,
}

impl SpiderPartition {
    pub fn vertex_count(&self) -> usize {
        2 * self.r + self.head.len() + usize::from(self.twin_vertex.is_some())
    }

    /// Size and consistency checks that do not need the graph.
    pub fn check_shape(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidPartition(m.to_string()));
        if self.stable.len() != self.r || self.clique.len() != self.r {
            return bad("|S| and |C| must both equal r");
        }
        match self.kind {
            SpiderKind::Thin if self.r < 2 => return bad("thin spiders need r >= 2"),
            SpiderKind::Thick if self.r < 3 => return bad("thick spiders need r >= 3"),
            _ => {}
        }
        if (self.quasi == QuasiKind::None) != self.twin_vertex.is_none() {
            return bad("twin vertex must be present exactly for quasi-spiders");
        }
        let mut all: Vec<Vertex> = self
            .stable
            .iter()
            .chain(&self.clique)
            .chain(&self.head)
            .chain(self.twin_vertex.as_ref())
            .copied()
            .collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return bad("parts overlap");
        }
        Ok(())
    }

    /// Full check of the partition against `g`, which must consist of exactly
    /// the partitioned vertices.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check_shape()?;
        let bad = |m: String| Err(Error::InvalidPartition(m));
        if self.vertex_count() != g.n() {
            return bad(format!("partition covers {} of {} vertices", self.vertex_count(), g.n()));
        }
        for &v in self.stable.iter().chain(&self.clique).chain(&self.head) {
            g.check_vertex(v)?;
        }
        let r = self.r;
        for i in 0..r {
            for j in 0..r {
                if i != j && g.has_edge(self.stable[i], self.stable[j]) {
                    return bad("S is not stable".into());
                }
                if i != j && !g.has_edge(self.clique[i], self.clique[j]) {
                    return bad("C is not a clique".into());
                }
                let want = match self.kind {
                    SpiderKind::Thin => i == j,
                    SpiderKind::Thick => i != j,
                };
                if g.has_edge(self.stable[i], self.clique[j]) != want {
                    return bad(format!("wrong adjacency between s{} and c{}", i + 1, j + 1));
                }
            }
            for &h in &self.head {
                if !g.has_edge(self.clique[i], h) {
                    return bad("C is not complete to H".into());
                }
                if g.has_edge(self.stable[i], h) {
                    return bad("S is not anticomplete to H".into());
                }
            }
        }
        if let (Some(twin), Some(kind)) = (self.twin_vertex, self.quasi.twin_kind()) {
            g.check_vertex(twin)?;
            let original = if self.quasi.on_stable_side() {
                self.stable[r - 1]
            } else {
                self.clique[r - 1]
            };
            if g.twin_kind(original, twin) != Some(kind) {
                return bad("twin vertex is not the declared twin".into());
            }
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(Vertex) -> Vertex) -> SpiderPartition {
        SpiderPartition {
            kind: self.kind,
            r: self.r,
            stable: self.stable.iter().map(|&v| f(v)).collect(),
            clique: self.clique.iter().map(|&v| f(v)).collect(),
            head: self.head.iter().map(|&v| f(v)).collect(),
            quasi: self.quasi,
            twin_vertex: self.twin_vertex.map(&f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpecialGraph {
    P5,
    House,
    C5,
}

impl SpecialGraph {
    pub const ALL: [SpecialGraph; 3] = [SpecialGraph::P5, SpecialGraph::House, SpecialGraph::C5];

    /// Edges on role labels `0..5`: the path `0-1-2-3-4`, its complement, and
    /// the cycle `0-1-2-3-4-0`.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            SpecialGraph::P5 => &[(0, 1), (1, 2), (2, 3), (3, 4)],
            SpecialGraph::House => &[(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4)],
            SpecialGraph::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
        }
    }

    pub fn graph(self) -> Graph {
        Graph::from_edges(5, self.edges().iter().copied()).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Leaf,
    Union,
    Join,
    /// The head subtree, when `H` is nonempty, is the only child.
    Spider { partition: SpiderPartition },
    /// `labeling[role]` is the vertex playing `role` in [`SpecialGraph::edges`].
    Special { shape: SpecialGraph, labeling: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompNode {
    pub vertices: Vec<Vertex>,
    #[serde(flatten)]
    pub kind: NodeKind,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompTree {
    pub n: usize,
    pub root: usize,
    pub nodes: Vec<DecompNode>,
}

/// A modular piece outside the supported catalogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotSupported {
    pub vertices: Vec<Vertex>,
}

impl DecompTree {
    pub fn node(&self, i: usize) -> &DecompNode {
        &self.nodes[i]
    }

    /// Rebuilds the graph described by the tree.
    pub fn materialize(&self) -> Graph {
        let mut edges = Vec::new();
        self.collect_edges(self.root, &mut edges);
        Graph::from_edges(self.n, edges).expect("tree vertices are in range")
    }

    fn collect_edges(&self, i: usize, edges: &mut Vec<(Vertex, Vertex)>) {
        let node = &self.nodes[i];
        for &c in &node.children {
            self.collect_edges(c, edges);
        }
        match &node.kind {
            NodeKind::Leaf | NodeKind::Union => {}
            NodeKind::Join => {
                for (a, &ca) in node.children.iter().enumerate() {
                    for &cb in &node.children[a + 1..] {
                        for &u in &self.nodes[ca].vertices {
                            edges.extend(self.nodes[cb].vertices.iter().map(|&v| (u, v)));
                        }
                    }
                }
            }
            NodeKind::Special { shape, labeling } => {
                edges.extend(shape.edges().iter().map(|&(a, b)| (labeling[a], labeling[b])));
            }
            NodeKind::Spider { partition: p } => spider_edges(p, edges),
        }
    }
}

/// Edges of a spider or quasi-spider, excluding edges inside the head.
pub fn spider_edges(p: &SpiderPartition, edges: &mut Vec<(Vertex, Vertex)>) {
    let r = p.r;
    for i in 0..r {
        for j in 0..r {
            if i < j {
                edges.push((p.clique[i], p.clique[j]));
            }
            let adjacent = match p.kind {
                SpiderKind::Thin => i == j,
                SpiderKind::Thick => i != j,
            };
            if adjacent {
                edges.push((p.stable[i], p.clique[j]));
            }
        }
        edges.extend(p.head.iter().map(|&h| (p.clique[i], h)));
    }
    let Some(twin) = p.twin_vertex else {
        return;
    };
    let original = if p.quasi.on_stable_side() { p.stable[r - 1] } else { p.clique[r - 1] };
    let mut base = Vec::new();
    spider_edges(
        &SpiderPartition { quasi: QuasiKind::None, twin_vertex: None, ..p.clone() },
        &mut base,
    );
    for (a, b) in base {
        if a == original {
            edges.push((twin, b));
        } else if b == original {
            edges.push((a, twin));
        }
    }
    if p.quasi.twin_kind() == Some(TwinKind::True) {
        edges.push((original, twin));
    }
}

/// Recursive union/join decomposition down to recognized modular pieces.
pub fn decompose(g: &Graph) -> std::result::Result<DecompTree, NotSupported> {
    let mut builder = TreeBuilder { g, nodes: Vec::new() };
    let all: Vec<Vertex> = (0..g.n()).collect();
    let root = builder.build(all)?;
    Ok(DecompTree { n: g.n(), root, nodes: builder.nodes })
}

struct TreeBuilder<'a> {
    g: &'a Graph,
    nodes: Vec<DecompNode>,
}

impl TreeBuilder<'_> {
    fn push(&mut self, vertices: Vec<Vertex>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(DecompNode { vertices, kind, children });
        self.nodes.len() - 1
    }

    fn build(&mut self, vertices: Vec<Vertex>) -> std::result::Result<usize, NotSupported> {
        if vertices.len() <= 1 {
            return Ok(self.push(vertices, NodeKind::Leaf, Vec::new()));
        }
        let (h, map) = self.g.induced_subgraph(&vertices).expect("vertices in range");
        let lift = |set: &[Vertex]| set.iter().map(|&v| map.parent(v)).collect::<Vec<_>>();

        let components = h.components();
        if components.len() > 1 {
            return self.split(vertices, NodeKind::Union, components.iter().map(|c| lift(c)));
        }
        let co_components = h.complement().components();
        if co_components.len() > 1 {
            return self.split(vertices, NodeKind::Join, co_components.iter().map(|c| lift(c)));
        }
        if let Some((shape, labeling)) = match_special(&h) {
            let labeling = lift(&labeling);
            return Ok(self.push(vertices, NodeKind::Special { shape, labeling }, Vec::new()));
        }
        let partition = recognize_spider(&h).or_else(|| recognize_quasi_spider(&h));
        match partition {
            Some(p) => {
                let p = p.map(|v| map.parent(v));
                let children = if p.head.is_empty() {
                    Vec::new()
                } else {
                    vec![self.build(p.head.clone())?]
                };
                Ok(self.push(vertices, NodeKind::Spider { partition: p }, children))
            }
            None => Err(NotSupported { vertices }),
        }
    }

    fn split(
        &mut self,
        vertices: Vec<Vertex>,
        kind: NodeKind,
        parts: impl Iterator<Item = Vec<Vertex>>,
    ) -> std::result::Result<usize, NotSupported> {
        let mut children = Vec::new();
        for part in parts {
            children.push(self.build(part)?);
        }
        Ok(self.push(vertices, kind, children))
    }
}

/// Thin spider candidate from the pendant vertices, which are exactly `S`.
fn thin_candidate(g: &Graph) -> Option<(Vec<Vertex>, Vec<Vertex>, Vec<Vertex>)> {
    let stable: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    if stable.len() < 2 {
        return None;
    }
    let clique: Vec<Vertex> = stable.iter().map(|&s| g.neighbors(s)[0]).collect();
    let mut in_spider = vec![false; g.n()];
    for &v in stable.iter().chain(&clique) {
        if in_spider[v] {
            return None;
        }
        in_spider[v] = true;
    }
    let head = (0..g.n()).filter(|&v| !in_spider[v]).collect();
    Some((stable, clique, head))
}

/// Spider partition of `g` (no added twin), if one exists. Weight-2 spiders
/// are reported as thin.
pub fn recognize_spider(g: &Graph) -> Option<SpiderPartition> {
    if g.n() < 4 {
        return None;
    }
    if let Some((stable, clique, head)) = thin_candidate(g) {
        let p = SpiderPartition {
            kind: SpiderKind::Thin,
            r: stable.len(),
            stable,
            clique,
            head,
            quasi: QuasiKind::None,
            twin_vertex: None,
        };
        if p.validate(g).is_ok() {
            return Some(p);
        }
    }
    // S and C swap roles in the complement
    let (clique, stable, head) = thin_candidate(&g.complement())?;
    let p = SpiderPartition {
        kind: SpiderKind::Thick,
        r: stable.len(),
        stable,
        clique,
        head,
        quasi: QuasiKind::None,
        twin_vertex: None,
    };
    p.validate(g).ok().map(|_| p)
}

/// Quasi-spider partition: a spider plus one true or false twin of a vertex
/// of `S ∪ C`.
pub fn recognize_quasi_spider(g: &Graph) -> Option<SpiderPartition> {
    if g.n() < 5 {
        return None;
    }
    for (a, b, kind) in g.find_twins() {
        for (original, extra) in [(a, b), (b, a)] {
            let (rest, map) = g.remove_vertex(extra).ok()?;
            let Some(base) = recognize_spider(&rest) else {
                continue;
            };
            let mut p = base.map(|v| map.parent(v));
            let on_stable = if let Some(i) = p.stable.iter().position(|&v| v == original) {
                p.stable.swap(i, p.r - 1);
                p.clique.swap(i, p.r - 1);
                true
            } else if let Some(i) = p.clique.iter().position(|&v| v == original) {
                p.stable.swap(i, p.r - 1);
                p.clique.swap(i, p.r - 1);
                false
            } else {
                continue;
            };
            p.quasi = match (on_stable, kind) {
                (true, TwinKind::False) => QuasiKind::SFalse,
                (true, TwinKind::True) => QuasiKind::STrue,
                (false, TwinKind::False) => QuasiKind::CFalse,
                (false, TwinKind::True) => QuasiKind::CTrue,
            };
            p.twin_vertex = Some(extra);
            if p.validate(g).is_ok() {
                return Some(p);
            }
        }
    }
    None
}

/// Matches a 5-vertex graph against `P5`, the house and `C5`.
pub fn match_special(g: &Graph) -> Option<(SpecialGraph, Vec<Vertex>)> {
    if g.n() != 5 {
        return None;
    }
    for shape in SpecialGraph::ALL {
        let edges = shape.edges();
        if edges.len() != g.edge_count() {
            continue;
        }
        let mut perm: Vec<Vertex> = (0..5).collect();
        loop {
            if edges.iter().all(|&(a, b)| g.has_edge(perm[a], perm[b])) {
                return Some((shape, perm));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    None
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
