//! Simple undirected graphs with dense `0..n` vertex ids.
//!
//! Every vertex keeps its sorted neighbor list together with a bitset row of
//! its closed neighborhood, so membership tests and neighborhood unions are
//! word operations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Fixed-capacity bitset over vertex ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::new(capacity);
        for v in 0..capacity {
            set.insert(v);
        }
        set
    }

    pub fn from_iter_with_capacity<I: IntoIterator<Item = Vertex>>(capacity: usize, it: I) -> Self {
        let mut set = Self::new(capacity);
        for v in it {
            set.insert(v);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, v: Vertex) {
        debug_assert!(v < self.capacity);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.capacity && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// The low 64 bits; the whole set when the capacity is at most 64.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    closed: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub min_degree: usize,
    pub max_degree: usize,
    pub isolated: Vec<Vertex>,
    pub a_flag: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwinKind {
    True,
    False,
}

impl TwinKind {
    pub fn name(self) -> &'static str {
        match self {
            TwinKind::True => "true",
            TwinKind::False => "false",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VertexClass {
    pub isolated: bool,
    pub universal: bool,
    /// The unique neighbor when the vertex is pendant.
    pub pendant: Option<Vertex>,
}

/// Relabeling produced by [`Graph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    /// `to_parent[new] = old`.
    pub to_parent: Vec<Vertex>,
    to_local: Vec<Option<Vertex>>,
}

impl Relabel {
    pub fn local(&self, parent: Vertex) -> Option<Vertex> {
        self.to_local.get(parent).copied().flatten()
    }

    pub fn parent(&self, local: Vertex) -> Vertex {
        self.to_parent[local]
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            closed: (0..n)
                .map(|v| VertexSet::from_iter_with_capacity(n, [v]))
                .collect(),
        }
    }

    /// Builds a graph from an edge list, collapsing duplicate edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut sets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Self::from_sets(sets))
    }

    fn from_sets(sets: Vec<BTreeSet<Vertex>>) -> Self {
        let n = sets.len();
        let closed = sets
            .iter()
            .enumerate()
            .map(|(v, s)| VertexSet::from_iter_with_capacity(n, s.iter().copied().chain([v])))
            .collect();
        let adjacency = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Self { adjacency, closed }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges(off + other.n(), edges).unwrap()
    }

    /// Join; the vertices of `other` are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.n();
        let cross = (0..off).flat_map(|u| (0..other.n()).map(move |v| (u, v + off)));
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)))
            .chain(cross);
        Graph::from_edges(off + other.n(), edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    /// `N[v]` as a bitset.
    pub fn closed_neighborhood(&self, v: Vertex) -> &VertexSet {
        &self.closed[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.closed[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let sets = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.closed[u].contains(v)).collect())
            .collect();
        Self::from_sets(sets)
    }

    /// Subgraph induced by `keep`; new ids follow the ascending order of `keep`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<(Graph, Relabel)> {
        let mut to_local = vec![None; self.n()];
        let mut to_parent: Vec<Vertex> = Vec::with_capacity(keep.len());
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            to_local[v] = Some(i);
            to_parent.push(v);
        }
        let sets = to_parent
            .iter()
            .map(|&v| self.adjacency[v].iter().filter_map(|&w| to_local[w]).collect())
            .collect();
        Ok((Self::from_sets(sets), Relabel { to_parent, to_local }))
    }

    /// `g - v`, with ids above `v` shifted down by one.
    pub fn remove_vertex(&self, v: Vertex) -> Result<(Graph, Relabel)> {
        self.check_vertex(v)?;
        let keep: Vec<Vertex> = (0..self.n()).filter(|&x| x != v).collect();
        self.induced_subgraph(&keep)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let isolated = self.isolated_vertices();
        DegreeProfile {
            min_degree: (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0),
            max_degree: (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0),
            a_flag: u8::from(!isolated.is_empty()),
            isolated,
        }
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.degree(v) == 0).collect()
    }

    /// `a(G)`: whether some vertex is isolated.
    pub fn has_isolated(&self) -> bool {
        (0..self.n()).any(|v| self.degree(v) == 0)
    }

    /// `a(G[part])` without materializing the induced subgraph.
    pub fn has_isolated_within(&self, part: &[Vertex]) -> bool {
        let mut inside = vec![false; self.n()];
        for &v in part {
            inside[v] = true;
        }
        part.iter()
            .any(|&v| !self.adjacency[v].iter().any(|&w| inside[w]))
    }

    pub fn classify_vertex(&self, v: Vertex) -> VertexClass {
        let d = self.degree(v);
        VertexClass {
            isolated: d == 0,
            universal: d + 1 == self.n(),
            pendant: (d == 1).then(|| self.adjacency[v][0]),
        }
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n()).all(|v| self.degree(v) + 1 == self.n())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// All twin pairs `(u, v, kind)` with `u < v`.
    pub fn find_twins(&self) -> Vec<(Vertex, Vertex, TwinKind)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if let Some(kind) = self.twin_kind(u, v) {
                    out.push((u, v, kind));
                }
            }
        }
        out
    }

    pub fn twin_kind(&self, u: Vertex, v: Vertex) -> Option<TwinKind> {
        if u == v {
            return None;
        }
        if self.has_edge(u, v) {
            (self.closed[u] == self.closed[v]).then_some(TwinKind::True)
        } else {
            (self.adjacency[u] == self.adjacency[v]).then_some(TwinKind::False)
        }
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Parses the edge-list format: the first non-comment line holds `n`, every
/// later line holds one edge `u v`. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match n {
            None => {
                if tokens.len() != 1 {
                    return Err(err(format!("expected vertex count, found {content:?}")));
                }
                n = Some(
                    tokens[0]
                        .parse()
                        .map_err(|_| err(format!("invalid vertex count {:?}", tokens[0])))?,
                );
            }
            Some(count) => {
                if tokens.len() != 2 {
                    return Err(err(format!("expected \"u v\", found {content:?}")));
                }
                let mut ends = [0usize; 2];
                for (slot, tok) in ends.iter_mut().zip(&tokens) {
                    *slot = tok
                        .parse()
                        .map_err(|_| err(format!("invalid vertex {tok:?}")))?;
                    if *slot >= count {
                        return Err(err(format!("vertex {} out of range 0..{count}", *slot)));
                    }
                }
                let [u, v] = ends;
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing vertex count".into(),
    })?;
    Graph::from_edges(n, edges)
}
