//! Seeded generators for every graph family with a structural solver. Each
//! generator returns the construction it used so recognizers can be checked
//! without the oracle.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::{spider_edges, QuasiKind, SpecialGraph, SpiderKind, SpiderPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::solvers::Method;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Tree,
    Threshold,
    Cograph,
    Spider,
    QuasiSpider,
    P4tidy,
    ConnectedRandom,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Tree,
        Family::Threshold,
        Family::Cograph,
        Family::Spider,
        Family::QuasiSpider,
        Family::P4tidy,
        Family::ConnectedRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::Threshold => "threshold",
            Family::Cograph => "cograph",
            Family::Spider => "spider",
            Family::QuasiSpider => "quasi_spider",
            Family::P4tidy => "p4tidy",
            Family::ConnectedRandom => "connected_random",
        }
    }

    pub fn min_size(self) -> usize {
        match self {
            Family::Spider => 4,
            Family::QuasiSpider => 5,
            _ => 1,
        }
    }

    /// The structural solver that claims the family.
    pub fn solver(self) -> Method {
        match self {
            Family::Tree => Method::Tree,
            Family::Threshold => Method::Threshold,
            Family::Cograph => Method::Cograph,
            Family::Spider | Family::QuasiSpider | Family::P4tidy => Method::P4tidy,
            Family::ConnectedRandom => Method::Auto,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    /// Number of vertices.
    pub size: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Cotree {
    Leaf { vertex: Vertex },
    Union { children: Vec<Cotree> },
    Join { children: Vec<Cotree> },
}

impl Cotree {
    fn shift(&mut self, off: usize) {
        match self {
            Cotree::Leaf { vertex } => *vertex += off,
            Cotree::Union { children } | Cotree::Join { children } => {
                children.iter_mut().for_each(|c| c.shift(off))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdOp {
    Isolated,
    Universal,
}

/// Construction grammar of P4-tidy graphs, without vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "piece", rename_all = "snake_case")]
pub enum TidyRecipe {
    Vertex,
    Special { shape: SpecialGraph },
    Spider { kind: SpiderKind, r: usize, quasi: QuasiKind, head: Option<Box<TidyRecipe>> },
    Union { children: Vec<TidyRecipe> },
    Join { children: Vec<TidyRecipe> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Structure {
    Tree { root: Vertex, parent: Vec<Option<Vertex>> },
    /// Vertex `i` is added with `ops[i]`; `ops[0]` starts the graph.
    Threshold { ops: Vec<ThresholdOp> },
    Cograph { cotree: Cotree },
    Spider { partition: SpiderPartition, head: Option<TidyRecipe> },
    QuasiSpider { partition: SpiderPartition, head: Option<TidyRecipe> },
    P4tidy { recipe: TidyRecipe },
    ConnectedRandom { edge_probability: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Graph,
    pub structure: Structure,
}

const RANDOM_EDGE_PROBABILITY: f64 = 0.3;

pub fn generate(spec: GenSpec) -> Result<Generated> {
    if spec.size < spec.family.min_size() {
        return Err(Error::InvalidArgument(format!(
            "family {} needs at least {} vertices",
            spec.family,
            spec.family.min_size()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.size;
    Ok(match spec.family {
        Family::Tree => random_tree(&mut rng, n),
        Family::Threshold => random_threshold(&mut rng, n),
        Family::Cograph => {
            let (graph, cotree) = random_cograph(&mut rng, n);
            Generated { graph, structure: Structure::Cograph { cotree } }
        }
        Family::Spider | Family::QuasiSpider => {
            let quasi = if spec.family == Family::Spider {
                QuasiKind::None
            } else {
                *QuasiKind::ALL[1..].choose(&mut rng).unwrap()
            };
            let (graph, partition, head) = random_spider(&mut rng, n, quasi);
            let structure = if quasi == QuasiKind::None {
                Structure::Spider { partition, head }
            } else {
                Structure::QuasiSpider { partition, head }
            };
            Generated { graph, structure }
        }
        Family::P4tidy => {
            let (graph, recipe) = random_tidy(&mut rng, n);
            Generated { graph, structure: Structure::P4tidy { recipe } }
        }
        Family::ConnectedRandom => random_connected(&mut rng, n),
    })
}

/// Spider with `s_i = i - 1`, `c_i = r + i - 1`, the head on the next ids and
/// the twin, if any, last.
pub fn build_spider(
    kind: SpiderKind,
    r: usize,
    quasi: QuasiKind,
    head: &Graph,
) -> Result<(Graph, SpiderPartition)> {
    let h = head.n();
    let p = SpiderPartition {
        kind,
        r,
        stable: (0..r).collect(),
        clique: (r..2 * r).collect(),
        head: (2 * r..2 * r + h).collect(),
        quasi,
        twin_vertex: (quasi != QuasiKind::None).then_some(2 * r + h),
    };
    p.check_shape()?;
    let mut edges: Vec<(Vertex, Vertex)> = head.edges().map(|(u, v)| (u + 2 * r, v + 2 * r)).collect();
    spider_edges(&p, &mut edges);
    Ok((Graph::from_edges(p.vertex_count(), edges)?, p))
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Generated {
    let perm = random_permutation(rng, n);
    let mut parent = vec![None; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let p = rng.gen_range(0..i);
        parent[perm[i]] = Some(perm[p]);
        edges.push((perm[i], perm[p]));
    }
    Generated {
        graph: Graph::from_edges(n, edges).unwrap(),
        structure: Structure::Tree { root: perm[0], parent },
    }
}

fn random_threshold(rng: &mut ChaCha8Rng, n: usize) -> Generated {
    let mut ops = vec![ThresholdOp::Isolated];
    let mut edges = Vec::new();
    for i in 1..n {
        if rng.gen_bool(0.5) {
            ops.push(ThresholdOp::Universal);
            edges.extend((0..i).map(|j| (j, i)));
        } else {
            ops.push(ThresholdOp::Isolated);
        }
    }
    Generated {
        graph: Graph::from_edges(n, edges).unwrap(),
        structure: Structure::Threshold { ops },
    }
}

/// Sizes of `2..=3` nonempty parts summing to `n >= 2`.
fn random_split(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let k = rng.gen_range(2..=n.min(3));
    let mut cuts: Vec<usize> = sample(rng, n - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let size = c - prev;
            prev = c;
            size
        })
        .collect()
}

fn combine(graphs: Vec<Graph>, join: bool) -> Graph {
    graphs
        .into_iter()
        .reduce(|acc, g| if join { acc.join(&g) } else { acc.disjoint_union(&g) })
        .expect("at least one part")
}

fn random_cograph(rng: &mut ChaCha8Rng, n: usize) -> (Graph, Cotree) {
    if n == 1 {
        return (Graph::empty(1), Cotree::Leaf { vertex: 0 });
    }
    let join = rng.gen_bool(0.5);
    let mut graphs = Vec::new();
    let mut children = Vec::new();
    let mut off = 0;
    for size in random_split(rng, n) {
        let (g, mut t) = random_cograph(rng, size);
        t.shift(off);
        off += size;
        graphs.push(g);
        children.push(t);
    }
    let cotree = if join { Cotree::Join { children } } else { Cotree::Union { children } };
    (combine(graphs, join), cotree)
}

/// Picks a kind and weight that fit in `n` vertices; the head takes the rest.
fn random_spider(
    rng: &mut ChaCha8Rng,
    n: usize,
    quasi: QuasiKind,
) -> (Graph, SpiderPartition, Option<TidyRecipe>) {
    let body = n - usize::from(quasi != QuasiKind::None);
    let kind = if body >= 6 && rng.gen_bool(0.5) { SpiderKind::Thick } else { SpiderKind::Thin };
    let min_r = if kind == SpiderKind::Thick { 3 } else { 2 };
    let r = rng.gen_range(min_r..=body / 2);
    let head_size = body - 2 * r;
    let (head, recipe) = if head_size == 0 {
        (Graph::empty(0), None)
    } else {
        let (g, t) = random_tidy(rng, head_size);
        (g, Some(t))
    };
    let (graph, partition) = build_spider(kind, r, quasi, &head).expect("sizes fit");
    (graph, partition, recipe)
}

fn random_tidy(rng: &mut ChaCha8Rng, n: usize) -> (Graph, TidyRecipe) {
    if n == 1 {
        return (Graph::empty(1), TidyRecipe::Vertex);
    }
    // 0 union, 1 join, 2 special, 3 spider, 4 quasi-spider
    let mut options = vec![0, 1];
    if n == 5 {
        options.push(2);
    }
    if n >= 4 {
        options.push(3);
    }
    if n >= 5 {
        options.push(4);
    }
    match *options.choose(rng).unwrap() {
        choice @ (0 | 1) => {
            let join = choice == 1;
            let (graphs, children): (Vec<_>, Vec<_>) =
                random_split(rng, n).into_iter().map(|size| random_tidy(rng, size)).unzip();
            let recipe = if join { TidyRecipe::Join { children } } else { TidyRecipe::Union { children } };
            (combine(graphs, join), recipe)
        }
        2 => {
            let shape = *SpecialGraph::ALL.choose(rng).unwrap();
            (shape.graph(), TidyRecipe::Special { shape })
        }
        choice => {
            let quasi = if choice == 3 {
                QuasiKind::None
            } else {
                *QuasiKind::ALL[1..].choose(rng).unwrap()
            };
            let (g, p, head) = random_spider(rng, n, quasi);
            let recipe = TidyRecipe::Spider { kind: p.kind, r: p.r, quasi, head: head.map(Box::new) };
            (g, recipe)
        }
    }
}

/// Random spanning tree plus independent extra edges.
fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Generated {
    let tree = random_tree(rng, n).graph;
    let mut edges: Vec<_> = tree.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(RANDOM_EDGE_PROBABILITY) {
                edges.push((u, v));
            }
        }
    }
    Generated {
        graph: Graph::from_edges(n, edges).unwrap(),
        structure: Structure::ConnectedRandom { edge_probability: RANDOM_EDGE_PROBABILITY },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{decompose, recognize_quasi_spider, recognize_spider};
    use crate::solvers::{solve_cograph, solve_threshold};

    fn gen(family: Family, size: usize, seed: u64) -> Generated {
        generate(GenSpec { family, size, seed }).unwrap()
    }

    #[test]
    fn deterministic_under_seed() {
        for family in Family::ALL {
            assert_eq!(gen(family, 9, 4), gen(family, 9, 4), "{family}");
            assert_eq!(gen(family, 9, 4).graph.n(), 9);
        }
    }

    #[test]
    fn trees_and_thresholds() {
        let t = gen(Family::Tree, 7, 1);
        assert!(t.graph.is_tree());
        for seed in 0..20 {
            assert!(solve_threshold(&gen(Family::Threshold, 10, seed).graph).is_some());
            assert!(gen(Family::ConnectedRandom, 10, seed).graph.is_connected());
        }
    }

    #[test]
    fn cographs_have_cotrees() {
        let g = gen(Family::Cograph, 10, 2);
        assert!(matches!(g.structure, Structure::Cograph { .. }));
        for seed in 0..20 {
            assert!(solve_cograph(&gen(Family::Cograph, 12, seed).graph).is_some());
        }
    }

    #[test]
    fn spider_builder() {
        let (g, p) = build_spider(SpiderKind::Thick, 3, QuasiKind::None, &Graph::complete(2)).unwrap();
        assert_eq!(g.n(), 8);
        assert!(p.validate(&g).is_ok());
        let found = recognize_spider(&g).unwrap();
        assert_eq!((found.kind, found.r, found.head.len()), (SpiderKind::Thick, 3, 2));
        assert!(build_spider(SpiderKind::Thick, 2, QuasiKind::None, &Graph::empty(0)).is_err());
    }

    #[test]
    fn spider_families_are_recognized() {
        for seed in 0..30 {
            let g = gen(Family::Spider, 4 + seed as usize % 8, seed);
            let Structure::Spider { partition, .. } = &g.structure else { panic!() };
            let found = recognize_spider(&g.graph).unwrap();
            assert_eq!((found.kind, found.r), (partition.kind, partition.r));

            let g = gen(Family::QuasiSpider, 5 + seed as usize % 8, seed);
            let Structure::QuasiSpider { partition, .. } = &g.structure else { panic!() };
            assert!(recognize_spider(&g.graph).is_none());
            let found = recognize_quasi_spider(&g.graph).unwrap();
            assert_eq!((found.kind, found.r), (partition.kind, partition.r));
        }
    }

    #[test]
    fn p4tidy_graphs_decompose() {
        for seed in 0..50 {
            let g = gen(Family::P4tidy, 1 + seed as usize % 14, seed);
            let tree = decompose(&g.graph).unwrap();
            assert_eq!(tree.materialize(), g.graph);
        }
    }

    #[test]
    fn size_checks() {
        assert!(generate(GenSpec { family: Family::Spider, size: 3, seed: 0 }).is_err());
        assert_eq!("quasi_spider".parse::<Family>().unwrap(), Family::QuasiSpider);
        assert!("bogus".parse::<Family>().is_err());
    }
}
