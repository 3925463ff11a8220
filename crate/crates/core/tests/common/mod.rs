//! Naive reference searches and random graph helpers shared by the
//! integration tests. The searches enumerate every sequence or subset with no
//! memoization, so they only suit graphs of a handful of vertices.

#![allow(dead_code)]

use gddn::graph::{Graph, Vertex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn closed(g: &Graph, v: Vertex) -> Vec<Vertex> {
    let mut out = g.neighbors(v).to_vec();
    out.push(v);
    out
}

/// Longest sequence where every step reaches a vertex seen at most once
/// before; with `require_double`, only sequences ending double-dominated count.
fn longest(g: &Graph, played: &mut Vec<bool>, counts: &mut Vec<usize>, depth: usize, require_double: bool) -> Option<usize> {
    let mut best = if !require_double || counts.iter().all(|&c| c >= 2) { Some(depth) } else { None };
    for v in 0..g.n() {
        if played[v] {
            continue;
        }
        let nb = closed(g, v);
        if !nb.iter().any(|&w| counts[w] <= 1) {
            continue;
        }
        played[v] = true;
        for &w in &nb {
            counts[w] += 1;
        }
        let sub = longest(g, played, counts, depth + 1, require_double);
        for &w in &nb {
            counts[w] -= 1;
        }
        played[v] = false;
        best = best.max(sub);
    }
    best
}

pub fn naive_mdns(g: &Graph) -> usize {
    longest(g, &mut vec![false; g.n()], &mut vec![0; g.n()], 0, false).unwrap()
}

pub fn naive_gddn(g: &Graph) -> Option<usize> {
    longest(g, &mut vec![false; g.n()], &mut vec![0; g.n()], 0, true)
}

fn longest_legal(g: &Graph, played: &mut Vec<bool>, dominated: &mut Vec<usize>, depth: usize) -> usize {
    let mut best = depth;
    for v in 0..g.n() {
        if played[v] {
            continue;
        }
        let nb = closed(g, v);
        if !nb.iter().any(|&w| dominated[w] == 0) {
            continue;
        }
        played[v] = true;
        for &w in &nb {
            dominated[w] += 1;
        }
        best = best.max(longest_legal(g, played, dominated, depth + 1));
        for &w in &nb {
            dominated[w] -= 1;
        }
        played[v] = false;
    }
    best
}

pub fn naive_grundy(g: &Graph) -> usize {
    longest_legal(g, &mut vec![false; g.n()], &mut vec![0; g.n()], 0)
}

pub fn naive_double_domination(g: &Graph) -> Option<usize> {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|v| closed(g, v).iter().filter(|&&w| mask >> w & 1 == 1).count() >= 2)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Adds a twin of `v` (true or false) as a new last vertex.
pub fn add_twin(g: &Graph, v: Vertex, true_twin: bool) -> Graph {
    let t = g.n();
    let mut edges: Vec<_> = g.edges().collect();
    edges.extend(g.neighbors(v).iter().map(|&w| (w, t)));
    if true_twin {
        edges.push((v, t));
    }
    Graph::from_edges(t + 1, edges).unwrap()
}

/// Shifts every vertex of `seq` by `off`.
pub fn shifted(seq: &[Vertex], off: usize) -> Vec<Vertex> {
    seq.iter().map(|&v| v + off).collect()
}

/// A DNS of `g` of length `target` that never plays `avoid`, if one exists.
pub fn dns_avoiding(g: &Graph, avoid: Vertex, target: usize) -> Option<Vec<Vertex>> {
    fn go(g: &Graph, avoid: Vertex, target: usize, seq: &mut Vec<Vertex>, counts: &mut Vec<usize>) -> bool {
        if seq.len() == target {
            return true;
        }
        for v in 0..g.n() {
            if v == avoid || seq.contains(&v) {
                continue;
            }
            let nb = closed(g, v);
            if !nb.iter().any(|&w| counts[w] <= 1) {
                continue;
            }
            seq.push(v);
            nb.iter().for_each(|&w| counts[w] += 1);
            if go(g, avoid, target, seq, counts) {
                return true;
            }
            nb.iter().for_each(|&w| counts[w] -= 1);
            seq.pop();
        }
        false
    }
    let mut seq = Vec::new();
    go(g, avoid, target, &mut seq, &mut vec![0; g.n()]).then_some(seq)
}
