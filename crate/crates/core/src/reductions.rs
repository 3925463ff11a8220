//! Rules relating the maximum double neighborhood number of a graph to that
//! of the graph with one vertex removed, plus the true-twin blow-up `G_f`.
//!
//! Sequences are always given in the ids of the larger graph `g`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Relabel, TwinKind, Vertex};
use crate::oracle::Oracle;
use crate::sequence::{footprint, Certificate, VertexSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftRule {
    Isolated,
    /// No MDNS of `g - p` avoids the neighbor: `+1`.
    PendantAppend,
    /// Some MDNS of `g - p` avoids the neighbor: `+2`.
    PendantPair,
    /// `g - u` has no isolated vertex: value unchanged.
    UniversalKeep,
    /// `g - u` has an isolated vertex: `+1`.
    UniversalAppend,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftResult {
    pub value: usize,
    pub sequence: VertexSeq,
    pub rule: LiftRule,
}

fn lifted(sub: &[Vertex], tail: &[Vertex], rule: LiftRule) -> Result<LiftResult> {
    let mut seq = VertexSeq::new(sub.to_vec())?;
    for &v in tail {
        seq.push(v)?;
    }
    Ok(LiftResult { value: seq.len(), sequence: seq, rule })
}

fn check_absent(sub: &[Vertex], v: Vertex) -> Result<()> {
    if sub.contains(&v) {
        Err(Error::Overlap(v))
    } else {
        Ok(())
    }
}

/// `S ⊕ (v)` for an isolated `v`.
pub fn lift_isolated(g: &Graph, v: Vertex, sub: &[Vertex]) -> Result<LiftResult> {
    g.check_vertex(v)?;
    if g.degree(v) != 0 {
        return Err(Error::NotIsolated(v));
    }
    check_absent(sub, v)?;
    lifted(sub, &[v], LiftRule::Isolated)
}

/// Lifts an MDNS of `g - p` over the pendant vertex `p`. When the caller
/// supplies an MDNS of `g - p` that avoids the neighbor `v` of `p`, the
/// result is that sequence followed by `(v, p)`; otherwise `sub ⊕ (p)`.
pub fn lift_pendant(
    g: &Graph,
    p: Vertex,
    sub: &[Vertex],
    sub_avoiding_neighbor: Option<&[Vertex]>,
) -> Result<LiftResult> {
    g.check_vertex(p)?;
    let v = g.classify_vertex(p).pendant.ok_or(Error::NotPendant(p))?;
    if let Some(w) = (0..g.n()).find(|&w| w != p && g.neighbors(w).iter().all(|&x| x == p)) {
        return Err(Error::IsolatedVertex(w));
    }
    check_absent(sub, p)?;
    match sub_avoiding_neighbor {
        Some(avoid) => {
            check_absent(avoid, p)?;
            check_absent(avoid, v)?;
            if avoid.len() != sub.len() {
                return Err(Error::InvalidArgument(format!(
                    "neighbor-avoiding sequence has length {}, expected {}",
                    avoid.len(),
                    sub.len()
                )));
            }
            lifted(avoid, &[v, p], LiftRule::PendantPair)
        }
        None => lifted(sub, &[p], LiftRule::PendantAppend),
    }
}

/// Lifts an MDNS of `g - u` over the universal vertex `u`.
pub fn lift_universal(g: &Graph, u: Vertex, sub: &[Vertex]) -> Result<LiftResult> {
    g.check_vertex(u)?;
    if g.n() < 2 {
        return Err(Error::TooSmall("a universal-vertex lift needs at least two vertices"));
    }
    if !g.classify_vertex(u).universal {
        return Err(Error::NotUniversal(u));
    }
    check_absent(sub, u)?;
    // in g - u, a vertex is isolated exactly when its only neighbor in g is u
    let isolated_below = (0..g.n()).any(|w| w != u && g.degree(w) == 1);
    if isolated_below {
        lifted(sub, &[u], LiftRule::UniversalAppend)
    } else {
        lifted(sub, &[], LiftRule::UniversalKeep)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwinInterval {
    pub lower: usize,
    pub upper: usize,
}

impl TwinInterval {
    pub fn contains(&self, value: usize) -> bool {
        self.lower <= value && value <= self.upper
    }
}

fn check_twins(g: &Graph, v: Vertex, v2: Vertex, kind: TwinKind) -> Result<()> {
    g.check_vertex(v)?;
    g.check_vertex(v2)?;
    if g.twin_kind(v, v2) != Some(kind) {
        return Err(Error::NotTwins { u: v, v: v2, kind: kind.name() });
    }
    Ok(())
}

/// Interval containing `dgri(g)` given `dgri(g - v2)` for twins `v`, `v2`.
pub fn twin_interval(
    g: &Graph,
    v: Vertex,
    v2: Vertex,
    kind: TwinKind,
    dgri_without: usize,
) -> Result<TwinInterval> {
    check_twins(g, v, v2, kind)?;
    Ok(TwinInterval { lower: dgri_without, upper: dgri_without + 1 })
}

/// Footprint of `seq` in `g - removed`, reported in the ids of `g`.
fn footprint_without(g: &Graph, removed: Vertex, seq: &[Vertex]) -> Result<(Certificate, Relabel)> {
    let (h, map) = g.remove_vertex(removed)?;
    let local = seq
        .iter()
        .map(|&x| map.local(x).ok_or(Error::Overlap(x)))
        .collect::<Result<Vec<_>>>()?;
    let mut cert = footprint(&h, &local)?;
    for step in &mut cert.steps {
        step.vertex = map.parent(step.vertex);
        for w in step.new_set.iter_mut().chain(step.once_set.iter_mut()) {
            *w = map.parent(*w);
        }
    }
    cert.sequence = seq.to_vec();
    Ok((cert, map))
}

/// Checks the certificate for the `+1` case of a true-twin pair: `sub` is a
/// DNS of `g - v2` (ids of `g`) containing `v` with `N¹[v] ≠ ∅`, and every
/// other step keeps a nonempty footprint after removing `N¹[v]`. On success,
/// returns `sub` with `v2` inserted right after `v`, a DNS of `g` one longer.
pub fn true_twin_extension(
    g: &Graph,
    v: Vertex,
    v2: Vertex,
    sub: &[Vertex],
) -> Result<Option<VertexSeq>> {
    check_twins(g, v, v2, TwinKind::True)?;
    let (cert, _) = footprint_without(g, v2, sub)?;
    if let Some(step) = cert.first_illegal {
        return Err(Error::NotDns { step });
    }
    let Some(first) = cert.step_of(v) else {
        return Ok(None);
    };
    if first.new_set.is_empty() {
        return Ok(None);
    }
    let survives = cert.steps.iter().filter(|s| s.vertex != v).all(|s| {
        s.new_set
            .iter()
            .chain(&s.once_set)
            .any(|w| !first.new_set.contains(w))
    });
    if !survives {
        return Ok(None);
    }
    let pos = sub.iter().position(|&x| x == v).expect("v is in the sequence");
    let mut out = sub.to_vec();
    out.insert(pos + 1, v2);
    Ok(Some(VertexSeq::new(out)?))
}

/// Necessary condition for the `+1` case of a false-twin pair: an MDNS of `g`
/// then meets `{v, v2}`.
pub fn false_twin_hit(seq: &[Vertex], v: Vertex, v2: Vertex) -> bool {
    seq.contains(&v) || seq.contains(&v2)
}

/// `G_f`: every vertex `v` becomes a clique of `f[v] + 1` true twins.
/// Copies of `v` get consecutive ids; `classes[v]` lists them.
pub fn blowup_gf(g: &Graph, f: &[usize]) -> Result<(Graph, Vec<Vec<Vertex>>)> {
    if f.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "multiplicity map has {} entries for {} vertices",
            f.len(),
            g.n()
        )));
    }
    let mut classes = Vec::with_capacity(g.n());
    let mut next = 0;
    for &k in f {
        classes.push((next..next + k + 1).collect::<Vec<_>>());
        next += k + 1;
    }
    let mut edges = Vec::new();
    for (v, class) in classes.iter().enumerate() {
        for (i, &a) in class.iter().enumerate() {
            edges.extend(class[i + 1..].iter().map(|&b| (a, b)));
        }
        for &u in g.neighbors(v).iter().filter(|&&u| u > v) {
            for &a in class {
                edges.extend(classes[u].iter().map(|&b| (a, b)));
            }
        }
    }
    Ok((Graph::from_edges(next, edges)?, classes))
}

/// Turns a legal dominating sequence `(v_1, …, v_k)` of `g` into the DNS
/// `(v_1^1, v_1^2, …, v_k^1, v_k^2)` of `G_f`. Every listed vertex needs at
/// least two copies.
pub fn doubled_sequence(classes: &[Vec<Vertex>], seq: &[Vertex]) -> Result<VertexSeq> {
    let mut out = Vec::with_capacity(2 * seq.len());
    for &v in seq {
        let class = classes.get(v).ok_or(Error::VertexOutOfRange { vertex: v, n: classes.len() })?;
        if class.len() < 2 {
            return Err(Error::InvalidArgument(format!("vertex {v} has a single copy")));
        }
        out.extend_from_slice(&class[..2]);
    }
    VertexSeq::new(out)
}

/// `dgri(g) - dgri(g - v)`, always in `0..=3` when `g - v` has no isolated
/// vertex.
pub fn deletion_delta(g: &Graph, v: Vertex, oracle: &Oracle) -> Result<usize> {
    g.check_vertex(v)?;
    if let Some(w) = (0..g.n()).find(|&w| w != v && g.neighbors(w).iter().all(|&x| x == v)) {
        return Err(Error::IsolatedVertex(w));
    }
    let (h, _) = g.remove_vertex(v)?;
    let with = oracle.mdns(g)?.value;
    let without = oracle.mdns(&h)?.value;
    Ok(with - without)
}
