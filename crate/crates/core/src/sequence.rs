//! Vertex sequences and their domination footprints.
//!
//! A step of a sequence dominates every vertex of `N[v]`. The footprint of a
//! step splits into the vertices dominated for the first time (`new`) and the
//! vertices dominated for the second time (`once`). A sequence is a double
//! neighborhood sequence (DNS) when every step has a nonempty footprint, and a
//! double dominating sequence (DDS) when, in addition, every vertex ends up
//! dominated at least twice.

use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Ordered list of distinct vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexSeq(Vec<Vertex>);

impl VertexSeq {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        check_distinct(&vertices)?;
        Ok(Self(vertices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(v: Vertex) -> Self {
        Self(vec![v])
    }

    /// 0-based position of `v`.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    /// Applies `f` to every entry; `f` must be injective.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> VertexSeq {
        VertexSeq(self.0.iter().map(|&v| f(v)).collect())
    }

    /// Appends `v`, failing if it is already present.
    pub fn push(&mut self, v: Vertex) -> Result<()> {
        if self.0.contains(&v) {
            return Err(Error::Overlap(v));
        }
        self.0.push(v);
        Ok(())
    }
}

impl Deref for VertexSeq {
    type Target = [Vertex];

    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

fn check_distinct(vertices: &[Vertex]) -> Result<()> {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicateVertex(w[0])),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepFootprint {
    #[serde(rename = "v")]
    pub vertex: Vertex,
    /// Vertices dominated for the first time at this step.
    #[serde(rename = "new")]
    pub new_set: Vec<Vertex>,
    /// Vertices dominated exactly once before and again at this step.
    #[serde(rename = "once")]
    pub once_set: Vec<Vertex>,
}

impl StepFootprint {
    pub fn is_legal(&self) -> bool {
        !self.new_set.is_empty() || !self.once_set.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub sequence: Vec<Vertex>,
    pub steps: Vec<StepFootprint>,
    pub is_dns: bool,
    pub is_dds: bool,
    /// Final domination count of every vertex, capped at 2.
    #[serde(skip)]
    pub counts: Vec<u8>,
    /// Index of the first step with an empty footprint.
    #[serde(skip)]
    pub first_illegal: Option<usize>,
}

impl Certificate {
    /// `S^1`: the steps that newly dominate some vertex.
    pub fn first_level(&self) -> Vec<Vertex> {
        self.steps.iter().filter(|s| !s.new_set.is_empty()).map(|s| s.vertex).collect()
    }

    /// `S^2`: the remaining steps.
    pub fn second_level(&self) -> Vec<Vertex> {
        self.steps.iter().filter(|s| s.new_set.is_empty()).map(|s| s.vertex).collect()
    }

    pub fn step_of(&self, v: Vertex) -> Option<&StepFootprint> {
        self.steps.iter().find(|s| s.vertex == v)
    }
}

/// Computes the footprint of every step. Sequences that are not DNS are
/// accepted; `first_illegal` then points at the offending step.
pub fn footprint(g: &Graph, seq: &[Vertex]) -> Result<Certificate> {
    for &v in seq {
        g.check_vertex(v)?;
    }
    check_distinct(seq)?;
    let mut counts = vec![0u8; g.n()];
    let mut steps = Vec::with_capacity(seq.len());
    let mut first_illegal = None;
    for (i, &v) in seq.iter().enumerate() {
        let mut new_set = Vec::new();
        let mut once_set = Vec::new();
        for w in g.closed_neighborhood(v).iter() {
            match counts[w] {
                0 => new_set.push(w),
                1 => once_set.push(w),
                _ => {}
            }
            counts[w] = (counts[w] + 1).min(2);
        }
        let step = StepFootprint { vertex: v, new_set, once_set };
        if !step.is_legal() && first_illegal.is_none() {
            first_illegal = Some(i);
        }
        steps.push(step);
    }
    let is_dns = first_illegal.is_none();
    let is_dds = is_dns && counts.iter().all(|&c| c >= 2);
    Ok(Certificate {
        n: g.n(),
        sequence: seq.to_vec(),
        steps,
        is_dns,
        is_dds,
        counts,
        first_illegal,
    })
}

pub fn is_dns(g: &Graph, seq: &[Vertex]) -> bool {
    footprint(g, seq).is_ok_and(|c| c.is_dns)
}

pub fn is_dds(g: &Graph, seq: &[Vertex]) -> bool {
    footprint(g, seq).is_ok_and(|c| c.is_dds)
}

/// Whether every step newly dominates a vertex (a legal sequence in the
/// Grundy domination sense), and whether the set dominates `g`.
pub fn legal_dominating(g: &Graph, seq: &[Vertex]) -> (bool, bool) {
    let mut dominated = vec![false; g.n()];
    let mut legal = true;
    for &v in seq {
        let mut fresh = false;
        for w in g.closed_neighborhood(v).iter() {
            fresh |= !dominated[w];
            dominated[w] = true;
        }
        legal &= fresh;
    }
    (legal, dominated.iter().all(|&d| d))
}

/// Splits a DNS into `(S^1, S^2)`, preserving relative order.
pub fn split_levels(g: &Graph, seq: &[Vertex]) -> Result<(VertexSeq, VertexSeq)> {
    let cert = footprint(g, seq)?;
    if let Some(step) = cert.first_illegal {
        return Err(Error::NotDns { step });
    }
    Ok((VertexSeq(cert.first_level()), VertexSeq(cert.second_level())))
}

/// `P_S(u)`: the `S^2` vertices whose second-time witnesses were first
/// dominated by `u`. Returned in sequence order.
pub fn p_set(g: &Graph, seq: &[Vertex], u: Vertex) -> Result<Vec<Vertex>> {
    let cert = footprint(g, seq)?;
    if let Some(step) = cert.first_illegal {
        return Err(Error::NotDns { step });
    }
    p_set_in(&cert, u)
}

pub(crate) fn p_set_in(cert: &Certificate, u: Vertex) -> Result<Vec<Vertex>> {
    let first = cert.step_of(u).ok_or(Error::NotInSequence(u))?;
    if first.new_set.is_empty() {
        return Err(Error::NotInFirstLevel(u));
    }
    Ok(cert
        .steps
        .iter()
        .filter(|s| s.new_set.is_empty())
        .filter(|s| s.once_set.iter().any(|w| first.new_set.contains(w)))
        .map(|s| s.vertex)
        .collect())
}

/// `S_{u→v}`: moves `u` to the slot immediately after `v`.
pub fn move_after(seq: &[Vertex], u: Vertex, v: Vertex) -> Result<VertexSeq> {
    let pu = seq.iter().position(|&x| x == u).ok_or(Error::NotInSequence(u))?;
    let pv = seq.iter().position(|&x| x == v).ok_or(Error::NotInSequence(v))?;
    if pu >= pv {
        return Err(Error::OrderViolated { u, v });
    }
    let mut out = seq.to_vec();
    out[pu..=pv].rotate_left(1);
    Ok(VertexSeq(out))
}

/// `s1 ⊕ s2`.
pub fn concat(s1: &[Vertex], s2: &[Vertex]) -> Result<VertexSeq> {
    if let Some(&v) = s2.iter().find(|v| s1.contains(v)) {
        return Err(Error::Overlap(v));
    }
    let mut out = s1.to_vec();
    out.extend_from_slice(s2);
    VertexSeq::new(out)
}

/// `S - R`.
pub fn delete_vertices(seq: &[Vertex], remove: &[Vertex]) -> VertexSeq {
    VertexSeq(seq.iter().copied().filter(|v| !remove.contains(v)).collect())
}
