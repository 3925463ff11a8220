//! Exact exponential reference solvers.
//!
//! The sequence oracles run a depth-first search over played vertex sets.
//! The capped domination count of every vertex only depends on the played
//! set, so one memo entry per subset suffices: `O(2^n · n)` states and moves.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::sequence::VertexSeq;

pub const DEFAULT_LIMIT: usize = 16;

/// Largest vertex count a bitmask state can represent.
pub const MAX_LIMIT: usize = 64;

const DENSE_MEMO_BITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub value: usize,
    pub witness: VertexSeq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { limit: DEFAULT_LIMIT }
    }
}

impl Oracle {
    pub fn with_limit(limit: usize) -> Self {
        Self { limit: limit.min(MAX_LIMIT) }
    }

    fn check_size(&self, g: &Graph) -> Result<()> {
        if g.n() > self.limit || g.n() > MAX_LIMIT {
            return Err(Error::SizeLimit { n: g.n(), limit: self.limit.min(MAX_LIMIT) });
        }
        Ok(())
    }

    fn check_no_isolated(g: &Graph) -> Result<()> {
        match g.isolated_vertices().first() {
            Some(&v) => Err(Error::IsolatedVertex(v)),
            None => Ok(()),
        }
    }

    /// Longest DNS (`dgri`).
    pub fn mdns(&self, g: &Graph) -> Result<OracleResult> {
        self.check_size(g)?;
        Ok(SequenceSearch::new(g, Game::MaxNeighborhood).run())
    }

    /// Longest DDS; requires a graph without isolated vertices.
    pub fn gddn(&self, g: &Graph) -> Result<OracleResult> {
        Self::check_no_isolated(g)?;
        self.check_size(g)?;
        Ok(SequenceSearch::new(g, Game::DoubleDominating).run())
    }

    /// Longest legal dominating sequence (`γ_gr`).
    pub fn grundy_domination(&self, g: &Graph) -> Result<OracleResult> {
        self.check_size(g)?;
        Ok(SequenceSearch::new(g, Game::Dominating).run())
    }

    /// Smallest double dominating set (`γ×2`), ascending.
    pub fn double_domination(&self, g: &Graph) -> Result<OracleResult> {
        Self::check_no_isolated(g)?;
        self.check_size(g)?;
        let n = g.n();
        let rows = masks(g);
        let covers = |d: u64| rows.iter().all(|r| (r & d).count_ones() >= 2);
        for k in 0..=n {
            for d in Combinations::new(n, k) {
                if covers(d) {
                    return Ok(OracleResult {
                        value: k,
                        witness: VertexSeq::new(bits(d).collect()).expect("distinct bits"),
                    });
                }
            }
        }
        // only the empty graph gets here, and k = 0 already covers it
        unreachable!("the full vertex set double dominates an isolated-free graph")
    }
}

pub fn oracle_mdns(g: &Graph) -> Result<OracleResult> {
    Oracle::default().mdns(g)
}

pub fn oracle_gddn(g: &Graph) -> Result<OracleResult> {
    Oracle::default().gddn(g)
}

pub fn oracle_grundy_domination(g: &Graph) -> Result<OracleResult> {
    Oracle::default().grundy_domination(g)
}

pub fn oracle_double_domination(g: &Graph) -> Result<OracleResult> {
    Oracle::default().double_domination(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Game {
    /// DNS moves, any stopping point.
    MaxNeighborhood,
    /// DNS moves, must end double dominating.
    DoubleDominating,
    /// Legal moves, must end dominating.
    Dominating,
}

const UNSEEN: u8 = u8::MAX;
const INFEASIBLE: u8 = u8::MAX - 1;
const STOP: u8 = u8::MAX;

enum Memo {
    Dense { value: Vec<u8>, choice: Vec<u8> },
    Sparse(HashMap<u64, (u8, u8)>),
}

impl Memo {
    fn new(n: usize) -> Self {
        if n <= DENSE_MEMO_BITS {
            let size = 1usize << n;
            Memo::Dense { value: vec![UNSEEN; size], choice: vec![STOP; size] }
        } else {
            Memo::Sparse(HashMap::new())
        }
    }

    fn get(&self, played: u64) -> Option<(u8, u8)> {
        match self {
            Memo::Dense { value, choice } => {
                let i = played as usize;
                (value[i] != UNSEEN).then(|| (value[i], choice[i]))
            }
            Memo::Sparse(map) => map.get(&played).copied(),
        }
    }

    fn put(&mut self, played: u64, entry: (u8, u8)) {
        match self {
            Memo::Dense { value, choice } => {
                value[played as usize] = entry.0;
                choice[played as usize] = entry.1;
            }
            Memo::Sparse(map) => {
                map.insert(played, entry);
            }
        }
    }
}

struct SequenceSearch {
    rows: Vec<u64>,
    all: u64,
    game: Game,
    memo: Memo,
}

impl SequenceSearch {
    fn new(g: &Graph, game: Game) -> Self {
        let n = g.n();
        Self {
            rows: masks(g),
            all: full_mask(n),
            game,
            memo: Memo::new(n),
        }
    }

    fn run(mut self) -> OracleResult {
        let value = self.best(0, 0, 0);
        debug_assert_ne!(value, INFEASIBLE);
        let mut witness = Vec::with_capacity(value as usize);
        let mut played = 0u64;
        while let Some((_, choice)) = self.memo.get(played) {
            if choice == STOP {
                break;
            }
            witness.push(choice as usize);
            played |= 1 << choice;
        }
        OracleResult { value: value as usize, witness: VertexSeq::new(witness).expect("distinct") }
    }

    fn best(&mut self, played: u64, dom1: u64, dom2: u64) -> u8 {
        if let Some((value, _)) = self.memo.get(played) {
            return value;
        }
        let done = match self.game {
            Game::MaxNeighborhood => true,
            Game::DoubleDominating => dom2 == self.all,
            Game::Dominating => dom1 == self.all,
        };
        let mut best = if done { played.count_ones() as u8 } else { INFEASIBLE };
        let mut choice = STOP;
        let open = match self.game {
            Game::Dominating => !dom1 & self.all,
            _ => !dom2 & self.all,
        };
        for v in 0..self.rows.len() {
            let row = self.rows[v];
            if played >> v & 1 == 1 || row & open == 0 {
                continue;
            }
            let r = self.best(played | 1 << v, dom1 | row, dom2 | (dom1 & row));
            if r != INFEASIBLE && (best == INFEASIBLE || r > best) {
                best = r;
                choice = v as u8;
            }
        }
        self.memo.put(played, (best, choice));
        best
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.closed_neighborhood(v).low_word()).collect()
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

/// `k`-subsets of `0..n` as bitmasks in increasing numeric order.
struct Combinations {
    next: Option<u64>,
    limit: u64,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let next = if k > n {
            None
        } else {
            Some(full_mask(k))
        };
        Self { next, limit: full_mask(n) }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt & !self.limit == 0 && nxt > cur).then_some(nxt)
            }
        };
        Some(cur)
    }
}
