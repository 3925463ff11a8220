//! General bounds on the Grundy double domination number and the
//! characterization of graphs where it is 2 or 3.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::Oracle;
use crate::sequence::{footprint, move_after, p_set_in, VertexSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// `⌈2n / (Δ + 1)⌉`
    pub spherical_lower: usize,
    pub gamma_x2: usize,
    pub gddn: usize,
    /// `n + 1 - δ`
    pub upper: usize,
    pub grundy: usize,
    pub grundy_lower: usize,
    pub grundy_upper: usize,
}

impl BoundReport {
    /// `⌈2n/(Δ+1)⌉ ≤ γ×2 ≤ GDDN ≤ n + 1 - δ`
    pub fn sandwich_holds(&self) -> bool {
        self.spherical_lower <= self.gamma_x2 && self.gamma_x2 <= self.gddn && self.gddn <= self.upper
    }

    /// `γ_gr + 1 ≤ GDDN ≤ 2 γ_gr`
    pub fn grundy_chain_holds(&self) -> bool {
        self.grundy_lower <= self.gddn && self.gddn <= self.grundy_upper
    }
}

/// Values the caller already knows; missing ones are computed by the oracle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KnownValues {
    pub gamma_x2: Option<usize>,
    pub grundy: Option<usize>,
    pub gddn: Option<usize>,
}

pub fn bound_report(g: &Graph, known: KnownValues, oracle: &Oracle) -> Result<BoundReport> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(v));
    }
    let profile = g.degree_profile();
    let n = g.n();
    let gamma_x2 = match known.gamma_x2 {
        Some(x) => x,
        None => oracle.double_domination(g)?.value,
    };
    let gddn = match known.gddn {
        Some(x) => x,
        None => oracle.gddn(g)?.value,
    };
    let grundy = match known.grundy {
        Some(x) => x,
        None => oracle.grundy_domination(g)?.value,
    };
    Ok(BoundReport {
        spherical_lower: (2 * n).div_ceil(profile.max_degree + 1),
        gamma_x2,
        gddn,
        upper: n + 1 - profile.min_degree,
        grundy,
        grundy_lower: grundy + 1,
        grundy_upper: 2 * grundy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SmallGddn {
    Two,
    Three,
    Other,
}

/// Decides whether the GDDN of a connected isolated-free graph is 2, 3, or
/// larger. Value 3 holds exactly for non-complete graphs whose vertices all
/// have degree at least `n - 2`.
pub fn classify_small_gddn(g: &Graph) -> Result<SmallGddn> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall("at least two vertices required"));
    }
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(v));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_complete() {
        Ok(SmallGddn::Two)
    } else if (0..n).all(|v| g.degree(v) + 2 >= n) {
        Ok(SmallGddn::Three)
    } else {
        Ok(SmallGddn::Other)
    }
}

/// Rewrites a DDS with `u → v` moves until no `P_S(u)` has two or more
/// members. Each move picks the member of largest order, which strictly
/// grows `S^1`, so the loop ends with `|S^1| ≥ |S^2|`.
pub fn rebalance_levels(g: &Graph, seq: &[usize]) -> Result<VertexSeq> {
    let mut current = VertexSeq::new(seq.to_vec())?;
    loop {
        let cert = footprint(g, &current)?;
        if let Some(step) = cert.first_illegal {
            return Err(Error::NotDns { step });
        }
        let mut rewrite = None;
        for u in cert.first_level() {
            let p = p_set_in(&cert, u)?;
            if p.len() >= 2 {
                // p is in sequence order, so the last entry has maximum order
                rewrite = Some((u, *p.last().unwrap()));
                break;
            }
        }
        match rewrite {
            Some((u, v)) => current = move_after(&current, u, v)?,
            None => return Ok(current),
        }
    }
}

/// A GDDS whose first level is at least as long as its second level.
pub fn s1_majority_witness(g: &Graph, oracle: &Oracle) -> Result<VertexSeq> {
    let gdds = oracle.gddn(g)?;
    rebalance_levels(g, &gdds.witness)
}
