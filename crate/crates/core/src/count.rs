//! Counting connected induced subgraphs.
//!
//! `N(G)` is the number of nonempty vertex subsets that induce a connected
//! subgraph; the rooted count `N(G)_u` restricts to subsets containing `u`.
//! Two independent algorithms are provided: a sweep over all `2^n` subsets,
//! and an output-sensitive expansion that grows each connected set from its
//! minimum vertex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{self, BuildError, FamilyId};
use crate::graph::{Graph, VertexSet, MAX_ORDER};

/// Largest order the subset sweep accepts.
pub const ORACLE_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("subset sweep supports order at most {ORACLE_MAX_ORDER}, got {0}")]
    OrderAboveBudget(usize),
    #[error("vertex {vertex} is not below order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("expansion aborted after {0} connected sets")]
    NodeLimit(u64),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "subset-oracle")]
    SubsetOracle,
    #[serde(rename = "expansion")]
    Expansion,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SubsetOracle => "subset-oracle",
            Algorithm::Expansion => "expansion",
        }
    }
}

/// Total and per-vertex counts of connected induced subgraphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CisCount {
    pub total: u64,
    pub per_vertex: Vec<u64>,
    pub algorithm: Algorithm,
}

impl CisCount {
    /// Same numbers, regardless of which algorithm produced them.
    pub fn agrees_with(&self, other: &CisCount) -> bool {
        self.total == other.total && self.per_vertex == other.per_vertex
    }
}

fn check_oracle_budget(g: &Graph) -> Result<(), CountError> {
    if g.order() > ORACLE_MAX_ORDER {
        Err(CountError::OrderAboveBudget(g.order()))
    } else {
        Ok(())
    }
}

/// Tests every nonempty subset for induced connectivity.
pub fn count_subset_oracle(g: &Graph) -> Result<CisCount, CountError> {
    check_oracle_budget(g)?;
    let n = g.order();
    let mut total = 0u64;
    let mut per_vertex = vec![0u64; n];
    for bits in 1..(1u32 << n) {
        let s = VertexSet::from_bits(bits);
        if g.induced_is_connected(s) {
            total += 1;
            for v in s {
                per_vertex[v] += 1;
            }
        }
    }
    Ok(CisCount { total, per_vertex, algorithm: Algorithm::SubsetOracle })
}

/// Total count only, by subset sweep.
pub fn total_subset_oracle(g: &Graph) -> Result<u64, CountError> {
    check_oracle_budget(g)?;
    Ok((1..(1u32 << g.order()))
        .filter(|&bits| g.induced_is_connected(VertexSet::from_bits(bits)))
        .count() as u64)
}

struct Expander<'a> {
    rows: &'a [u32],
    total: u64,
    per_vertex: [u64; MAX_ORDER],
    track_vertices: bool,
    limit: u64,
}

impl Expander<'_> {
    /// `ext` is the neighborhood of `set` minus `set` and `forbidden`,
    /// restricted to vertices above the root.
    fn grow(&mut self, set: u32, mut ext: u32, mut forbidden: u32, allowed: u32) -> Result<(), u64> {
        self.total += 1;
        if self.total > self.limit {
            return Err(self.limit);
        }
        if self.track_vertices {
            let mut s = set;
            while s != 0 {
                self.per_vertex[s.trailing_zeros() as usize] += 1;
                s &= s - 1;
            }
        }
        while ext != 0 {
            let v = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let child = set | 1 << v;
            let child_ext = (ext | self.rows[v]) & allowed & !child & !forbidden;
            self.grow(child, child_ext, forbidden, allowed)?;
            forbidden |= 1 << v;
        }
        Ok(())
    }
}

/// Expansion count with an optional cap on the number of enumerated sets.
pub fn count_expansion_limited(g: &Graph, limit: Option<u64>) -> Result<CisCount, CountError> {
    let n = g.order();
    let mut ex = Expander {
        rows: g.rows(),
        total: 0,
        per_vertex: [0; MAX_ORDER],
        track_vertices: true,
        limit: limit.unwrap_or(u64::MAX),
    };
    for root in 0..n {
        let allowed = g.vertices().bits() & !((2u64 << root) - 1) as u32;
        let ext = g.neighbors(root).bits() & allowed;
        ex.grow(1 << root, ext, 0, allowed).map_err(CountError::NodeLimit)?;
    }
    Ok(CisCount {
        total: ex.total,
        per_vertex: ex.per_vertex[..n].to_vec(),
        algorithm: Algorithm::Expansion,
    })
}

/// Enumerates each connected set exactly once, rooted at its minimum vertex.
pub fn count_expansion(g: &Graph) -> CisCount {
    count_expansion_limited(g, None).expect("no limit set")
}

/// Total count by expansion, skipping per-vertex bookkeeping.
pub fn total_expansion(g: &Graph) -> u64 {
    let mut ex = Expander {
        rows: g.rows(),
        total: 0,
        per_vertex: [0; MAX_ORDER],
        track_vertices: false,
        limit: u64::MAX,
    };
    for root in 0..g.order() {
        let allowed = g.vertices().bits() & !((2u64 << root) - 1) as u32;
        let ext = g.neighbors(root).bits() & allowed;
        let _ = ex.grow(1 << root, ext, 0, allowed);
    }
    ex.total
}

/// `N(G)_u` by sweeping the subsets that contain `u`.
pub fn count_rooted(g: &Graph, u: usize) -> Result<u64, CountError> {
    let n = g.order();
    if u >= n {
        return Err(CountError::VertexOutOfRange { vertex: u, order: n });
    }
    check_oracle_budget(g)?;
    let low = (1u32 << u) - 1;
    let mut count = 0;
    for t in 0..(1u32 << (n - 1)) {
        // spread t around bit u
        let bits = (t & low) | ((t & !low) << 1) | (1 << u);
        if g.induced_is_connected(VertexSet::from_bits(bits)) {
            count += 1;
        }
    }
    Ok(count)
}

#[inline]
fn pow2(k: usize) -> u64 {
    1u64.checked_shl(k as u32).expect("order cap keeps powers of two in range")
}

/// `N` of a named family member by formula.
///
/// The subdivided star `J_{n,n-2}` has no formula here; it is built and counted
/// by the subset sweep.
pub fn closed_form(family: FamilyId, n: usize, param: usize) -> Result<u64, CountError> {
    // reuse the builders' parameter validation
    constructions::validate(family, n, param)?;
    let value = match family {
        FamilyId::Complete => pow2(n) - 1,
        FamilyId::Path => (n * (n + 1) / 2) as u64,
        FamilyId::Cycle => (n * (n - 1) + 1) as u64,
        FamilyId::Star => pow2(n - 1) + (n - 1) as u64,
        FamilyId::MinDegG => pow2(n) - pow2(n - 1 - param),
        FamilyId::SplitH => (pow2(n - param) - 1) * pow2(param) + param as u64,
        FamilyId::TuranT => {
            let inside: u64 = constructions::turan_part_sizes(n, param)
                .into_iter()
                .map(|k| pow2(k) - k as u64 - 1)
                .sum();
            pow2(n) - 1 - inside
        }
        FamilyId::BridgeJ if param + 2 == n && param > 0 => {
            return total_subset_oracle(&constructions::build_j(n, param)?);
        }
        FamilyId::BridgeJ => {
            let b = param;
            (pow2(n - b) - 1) + b as u64 + (pow2(b) - 1) * pow2(n - b - 1)
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges.iter().copied()).unwrap()
    }

    fn k(n: usize) -> Graph {
        Graph::empty(n).unwrap().complement()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(count_subset_oracle(&k(4)).unwrap().total, 15);
        assert_eq!(count_subset_oracle(&graph(3, &[(0, 1), (1, 2)])).unwrap().total, 6);
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(count_subset_oracle(&c4).unwrap().total, 13);
        assert_eq!(count_subset_oracle(&Graph::empty(25).unwrap()), Err(CountError::OrderAboveBudget(25)));
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(count_expansion(&k(4)).total, 15);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let c = count_expansion(&star);
        assert_eq!(c.total, 11);
        assert_eq!(c.per_vertex, vec![8, 5, 5, 5]);
        assert!(c.agrees_with(&count_subset_oracle(&star).unwrap()));
        let g52 = graph(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1)]);
        assert_eq!(count_expansion(&g52).total, 28);
        assert_eq!(total_expansion(&g52), 28);
    }

    #[test]
    fn node_limit_aborts() {
        let dense = k(20);
        assert_eq!(count_expansion_limited(&dense, Some(1000)), Err(CountError::NodeLimit(1000)));
        let full = k(32);
        assert!(count_expansion_limited(&full, Some(10)).is_err());
    }

    #[test]
    fn rooted_examples() {
        let g52 = graph(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1)]);
        assert_eq!(count_rooted(&g52, 4).unwrap(), 13);
        for u in 0..6 {
            assert_eq!(count_rooted(&k(6), u).unwrap(), 32);
        }
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(count_rooted(&p3, 0).unwrap(), 3);
        assert!(matches!(count_rooted(&p3, 3), Err(CountError::VertexOutOfRange { .. })));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(FamilyId::MinDegG, 5, 2).unwrap(), 28);
        assert_eq!(closed_form(FamilyId::SplitH, 5, 2).unwrap(), 30);
        assert_eq!(closed_form(FamilyId::TuranT, 4, 2).unwrap(), 13);
        assert_eq!(closed_form(FamilyId::Complete, 6, 0).unwrap(), 63);
        assert_eq!(closed_form(FamilyId::BridgeJ, 6, 2).unwrap(), 41);
        assert_eq!(closed_form(FamilyId::Path, 5, 0).unwrap(), 15);
        assert_eq!(closed_form(FamilyId::Cycle, 5, 0).unwrap(), 21);
        assert!(closed_form(FamilyId::MinDegG, 5, 4).is_err());
        assert!(closed_form(FamilyId::Cycle, 2, 0).is_err());
    }

    #[test]
    fn count_json_shape() {
        let v = serde_json::to_value(count_expansion(&k(2))).unwrap();
        assert_eq!(v, serde_json::json!({"total": 3, "per_vertex": [2, 2], "algorithm": "expansion"}));
    }
}
