//! Builders for the named extremal families.
//!
//! Labeling is fixed so graph6 output is stable: clique vertices come first,
//! special vertices (the added vertex of `G`, the independent side of `H`,
//! the pendant leaves of `J`) come last.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{family}: parameter {param} invalid for order {n} ({allowed})")]
    Parameter { family: FamilyId, n: usize, param: usize, allowed: &'static str },
    #[error("{family}: order {n} invalid ({allowed})")]
    Order { family: FamilyId, n: usize, allowed: &'static str },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("gluing part {0} must have at least two vertices")]
    TrivialPart(&'static str),
    #[error("gluing part {0} must be connected")]
    DisconnectedPart(&'static str),
    #[error("anchor {anchor} of part {part} is out of range")]
    Anchor { part: &'static str, anchor: usize },
    #[error("anchors u and v of the middle part must differ")]
    SameAnchors,
    #[error("glued graph would have {0} vertices")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The named families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    Complete,
    Path,
    Cycle,
    Star,
    /// `G_{n,d}`: `K_{n-1}` plus a vertex joined to `d` of its vertices.
    MinDegG,
    /// `H_{n,a}`: `K_{n-a}` completely joined to `a` independent vertices.
    SplitH,
    /// `T_{n,l}`: the balanced complete `l`-partite graph.
    TuranT,
    /// `J_{n,b}`: `K_{n-b}` with `b` pendant leaves at one vertex, or the
    /// subdivided star when `b = n - 2`.
    BridgeJ,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::Complete,
        FamilyId::Path,
        FamilyId::Cycle,
        FamilyId::Star,
        FamilyId::MinDegG,
        FamilyId::SplitH,
        FamilyId::TuranT,
        FamilyId::BridgeJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Complete => "complete",
            FamilyId::Path => "path",
            FamilyId::Cycle => "cycle",
            FamilyId::Star => "star",
            FamilyId::MinDegG => "mindeg-g",
            FamilyId::SplitH => "split-h",
            FamilyId::TuranT => "turan-t",
            FamilyId::BridgeJ => "bridge-j",
        }
    }

    /// Whether the builder reads the parameter.
    pub fn takes_param(self) -> bool {
        matches!(self, FamilyId::MinDegG | FamilyId::SplitH | FamilyId::TuranT | FamilyId::BridgeJ)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = BuildError;
    fn from_str(s: &str) -> Result<Self, BuildError> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| BuildError::UnknownFamily(s.to_string()))
    }
}

/// Checks the parameter range of a family member without building it.
pub fn validate(family: FamilyId, n: usize, param: usize) -> Result<(), BuildError> {
    let order = |allowed| Err(BuildError::Order { family, n, allowed });
    let parameter = |allowed| Err(BuildError::Parameter { family, n, param, allowed });
    if n == 0 || n > MAX_ORDER {
        return order("1 <= n <= 32");
    }
    match family {
        FamilyId::Complete | FamilyId::Path | FamilyId::Star => Ok(()),
        FamilyId::Cycle if n < 3 => order("cycles need n >= 3"),
        FamilyId::Cycle => Ok(()),
        FamilyId::MinDegG if n < 2 || param > n - 2 => parameter("0 <= delta <= n - 2"),
        FamilyId::SplitH if param == 0 || param > n => parameter("1 <= alpha <= n"),
        FamilyId::TuranT if param == 0 || param > n => parameter("1 <= l <= n"),
        FamilyId::BridgeJ if n < 2 || param > n - 2 => parameter("0 <= b <= n - 2"),
        _ => Ok(()),
    }
}

fn clique_rows(rows: &mut [u32; MAX_ORDER], members: std::ops::Range<usize>) {
    let mask = members.clone().fold(0u32, |m, v| m | 1 << v);
    for v in members {
        rows[v] |= mask & !(1 << v);
    }
}

fn join(rows: &mut [u32; MAX_ORDER], a: usize, b: usize) {
    rows[a] |= 1 << b;
    rows[b] |= 1 << a;
}

pub fn build_complete(n: usize) -> Result<Graph, BuildError> {
    validate(FamilyId::Complete, n, 0)?;
    let mut rows = [0; MAX_ORDER];
    clique_rows(&mut rows, 0..n);
    Ok(Graph::from_rows(n, &rows))
}

/// Named basic graphs: paths and cycles follow index order, stars are centered at 0.
pub fn build_basic(family: FamilyId, n: usize) -> Result<Graph, BuildError> {
    validate(family, n, 0)?;
    let mut rows = [0; MAX_ORDER];
    match family {
        FamilyId::Complete => clique_rows(&mut rows, 0..n),
        FamilyId::Path => (1..n).for_each(|v| join(&mut rows, v - 1, v)),
        FamilyId::Cycle => (0..n).for_each(|v| join(&mut rows, v, (v + 1) % n)),
        FamilyId::Star => (1..n).for_each(|v| join(&mut rows, 0, v)),
        other => {
            return Err(BuildError::UnknownFamily(format!("{other} is not a basic family")));
        }
    }
    Ok(Graph::from_rows(n, &rows))
}

/// `G_{n,delta}`: vertices `0..n-1` form `K_{n-1}`, vertex `n-1` is joined to `0..delta`.
/// `delta = 0` gives `K_{n-1}` plus an isolated vertex.
pub fn build_g(n: usize, delta: usize) -> Result<Graph, BuildError> {
    validate(FamilyId::MinDegG, n, delta)?;
    let mut rows = [0; MAX_ORDER];
    clique_rows(&mut rows, 0..n - 1);
    for v in 0..delta {
        join(&mut rows, v, n - 1);
    }
    Ok(Graph::from_rows(n, &rows))
}

/// `H_{n,alpha}`: clique on `0..n-alpha`, independent vertices `n-alpha..n`.
/// `alpha = n` gives the edgeless graph.
pub fn build_h(n: usize, alpha: usize) -> Result<Graph, BuildError> {
    validate(FamilyId::SplitH, n, alpha)?;
    let k = n - alpha;
    let mut rows = [0; MAX_ORDER];
    clique_rows(&mut rows, 0..k);
    for a in 0..k {
        for b in k..n {
            join(&mut rows, a, b);
        }
    }
    Ok(Graph::from_rows(n, &rows))
}

/// Part sizes of `T_{n,l}`, larger parts first.
pub fn turan_part_sizes(n: usize, l: usize) -> Vec<usize> {
    (0..l).map(|i| n / l + usize::from(i < n % l)).collect()
}

/// `T_{n,l}` with parts as contiguous index blocks, larger parts first.
pub fn build_t(n: usize, l: usize) -> Result<Graph, BuildError> {
    validate(FamilyId::TuranT, n, l)?;
    let mut part = [0usize; MAX_ORDER];
    let mut v = 0;
    for (p, size) in turan_part_sizes(n, l).into_iter().enumerate() {
        part[v..v + size].fill(p);
        v += size;
    }
    let mut rows = [0; MAX_ORDER];
    for a in 0..n {
        for b in a + 1..n {
            if part[a] != part[b] {
                join(&mut rows, a, b);
            }
        }
    }
    Ok(Graph::from_rows(n, &rows))
}

/// `J_{n,b}`.
///
/// For `b < n - 2`: `K_{n-b}` on `0..n-b` with leaves `n-b..n` hanging from vertex 0.
/// For `b = n - 2 > 0`: the star with center 0 and leaves `1..n-1`, whose
/// edge `0-(n-2)` is subdivided by vertex `n-1`. That graph is a tree, so it
/// has `n - 1` bridges (and `n - 2` pendant vertices).
pub fn build_j(n: usize, b: usize) -> Result<Graph, BuildError> {
    validate(FamilyId::BridgeJ, n, b)?;
    let mut rows = [0; MAX_ORDER];
    if b + 2 == n && b > 0 {
        for leaf in 1..n - 2 {
            join(&mut rows, 0, leaf);
        }
        join(&mut rows, 0, n - 1);
        join(&mut rows, n - 1, n - 2);
    } else {
        clique_rows(&mut rows, 0..n - b);
        for leaf in n - b..n {
            join(&mut rows, 0, leaf);
        }
    }
    Ok(Graph::from_rows(n, &rows))
}

/// Family member by id; basic families ignore `param`.
pub fn build(family: FamilyId, n: usize, param: usize) -> Result<Graph, BuildError> {
    match family {
        FamilyId::MinDegG => build_g(n, param),
        FamilyId::SplitH => build_h(n, param),
        FamilyId::TuranT => build_t(n, param),
        FamilyId::BridgeJ => build_j(n, param),
        basic => build_basic(basic, n),
    }
}

/// One part of a gluing: a graph and the vertex that gets identified.
#[derive(Debug, Clone, Copy)]
pub struct Anchored<'a> {
    pub graph: &'a Graph,
    pub anchor: usize,
}

/// The three graphs of the two-branch gluing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Glued {
    /// `l` identified with `u`, `r` identified with `v`.
    pub g: Graph,
    /// Both `l` and `r` identified with `u`.
    pub g_prime: Graph,
    /// Both `l` and `r` identified with `v`.
    pub g_second: Graph,
}

fn check_part(name: &'static str, g: &Graph, anchor: usize) -> Result<(), BuildError> {
    if g.order() < 2 {
        return Err(BuildError::TrivialPart(name));
    }
    if !g.is_connected() {
        return Err(BuildError::DisconnectedPart(name));
    }
    if anchor >= g.order() {
        return Err(BuildError::Anchor { part: name, anchor });
    }
    Ok(())
}

/// Places `part` after `offset`, sending its anchor to `target` and the other
/// vertices to consecutive indices from `offset`. Parallel edges collapse.
fn attach(rows: &mut [u32; MAX_ORDER], part: Anchored<'_>, target: usize, offset: usize) {
    let map = |x: usize| match x.cmp(&part.anchor) {
        std::cmp::Ordering::Equal => target,
        std::cmp::Ordering::Less => offset + x,
        std::cmp::Ordering::Greater => offset + x - 1,
    };
    for e in part.graph.edges() {
        join(rows, map(e.u), map(e.v));
    }
}

/// Builds `G`, `G'` and `G''`.
///
/// Vertex layout: `M` keeps its labels `0..|M|`, then the non-anchor vertices
/// of `L` in order, then those of `R`.
pub fn glue_lemma_graphs(
    left: Anchored<'_>,
    middle: &Graph,
    u: usize,
    v: usize,
    right: Anchored<'_>,
) -> Result<Glued, BuildError> {
    check_part("L", left.graph, left.anchor)?;
    check_part("R", right.graph, right.anchor)?;
    check_part("M", middle, u)?;
    check_part("M", middle, v)?;
    if u == v {
        return Err(BuildError::SameAnchors);
    }
    let m = middle.order();
    let n = m + left.graph.order() + right.graph.order() - 2;
    if n > MAX_ORDER {
        return Err(BuildError::TooLarge(n));
    }
    let left_offset = m;
    let right_offset = m + left.graph.order() - 1;
    let make = |l_target: usize, r_target: usize| {
        let mut rows = [0u32; MAX_ORDER];
        rows[..m].copy_from_slice(middle.rows());
        attach(&mut rows, left, l_target, left_offset);
        attach(&mut rows, right, r_target, right_offset);
        Graph::from_rows(n, &rows)
    };
    Ok(Glued { g: make(u, v), g_prime: make(u, u), g_second: make(v, v) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::count::total_subset_oracle;
    use crate::invariants::{self, bridge_count};

    #[test]
    fn g_examples() {
        let g = build_g(5, 2).unwrap();
        assert_eq!(invariants::min_degree(&g), 2);
        assert_eq!(invariants::vertex_connectivity(&g), 2);
        assert_eq!(invariants::edge_connectivity(&g), 2);
        let k4_minus = build_complete(4).unwrap().without_edge(2, 3).unwrap();
        assert!(is_isomorphic(&build_g(4, 2).unwrap(), &k4_minus).unwrap());
        let g60 = build_g(6, 0).unwrap();
        assert_eq!(g60.component_count(), 2);
        assert_eq!(g60.edge_count(), 10);
        assert!(build_g(5, 4).is_err());
        assert_eq!(build_g(5, 2).unwrap().delete_vertex(4).unwrap(), build_complete(4).unwrap());
    }

    #[test]
    fn h_examples() {
        let h = build_h(5, 2).unwrap();
        assert_eq!(invariants::independence_number(&h), 2);
        assert_eq!(total_subset_oracle(&h).unwrap(), 30);
        assert_eq!(build_h(6, 1).unwrap(), build_complete(6).unwrap());
        assert!(is_isomorphic(&build_h(4, 3).unwrap(), &build_basic(FamilyId::Star, 4).unwrap()).unwrap());
        assert_eq!(build_h(4, 4).unwrap().edge_count(), 0);
        assert!(build_h(4, 5).is_err());
        assert!(build_h(4, 0).is_err());
        assert_eq!(invariants::independence_number(&build_h(6, 3).unwrap()), 3);
    }

    #[test]
    fn t_examples() {
        let c4 = build_basic(FamilyId::Cycle, 4).unwrap();
        assert!(is_isomorphic(&build_t(4, 2).unwrap(), &c4).unwrap());
        assert_eq!(build_t(6, 6).unwrap(), build_complete(6).unwrap());
        assert_eq!(turan_part_sizes(7, 3), vec![3, 2, 2]);
        let t73 = build_t(7, 3).unwrap();
        assert_eq!(invariants::chromatic_number(&t73).unwrap(), 3);
        assert_eq!(t73.edge_count(), 7 * 6 / 2 - 3 - 1 - 1);
        assert!(build_t(3, 4).is_err());
    }

    #[test]
    fn j_examples() {
        let j = build_j(6, 2).unwrap();
        assert_eq!(bridge_count(&j), 2);
        assert_eq!(total_subset_oracle(&j).unwrap(), 41);
        assert_eq!(build_j(5, 1).unwrap(), build_g(5, 1).unwrap());
        let p4 = build_basic(FamilyId::Path, 4).unwrap();
        assert!(is_isomorphic(&build_j(4, 2).unwrap(), &p4).unwrap());
        assert_eq!(bridge_count(&build_j(6, 4).unwrap()), 5);
        assert_eq!(build_j(5, 0).unwrap(), build_complete(5).unwrap());
        assert!(build_j(5, 4).is_err());
    }

    #[test]
    fn basic_examples() {
        assert_eq!(total_subset_oracle(&build_basic(FamilyId::Path, 5).unwrap()).unwrap(), 15);
        assert_eq!(total_subset_oracle(&build_basic(FamilyId::Cycle, 5).unwrap()).unwrap(), 21);
        assert_eq!(build_basic(FamilyId::Complete, 3).unwrap(), build_basic(FamilyId::Cycle, 3).unwrap());
        assert!(build_basic(FamilyId::Cycle, 2).is_err());
        assert!(build_basic(FamilyId::TuranT, 4).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in FamilyId::ALL {
            assert_eq!(f.name().parse::<FamilyId>().unwrap(), f);
        }
        assert!("petersen".parse::<FamilyId>().is_err());
    }

    #[test]
    fn glue_edges() {
        let k2 = build_complete(2).unwrap();
        let a = |g| Anchored { graph: g, anchor: 0 };
        let glued = glue_lemma_graphs(a(&k2), &k2, 0, 1, a(&k2)).unwrap();
        let p4 = build_basic(FamilyId::Path, 4).unwrap();
        let s4 = build_basic(FamilyId::Star, 4).unwrap();
        assert!(is_isomorphic(&glued.g, &p4).unwrap());
        assert!(is_isomorphic(&glued.g_prime, &s4).unwrap());
        assert!(is_isomorphic(&glued.g_second, &s4).unwrap());
        assert_eq!(total_subset_oracle(&glued.g).unwrap(), 10);
        assert_eq!(total_subset_oracle(&glued.g_prime).unwrap(), 11);

        let k3 = build_complete(3).unwrap();
        let glued = glue_lemma_graphs(a(&k3), &k2, 0, 1, a(&k2)).unwrap();
        assert_eq!([glued.g.order(), glued.g_prime.order(), glued.g_second.order()], [5, 5, 5]);
    }

    #[test]
    fn glue_rejects_bad_parts() {
        let k1 = build_complete(1).unwrap();
        let k2 = build_complete(2).unwrap();
        let two = Graph::empty(2).unwrap();
        let a = |g| Anchored { graph: g, anchor: 0 };
        assert!(matches!(glue_lemma_graphs(a(&k1), &k2, 0, 1, a(&k2)), Err(BuildError::TrivialPart("L"))));
        assert!(matches!(glue_lemma_graphs(a(&k2), &two, 0, 1, a(&k2)), Err(BuildError::DisconnectedPart("M"))));
        assert!(matches!(glue_lemma_graphs(a(&k2), &k2, 1, 1, a(&k2)), Err(BuildError::SameAnchors)));
        let bad = Anchored { graph: &k2, anchor: 2 };
        assert!(matches!(glue_lemma_graphs(a(&k2), &k2, 0, 1, bad), Err(BuildError::Anchor { .. })));
    }
}
