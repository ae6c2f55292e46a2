//! Small simple graphs stored as one neighbor bitmask per vertex.
//!
//! Every graph here has at most [`MAX_ORDER`] vertices, so a vertex subset
//! always fits in a single `u32`. All operations are pure; a [`Graph`] is an
//! immutable `Copy` value once built.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("edge endpoint {vertex} is not below order {order}")]
    EndpointOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} is not below order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("cannot delete the only vertex of a graph")]
    SingleVertex,
    #[error("edge mask uses bits beyond the {pairs} vertex pairs of order {order}")]
    MaskOutOfRange { order: usize, pairs: usize },
}

/// A set of vertices of one host graph, as a bitmask over `0..order`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u32 << v)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 32 && self.0 & (1u32 << v) != 0
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u32 << v))
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u32 << v))
    }

    /// Smallest member, if any.
    #[inline]
    pub const fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Loops are rejected later by the graph builder.
    pub fn new(a: usize, b: usize) -> Self {
        Edge { u: a.min(b), v: a.max(b) }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

/// Number of vertex pairs of an order-`n` graph.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of pair `(i, j)`, `i < j`, in the column-major upper triangle
/// `(0,1), (0,2), (1,2), (0,3), ..`; this is the graph6 bit order.
#[inline]
pub const fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// A simple undirected graph on vertices `0..order`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    order: u8,
    adj: [u32; MAX_ORDER],
}

impl Graph {
    /// The edgeless graph of order `n`.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph { order: n as u8, adj: [0; MAX_ORDER] })
    }

    /// Builds a graph from an explicit edge list, rejecting loops, duplicates
    /// and endpoints outside `0..n`.
    pub fn from_edge_list<E>(n: usize, edges: impl IntoIterator<Item = E>) -> Result<Self, GraphError>
    where
        E: Into<Edge>,
    {
        let mut g = Graph::empty(n)?;
        for e in edges {
            let e: Edge = e.into();
            if e.v >= n {
                return Err(GraphError::EndpointOutOfRange { vertex: e.v, order: n });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            if g.has_edge(e.u, e.v) {
                return Err(GraphError::DuplicateEdge(e));
            }
            g.adj[e.u] |= 1 << e.v;
            g.adj[e.v] |= 1 << e.u;
        }
        g.debug_check();
        Ok(g)
    }

    /// Decodes an edge mask whose bit `pair_index(i, j)` marks edge `ij`.
    /// Needs `C(n, 2) <= 64`, i.e. `n <= 11`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let pairs = pair_count(n);
        if n == 0 || pairs > 64 {
            return Err(GraphError::OrderOutOfRange(n));
        }
        if pairs < 64 && mask >> pairs != 0 {
            return Err(GraphError::MaskOutOfRange { order: n, pairs });
        }
        Ok(Self::from_edge_mask_unchecked(n, mask))
    }

    #[inline]
    pub(crate) fn from_edge_mask_unchecked(n: usize, mut mask: u64) -> Self {
        let mut adj = [0u32; MAX_ORDER];
        let mut j = 1;
        let mut i = 0;
        while mask != 0 {
            if mask & 1 != 0 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            mask >>= 1;
            i += 1;
            if i == j {
                j += 1;
                i = 0;
            }
        }
        Graph { order: n as u8, adj }
    }

    /// The inverse of [`Graph::from_edge_mask`]; `None` when the order exceeds 11.
    pub fn edge_mask(&self) -> Option<u64> {
        let n = self.order();
        if pair_count(n) > 64 {
            return None;
        }
        let mut mask = 0u64;
        for e in self.edges() {
            mask |= 1 << pair_index(e.u, e.v);
        }
        Some(mask)
    }

    /// Builds from raw rows, asserting symmetry in debug builds.
    pub(crate) fn from_rows(n: usize, rows: &[u32]) -> Self {
        let mut adj = [0u32; MAX_ORDER];
        adj[..n].copy_from_slice(&rows[..n]);
        let g = Graph { order: n as u8, adj };
        g.debug_check();
        g
    }

    #[inline]
    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            let n = self.order();
            let full = VertexSet::full(n).bits();
            for i in 0..MAX_ORDER {
                let row = self.adj[i];
                debug_assert!(i < n || row == 0, "row {i} beyond order");
                debug_assert_eq!(row & !full, 0, "row {i} has bits beyond order");
                debug_assert_eq!(row >> i & 1, 0, "loop at {i}");
                for j in VertexSet::from_bits(row) {
                    debug_assert!(self.adj[j] >> i & 1 == 1, "asymmetric pair {i},{j}");
                }
            }
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// All vertices.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.order()]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.order()).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u) - 1) as u32).iter().map(move |v| Edge { u, v })
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        (0..n).all(|v| self.degree(v) == n - 1)
    }

    /// Copy with edge `uv` added (a no-op if already present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = *self;
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        Ok(g)
    }

    /// Copy with edge `uv` removed (a no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = *self;
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order() {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.order() })
        } else {
            Ok(())
        }
    }

    /// Removes `v`; vertices above it shift down by one, preserving order.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        if self.order() == 1 {
            return Err(GraphError::SingleVertex);
        }
        let n = self.order();
        let low = (1u32 << v) - 1;
        let mut adj = [0u32; MAX_ORDER];
        for (slot, &row) in adj.iter_mut().zip(self.adj[..n].iter().enumerate().filter(|&(i, _)| i != v).map(|(_, r)| r)) {
            *slot = (row & low) | ((row >> 1) & !low);
        }
        let g = Graph { order: (n - 1) as u8, adj };
        g.debug_check();
        Ok(g)
    }

    /// The subgraph induced by `s`, relabeled to `0..|s|` in increasing order.
    pub fn induced(&self, s: VertexSet) -> Result<Self, GraphError> {
        if s.is_empty() {
            return Err(GraphError::OrderOutOfRange(0));
        }
        let members: Vec<usize> = s.iter().collect();
        let mut rows = [0u32; MAX_ORDER];
        for (a, &x) in members.iter().enumerate() {
            for (b, &y) in members.iter().enumerate() {
                if self.has_edge(x, y) {
                    rows[a] |= 1 << b;
                }
            }
        }
        Ok(Graph::from_rows(members.len(), &rows))
    }

    /// Relabels so that old vertex `perm[i]` becomes new vertex `i`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..order`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length");
        let mut inverse = [usize::MAX; MAX_ORDER];
        for (new, &old) in perm.iter().enumerate() {
            assert!(old < n && inverse[old] == usize::MAX, "not a permutation");
            inverse[old] = new;
        }
        let mut rows = [0u32; MAX_ORDER];
        for (new, &old) in perm.iter().enumerate() {
            for nb in self.neighbors(old) {
                rows[new] |= 1 << inverse[nb];
            }
        }
        Graph::from_rows(n, &rows)
    }

    pub fn complement(&self) -> Self {
        let full = self.vertices().bits();
        let mut rows = [0u32; MAX_ORDER];
        for v in 0..self.order() {
            rows[v] = !self.adj[v] & full & !(1 << v);
        }
        Graph::from_rows(self.order(), &rows)
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    #[inline]
    pub fn reach_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let within = within.bits();
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    /// Whether the subgraph induced by `s` is connected.
    ///
    /// The empty set is never a counted subgraph, so it reports `false`.
    #[inline]
    pub fn induced_is_connected(&self, s: VertexSet) -> bool {
        debug_assert!(s.is_subset(self.vertices()));
        match s.min() {
            None => false,
            Some(v) => self.reach_within(v, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.induced_is_connected(self.vertices())
    }

    /// Connected components, each as a vertex set, sorted by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.reach_within(v, rest);
            out.push(c);
            rest = rest - c;
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order())?;
        for (k, e) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}
