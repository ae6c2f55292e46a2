//! Exact structural parameters: minimum degree, independence and vertex cover
//! numbers, vertex and edge connectivity, chromatic number, bridges.
//!
//! Conventions: a disconnected graph has vertex and edge connectivity 0, and
//! a complete graph `K_n` has both equal to `n - 1` (it has no separating
//! vertex set). `K_1` therefore has connectivity 0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, VertexSet, MAX_ORDER};

/// Guard for the backtracking colorer.
pub const CHROMATIC_MAX_ORDER: usize = 20;
/// Guard for [`profile`].
pub const PROFILE_MAX_ORDER: usize = 10;
/// Up to this order the vertex connectivity uses the separator scan, above it max-flow.
const SEPARATOR_SCAN_MAX_ORDER: usize = 12;
/// Up to this order the edge connectivity enumerates vertex bipartitions.
const CUT_SCAN_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{what} supports order at most {max}, got {order}")]
    OrderAboveGuard { what: &'static str, max: usize, order: usize },
}

/// All constrained parameters of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub n: usize,
    pub min_degree: usize,
    pub independence: usize,
    pub vertex_cover: usize,
    pub vertex_connectivity: usize,
    pub edge_connectivity: usize,
    pub chromatic: usize,
    pub bridges: usize,
    pub components: usize,
}

pub fn min_degree(g: &Graph) -> usize {
    (0..g.order()).map(|v| g.degree(v)).min().unwrap_or(0)
}

fn max_independent_within(g: &Graph, cand: u32) -> usize {
    if cand == 0 {
        return 0;
    }
    // pivot on the vertex with most neighbors inside the candidates
    let mut pivot = 0;
    let mut pivot_deg = 0;
    let mut c = cand;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        let d = (g.neighbors(v).bits() & cand).count_ones();
        if d >= pivot_deg {
            pivot = v;
            pivot_deg = d;
        }
    }
    if pivot_deg == 0 {
        return cand.count_ones() as usize;
    }
    if pivot_deg == 1 {
        // a matching plus isolated vertices: one endpoint per edge
        let mut rest = cand;
        let mut count = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= !(1 << v) & !g.neighbors(v).bits();
            count += 1;
        }
        return count;
    }
    let with = 1 + max_independent_within(g, cand & !(1 << pivot) & !g.neighbors(pivot).bits());
    let without_cand = cand & !(1 << pivot);
    if without_cand.count_ones() as usize <= with {
        return with;
    }
    with.max(max_independent_within(g, without_cand))
}

/// Exact independence number by branch and bound over vertex bitmasks.
pub fn independence_number(g: &Graph) -> usize {
    max_independent_within(g, g.vertices().bits())
}

/// Vertex cover number via `beta = n - alpha`.
pub fn vertex_cover_number(g: &Graph) -> usize {
    g.order() - independence_number(g)
}

/// Calls `f` on every `k`-subset of `{0..n-1}` (as a bitmask) until it returns true.
fn any_k_subset(n: usize, k: usize, mut f: impl FnMut(u32) -> bool) -> bool {
    if k == 0 {
        return f(0);
    }
    if k > n {
        return false;
    }
    let limit = 1u64 << n;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        if f(s as u32) {
            return true;
        }
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    false
}

/// Minimum separator size by increasing-`k` subset scan.
pub fn vertex_connectivity_by_scan(g: &Graph) -> usize {
    let n = g.order();
    if !g.is_connected() {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    let full = g.vertices().bits();
    for k in 1..n - 1 {
        let cut = any_k_subset(n, k, |s| {
            let rest = VertexSet::from_bits(full & !s);
            !g.induced_is_connected(rest)
        });
        if cut {
            return k;
        }
    }
    unreachable!("a non-complete graph has a separator of size at most n - 2")
}

/// Unit-capacity max-flow on a dense graph of at most 64 nodes.
struct UnitFlow {
    size: usize,
    cap: Vec<[u8; 2 * MAX_ORDER]>,
}

impl UnitFlow {
    fn new(size: usize) -> Self {
        UnitFlow { size, cap: vec![[0; 2 * MAX_ORDER]; size] }
    }

    fn add(&mut self, a: usize, b: usize, c: u8) {
        self.cap[a][b] += c;
    }

    /// Augments until no path remains or `limit` units have been pushed.
    fn max_flow(mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut parent = vec![usize::MAX; self.size];
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            parent[s] = s;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for y in 0..self.size {
                    if parent[y] == usize::MAX && self.cap[x][y] > 0 {
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut y = t;
            while y != s {
                let x = parent[y];
                self.cap[x][y] -= 1;
                self.cap[y][x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths, `s`, `t` non-adjacent.
fn local_vertex_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.order();
    // vertex x splits into x_in = x and x_out = x + n
    let mut net = UnitFlow::new(2 * n);
    for x in 0..n {
        net.add(x, x + n, if x == s || x == t { n as u8 } else { 1 });
        for y in g.neighbors(x) {
            net.add(x + n, y, 1);
        }
    }
    net.max_flow(s + n, t, n)
}

/// Minimum separator size by vertex-split max-flow (Even's reduction).
pub fn vertex_connectivity_by_flow(g: &Graph) -> usize {
    let n = g.order();
    if !g.is_connected() {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    let mut best = n - 1;
    // some minimum separator misses one of the first best+1 vertices
    let mut i = 0;
    while i <= best && i < n {
        for j in 0..n {
            if j != i && !g.has_edge(i, j) {
                best = best.min(local_vertex_connectivity(g, i, j));
            }
        }
        i += 1;
    }
    best
}

pub fn vertex_connectivity(g: &Graph) -> usize {
    if g.order() <= SEPARATOR_SCAN_MAX_ORDER {
        vertex_connectivity_by_scan(g)
    } else {
        vertex_connectivity_by_flow(g)
    }
}

/// Global minimum cut by enumerating every bipartition with vertex 0 on one side.
pub fn edge_connectivity_by_cuts(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= CUT_SCAN_MAX_ORDER, "bipartition scan is exponential");
    if n == 1 {
        return 0;
    }
    let full = g.vertices().bits();
    let mut best = usize::MAX;
    // side always contains vertex 0 and misses at least one vertex
    for rest in 0..(1u32 << (n - 1)) - 1 {
        let side = rest << 1 | 1;
        let other = full & !side;
        let mut cut = 0;
        let mut s = side;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            cut += (g.neighbors(v).bits() & other).count_ones() as usize;
        }
        best = best.min(cut);
        if best == 0 {
            break;
        }
    }
    best
}

/// Global minimum cut as the smallest max-flow from vertex 0 to any other vertex.
pub fn edge_connectivity_by_flow(g: &Graph) -> usize {
    let n = g.order();
    if n == 1 {
        return 0;
    }
    let mut best = crate::invariants::min_degree(g);
    for t in 1..n {
        if best == 0 {
            break;
        }
        let mut net = UnitFlow::new(n);
        for e in g.edges() {
            net.add(e.u, e.v, 1);
            net.add(e.v, e.u, 1);
        }
        best = best.min(net.max_flow(0, t, best));
    }
    best
}

pub fn edge_connectivity(g: &Graph) -> usize {
    if g.order() <= CUT_SCAN_MAX_ORDER {
        edge_connectivity_by_cuts(g)
    } else {
        edge_connectivity_by_flow(g)
    }
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 0;
    for start in 0..g.order() {
        let mut clique = 1;
        let mut cand = g.neighbors(start).bits();
        while cand != 0 {
            // take the candidate with the most candidate neighbors
            let mut pick = cand.trailing_zeros() as usize;
            let mut pick_deg = 0;
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                let d = (g.neighbors(v).bits() & cand).count_ones();
                if d > pick_deg {
                    pick = v;
                    pick_deg = d;
                }
            }
            clique += 1;
            cand &= g.neighbors(pick).bits();
        }
        best = best.max(clique);
    }
    best
}

/// Greedy coloring in largest-degree-first order; returns the colors used.
fn greedy_colors(g: &Graph) -> usize {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut classes: Vec<u32> = Vec::new();
    for &v in &order {
        let nb = g.neighbors(v).bits();
        match classes.iter_mut().find(|c| **c & nb == 0) {
            Some(c) => *c |= 1 << v,
            None => classes.push(1 << v),
        }
    }
    classes.len()
}

struct Colorer<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    classes: Vec<u32>,
}

impl Colorer<'_> {
    fn extend(&mut self, idx: usize, used: usize, k: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        let nb = self.g.neighbors(v).bits();
        // a fresh color is only tried once, at index `used`
        for c in 0..(used + 1).min(k) {
            if self.classes[c] & nb == 0 {
                self.classes[c] |= 1 << v;
                let next_used = used.max(c + 1);
                if self.extend(idx + 1, next_used, k) {
                    return true;
                }
                self.classes[c] &= !(1 << v);
            }
        }
        false
    }
}

/// Whether `g` admits a proper coloring with `k` colors.
pub fn is_colorable(g: &Graph, k: usize) -> bool {
    if g.order() == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colorer = Colorer { g, order, classes: vec![0; k] };
    colorer.extend(0, 0, k)
}

/// Exact chromatic number: deepening from a greedy clique bound to a greedy
/// coloring bound.
pub fn chromatic_number(g: &Graph) -> Result<usize, InvariantError> {
    let n = g.order();
    if n > CHROMATIC_MAX_ORDER {
        return Err(InvariantError::OrderAboveGuard {
            what: "chromatic number",
            max: CHROMATIC_MAX_ORDER,
            order: n,
        });
    }
    let lower = greedy_clique(g);
    let upper = greedy_colors(g);
    for k in lower..upper {
        if is_colorable(g, k) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Bridges by depth-first lowpoints, in lexicographic order.
pub fn bridges(g: &Graph) -> Vec<Edge> {
    let n = g.order();
    let mut disc = [usize::MAX; MAX_ORDER];
    let mut low = [0usize; MAX_ORDER];
    let mut out = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // frames: (vertex, parent, unexplored neighbors)
        let mut stack: Vec<(usize, usize, u32)> = vec![(root, usize::MAX, g.neighbors(root).bits())];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent, rest) = *top;
            if rest != 0 {
                let w = rest.trailing_zeros() as usize;
                top.2 &= rest - 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, g.neighbors(w).bits()));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push(Edge::new(parent, v));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

pub fn bridge_count(g: &Graph) -> usize {
    bridges(g).len()
}

/// Computes every parameter and checks the Gallai and Whitney relations.
pub fn profile(g: &Graph) -> Result<InvariantProfile, InvariantError> {
    let n = g.order();
    if n > PROFILE_MAX_ORDER {
        return Err(InvariantError::OrderAboveGuard {
            what: "profile",
            max: PROFILE_MAX_ORDER,
            order: n,
        });
    }
    let independence = independence_number(g);
    let p = InvariantProfile {
        n,
        min_degree: min_degree(g),
        independence,
        vertex_cover: n - independence,
        vertex_connectivity: vertex_connectivity(g),
        edge_connectivity: edge_connectivity(g),
        chromatic: chromatic_number(g)?,
        bridges: bridge_count(g),
        components: g.component_count(),
    };
    debug_assert!(p.vertex_connectivity <= p.edge_connectivity);
    debug_assert!(p.edge_connectivity <= p.min_degree);
    debug_assert!(p.bridges < n);
    debug_assert_eq!(p.chromatic == n, g.is_complete());
    Ok(p)
}
