//! Brute-force oracles for the integration and acceptance tests. Each one
//! follows the textbook definition directly and shares no code path with the
//! library routine it checks (only the graph accessors).

#![allow(dead_code)]

use std::collections::VecDeque;

use cis_core::graph::{Edge, Graph};

/// Components by plain BFS on an edge list.
pub fn bfs_components(n: usize, edges: &[Edge]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut seen = vec![false; n];
    let mut comps = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        comps += 1;
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    comps
}

pub fn edge_list(g: &Graph) -> Vec<Edge> {
    g.edges().collect()
}

/// Whether the vertices listed in `keep` induce a connected subgraph (BFS).
pub fn bfs_induced_connected(g: &Graph, keep: u32) -> bool {
    let verts: Vec<usize> = (0..g.order()).filter(|&v| keep >> v & 1 == 1).collect();
    if verts.is_empty() {
        return false;
    }
    let mut seen = 1u32 << verts[0];
    let mut q = VecDeque::from([verts[0]]);
    while let Some(x) = q.pop_front() {
        for &y in &verts {
            if seen >> y & 1 == 0 && g.has_edge(x, y) {
                seen |= 1 << y;
                q.push_back(y);
            }
        }
    }
    seen == keep
}

/// `N(G)` straight from the definition.
pub fn brute_cis(g: &Graph) -> u64 {
    (1u32..1 << g.order()).filter(|&s| bfs_induced_connected(g, s)).count() as u64
}

pub fn brute_independence(g: &Graph) -> usize {
    let n = g.order();
    (0u32..1 << n)
        .filter(|&s| g.edges().all(|e| !(s >> e.u & 1 == 1 && s >> e.v & 1 == 1)))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Smallest vertex set whose deletion leaves a disconnected graph; `n - 1`
/// when no such set exists.
pub fn brute_vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if bfs_components(n, &edge_list(g)) > 1 {
        return 0;
    }
    let full = (1u32 << n) - 1;
    (0u32..1 << n)
        .filter(|&s| {
            let rest = full & !s;
            rest.count_ones() >= 2 && !bfs_induced_connected(g, rest)
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(n - 1)
}

/// Smallest edge set whose deletion disconnects, by scanning edge subsets
/// in increasing size. Exponential in the edge count.
pub fn brute_edge_connectivity(g: &Graph) -> usize {
    let n = g.order();
    let edges = edge_list(g);
    if n == 1 {
        return 0;
    }
    if bfs_components(n, &edges) > 1 {
        return 0;
    }
    let m = edges.len();
    let mut best = m;
    for s in 0u64..1 << m {
        let k = s.count_ones() as usize;
        if k >= best {
            continue;
        }
        let rest: Vec<Edge> = (0..m).filter(|&i| s >> i & 1 == 0).map(|i| edges[i]).collect();
        if bfs_components(n, &rest) > 1 {
            best = k;
        }
    }
    best
}

/// Bridges by deleting each edge and recounting components.
pub fn brute_bridges(g: &Graph) -> Vec<Edge> {
    let edges = edge_list(g);
    let base = bfs_components(g.order(), &edges);
    edges
        .iter()
        .copied()
        .filter(|e| {
            let rest: Vec<Edge> = edges.iter().copied().filter(|f| f != e).collect();
            bfs_components(g.order(), &rest) > base
        })
        .collect()
}

/// Chromatic number by trying every assignment of `k` colors, `k = 1, 2, ..`.
pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.order();
    let edges = edge_list(g);
    for k in 1..=n {
        let total = (k as u64).pow(n as u32);
        let ok = (0..total).any(|code| {
            let mut c = vec![0u64; n];
            let mut x = code;
            for slot in c.iter_mut() {
                *slot = x % k as u64;
                x /= k as u64;
            }
            edges.iter().all(|e| c[e.u] != c[e.v])
        });
        if ok {
            return k;
        }
    }
    n
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().all(|e| b.has_edge(perm[e.u], perm[e.v])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn path(n: usize) -> Graph {
    Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}
