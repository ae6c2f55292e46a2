//! Canonical forms by exhaustive permutation search.
//!
//! The canonical form of a graph is the lexicographically smallest
//! upper-triangle bitstring (graph6 bit order) over all relabelings. The
//! search places vertices one position at a time; the bits of column `j`
//! are fixed once positions `0..=j` are, so any partial labeling whose
//! columns already exceed the best known prefix is cut.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

/// Factorial-scan guard.
pub const CANONICAL_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical form supports order at most {CANONICAL_MAX_ORDER}, got {0}")]
pub struct CanonError(pub usize);

/// Order byte followed by the big-endian packed minimal bitstring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{self:?}"))
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    perm: [usize; MAX_ORDER],
    best: [u32; MAX_ORDER],
    best_perm: [usize; MAX_ORDER],
}

impl Search<'_> {
    fn run(&mut self, depth: usize, used: u32) {
        if depth == self.n {
            self.best_perm = self.perm;
            return;
        }
        for w in 0..self.n {
            if used >> w & 1 == 1 {
                continue;
            }
            // column bits: position 0 is the most significant
            let row = self.g.neighbors(w).bits();
            let mut col = 0u32;
            for i in 0..depth {
                col = col << 1 | (row >> self.perm[i] & 1);
            }
            if col > self.best[depth] {
                continue;
            }
            if col < self.best[depth] {
                self.best[depth] = col;
                for b in &mut self.best[depth + 1..self.n] {
                    *b = u32::MAX;
                }
            }
            self.perm[depth] = w;
            self.run(depth + 1, used | 1 << w);
        }
    }
}

/// Canonical form and the relabeled graph that realizes it.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Graph), CanonError> {
    let n = g.order();
    if n > CANONICAL_MAX_ORDER {
        return Err(CanonError(n));
    }
    let mut search = Search {
        g,
        n,
        perm: [0; MAX_ORDER],
        best: [u32::MAX; MAX_ORDER],
        best_perm: [0; MAX_ORDER],
    };
    search.run(0, 0);
    let mut bits = 0u64;
    for j in 1..n {
        bits = bits << j | search.best[j] as u64;
    }
    let mut bytes = vec![n as u8];
    bytes.extend_from_slice(&bits.to_be_bytes());
    let relabeled = g.permuted(&search.best_perm[..n]);
    Ok((CanonicalForm(bytes), relabeled))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    canonical_labeling(g).map(|(c, _)| c)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
