//! graph6 text encoding.
//!
//! Layout: one byte `63 + n` (orders here never exceed 32, so the long
//! forms are never produced), then the upper-triangle adjacency bits in
//! column-major order `(0,1), (0,2), (1,2), (0,3), ..`, packed six per byte
//! most-significant first, zero padded, each byte offset by 63.

use std::fmt;

use thiserror::Error;

use crate::graph::{pair_count, Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid graph6 at byte {position}: {kind}")]
pub struct Graph6Error {
    /// Zero-based offset of the first offending byte.
    pub position: usize,
    pub kind: Graph6ErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    Empty,
    /// A byte outside the printable range `63..=126`.
    BadByte(u8),
    /// A valid header naming an order this crate does not handle.
    UnsupportedOrder,
    /// The body is shorter or longer than the order requires.
    Length { expected: usize, found: usize },
    /// Padding bits in the final byte are not zero.
    TrailingBits,
}

impl fmt::Display for Graph6ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6ErrorKind::Empty => f.write_str("empty input"),
            Graph6ErrorKind::BadByte(b) => write!(f, "byte {b:#04x} outside 63..=126"),
            Graph6ErrorKind::UnsupportedOrder => write!(f, "order must be in 1..={MAX_ORDER}"),
            Graph6ErrorKind::Length { expected, found } => {
                write!(f, "expected {expected} data bytes, found {found}")
            }
            Graph6ErrorKind::TrailingBits => f.write_str("nonzero padding bits"),
        }
    }
}

fn body_len(n: usize) -> usize {
    pair_count(n).div_ceil(6)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes one graph6 string. Surrounding whitespace (such as the line
/// terminator) is ignored; the optional `>>graph6<<` header is not accepted.
pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let err = |position, kind| Graph6Error { position, kind };
    let (&head, body) = bytes.split_first().ok_or(err(0, Graph6ErrorKind::Empty))?;
    if let Some(p) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(p, Graph6ErrorKind::BadByte(bytes[p])));
    }
    // 126 introduces the long order forms, which always exceed MAX_ORDER
    let n = (head - 63) as usize;
    if n == 0 || n > MAX_ORDER {
        return Err(err(0, Graph6ErrorKind::UnsupportedOrder));
    }
    let expected = body_len(n);
    if body.len() != expected {
        let position = 1 + body.len().min(expected);
        return Err(err(position, Graph6ErrorKind::Length { expected, found: body.len() }));
    }
    let mut rows = [0u32; MAX_ORDER];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    let pad = expected * 6 - pair_count(n);
    if pad > 0 {
        let last = body[expected - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(expected, Graph6ErrorKind::TrailingBits));
        }
    }
    Ok(Graph::from_rows(n, &rows))
}
