//! Connected induced subgraphs of small graphs.
//!
//! The crate counts connected induced subgraphs (`N(G)`, and the rooted
//! `N(G)_u`), computes exact structural parameters, builds the extremal
//! families for seven parameter-constrained classes, and certifies by
//! exhaustive enumeration that each family is the unique maximizer at small
//! orders.
//!
//! ```
//! use cis_core::{constructions, count};
//!
//! let g = constructions::build_g(5, 2).unwrap();
//! assert_eq!(count::count_expansion(&g).total, 28);
//! assert_eq!(count::count_rooted(&g, 4).unwrap(), 13);
//! ```

pub mod canon;
pub mod constructions;
pub mod count;
pub mod explore;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod verify;

pub use canon::{canonical_form, CanonicalForm};
pub use count::{count_expansion, count_subset_oracle, CisCount};
pub use graph::{Edge, Graph, GraphError, VertexSet};
pub use graph6::{decode_graph6, encode_graph6};
pub use invariants::{profile, InvariantProfile};
pub use verify::{certify, certify_grid, ClassSpec, ScanOptions, Theorem, TheoremReport};
