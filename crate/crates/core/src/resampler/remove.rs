//! `Remove`: break every `P_{k-1}` of a neighbourhood graph by deleting edges.

use std::collections::BTreeSet;

use crate::cover::Cover;
use crate::graph::{enumerate_path_copies, Edge, Graph, GraphError};

#[derive(Clone, Debug)]
pub struct RemoveResult {
    /// The removed base edges `R`, sorted.
    pub removed_edges: Vec<Edge>,
    /// `Ĥ`: the cover with the cross edges over `R` deleted and `R` gone from the base.
    pub cover_hat: Cover,
    /// Number of `P_{k-1}` copies found in `f`.
    pub copies: usize,
}

/// `R` for `f`: copies are visited in lexicographic order and each copy not
/// yet hit by `R` contributes its lexicographically least edge.
pub fn select_removed_edges(f: &Graph, k: usize) -> Result<(Vec<Edge>, usize), GraphError> {
    let copies = enumerate_path_copies(f, k)?;
    let mut removed = BTreeSet::new();
    for copy in &copies {
        if copy.edges().any(|e| removed.contains(&e)) {
            continue;
        }
        let least = copy
            .edges()
            .min()
            .expect("a path on k-1 >= 2 vertices has an edge");
        removed.insert(least);
    }
    Ok((removed.into_iter().collect(), copies.len()))
}

/// `Remove(F, H')`, where `h_prime` is a cover of `f` (its base must equal `f`).
pub fn remove_edges(f: &Graph, h_prime: &Cover, k: usize) -> Result<RemoveResult, GraphError> {
    debug_assert_eq!(f, h_prime.base());
    let (removed_edges, copies) = select_removed_edges(f, k)?;
    let all: Vec<_> = (0..f.n()).collect();
    let (cover_hat, _) = h_prime.restrict(&all, |_| true, &removed_edges);
    Ok(RemoveResult {
        removed_edges,
        cover_hat,
        copies,
    })
}
