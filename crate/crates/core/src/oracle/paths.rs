use super::{cap, OracleError};
use crate::graph::{Graph, Vertex};

pub const MIN_EDGES_CAP: usize = 20;

fn path_order(k: usize) -> Result<usize, OracleError> {
    if k < 3 {
        Err(OracleError::Domain(format!(
            "k must be at least 3 (got {k})"
        )))
    } else {
        Ok(k - 1)
    }
}

/// Every copy of `P_{k-1}` in `g` as a vertex sequence with first < last,
/// in lexicographic order. Tries every injective vertex sequence of the
/// right length.
pub fn oracle_path_copies(g: &Graph, k: usize) -> Result<Vec<Vec<Vertex>>, OracleError> {
    let j = path_order(k)?;
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(j);
    sequences(g, j, &mut seq, &mut out);
    Ok(out)
}

fn sequences(g: &Graph, j: usize, seq: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    if seq.len() == j {
        if seq[0] < seq[j - 1] || j == 1 {
            out.push(seq.clone());
        }
        return;
    }
    for v in 0..g.n() {
        if seq.contains(&v) {
            continue;
        }
        if let Some(&last) = seq.last() {
            if !g.has_edge(last, v) {
                continue;
            }
        }
        seq.push(v);
        sequences(g, j, seq, out);
        seq.pop();
    }
}

/// Fewest edges whose deletion leaves `f` without a `P_{k-1}`, for `|E| ≤ 20`.
pub fn min_edges_to_pkfree(f: &Graph, k: usize) -> Result<usize, OracleError> {
    min_edges_to_pkfree_with_cap(f, k, MIN_EDGES_CAP)
}

/// [`min_edges_to_pkfree`] with a caller-chosen edge cap (at most 64).
///
/// Every copy is an edge set that a deletion set must hit, so this is a
/// minimum hitting set, found by iterative deepening. Branching on the
/// edges of one unhit copy, earlier edges are kept in later branches, so
/// no deletion set is visited twice; a packing of copies with disjoint
/// deletable edges bounds the remaining depth from below.
pub fn min_edges_to_pkfree_with_cap(
    f: &Graph,
    k: usize,
    edge_cap: usize,
) -> Result<usize, OracleError> {
    cap("number of edges", f.m(), edge_cap.min(64))?;
    let edges = f.edges();
    let index = |u: Vertex, v: Vertex| {
        edges
            .iter()
            .position(|e| e.lo() == u.min(v) && e.hi() == u.max(v))
            .expect("path edge")
    };
    let copies: Vec<u64> = oracle_path_copies(f, k)?
        .iter()
        .map(|p| p.windows(2).fold(0u64, |m, w| m | 1 << index(w[0], w[1])))
        .collect();
    for budget in 0..=f.m() {
        if hits_all(&copies, 0, 0, budget) {
            return Ok(budget);
        }
    }
    unreachable!("deleting every edge removes every copy")
}

fn hits_all(copies: &[u64], deleted: u64, kept: u64, budget: usize) -> bool {
    let mut pick: Option<u64> = None;
    let mut used = 0u64;
    let mut packed = 0usize;
    for &c in copies {
        if c & deleted != 0 {
            continue;
        }
        let free = c & !kept;
        if free == 0 {
            return false;
        }
        if pick.is_none_or(|p| free.count_ones() < p.count_ones()) {
            pick = Some(free);
        }
        if free & used == 0 {
            used |= free;
            packed += 1;
        }
    }
    let Some(mut free) = pick else {
        return true;
    };
    if packed > budget {
        return false;
    }
    let mut kept = kept;
    while free != 0 {
        let e = free & free.wrapping_neg();
        free &= free - 1;
        if hits_all(copies, deleted | e, kept, budget - 1) {
            return true;
        }
        kept |= e;
    }
    false
}
