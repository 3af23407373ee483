use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use super::{cap, OracleError};
use crate::graph::Graph;

pub const SMALL_GRAPH_CAP: usize = 8;

/// One graph from every isomorphism class on `n` vertices, `n ≤ 8`.
///
/// Classes on `n` vertices are obtained by attaching a new vertex to every
/// class on `n − 1` vertices in every possible way and keeping one
/// representative per canonical code.
pub fn graphs_on(n: usize) -> Result<Vec<Graph>, OracleError> {
    cap("number of vertices", n, SMALL_GRAPH_CAP)?;
    let mut classes: BTreeSet<u64> = BTreeSet::from([0]);
    for size in 1..=n {
        let mut next = BTreeSet::new();
        for &code in &classes {
            let adj = decode(size - 1, code);
            for attach in 0u8..(1u8 << (size - 1)).max(1) {
                let mut grown = adj.clone();
                grown.push(attach);
                for (v, row) in grown.iter_mut().enumerate().take(size - 1) {
                    if attach >> v & 1 == 1 {
                        *row |= 1 << (size - 1);
                    }
                }
                next.insert(canonical_code(&grown));
            }
        }
        classes = next;
    }
    Ok(classes
        .into_iter()
        .map(|code| to_graph(&decode(n, code)))
        .collect())
}

/// The connected members of [`graphs_on`].
pub fn connected_graphs_on(n: usize) -> Result<Vec<Graph>, OracleError> {
    Ok(graphs_on(n)?
        .into_iter()
        .filter(|g| g.is_connected())
        .collect())
}

/// Bit `i(i−1)/2 + j` is set iff `j < i` are adjacent.
fn encode(adj: &[u8], order: &[usize]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for i in 1..order.len() {
        for j in 0..i {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn decode(n: usize, code: u64) -> Vec<u8> {
    let mut adj = vec![0u8; n];
    let mut bit = 0;
    for i in 1..n {
        for j in 0..i {
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    adj
}

fn to_graph(adj: &[u8]) -> Graph {
    let n = adj.len();
    Graph::from_edges(
        n,
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| adj[i] >> j & 1 == 1),
    )
    .expect("simple")
}

/// Least code over all orderings that respect the stable colour-refinement
/// partition. The partition is labelled by signatures only, so isomorphic
/// graphs get the same code.
fn canonical_code(adj: &[u8]) -> u64 {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(|r| r.count_ones() as usize).collect();
    loop {
        let signature: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = (0..n)
                    .filter(|&w| adj[v] >> w & 1 == 1)
                    .map(|w| colour[w])
                    .collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> = signature
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(r, s)| (s, r))
            .collect();
        let refined: Vec<usize> = signature.iter().map(|s| ranks[s]).collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        let after = ranks.len();
        colour = refined;
        if after == before {
            break;
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_colour.entry(colour[v]).or_default().push(v);
    }
    cells.extend(by_colour.into_values());
    let slots: Vec<usize> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len()))
        .collect();
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    orderings(adj, &cells, &slots, &mut order, &mut used, &mut best);
    best
}

fn orderings(
    adj: &[u8],
    cells: &[Vec<usize>],
    slots: &[usize],
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut u64,
) {
    if order.len() == adj.len() {
        *best = (*best).min(encode(adj, order));
        return;
    }
    for &v in &cells[slots[order.len()]] {
        if !used[v] {
            used[v] = true;
            order.push(v);
            orderings(adj, cells, slots, order, used, best);
            order.pop();
            used[v] = false;
        }
    }
}

/// `max 2|E(S)|/|S|` over nonempty vertex sets `S` (zero for the empty graph).
pub fn max_average_degree(g: &Graph) -> Result<Ratio<usize>, OracleError> {
    cap("number of vertices", g.n(), 20)?;
    let mut best = Ratio::from_integer(0);
    for mask in 1u32..(1u32 << g.n()) {
        let inside = g
            .edges()
            .iter()
            .filter(|e| mask >> e.lo() & 1 == 1 && mask >> e.hi() & 1 == 1)
            .count();
        let avg = Ratio::new(2 * inside, mask.count_ones() as usize);
        if avg > best {
            best = avg;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| graphs_on(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
        let connected: Vec<usize> = (1..=6)
            .map(|n| connected_graphs_on(n).unwrap().len())
            .collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn relabelled_graphs_share_a_code() {
        let a = decode(
            5,
            encode(
                &[0b00010, 0b00101, 0b01010, 0b10100, 0b01000],
                &[0, 1, 2, 3, 4],
            ),
        );
        let b = decode(
            5,
            encode(
                &[0b00010, 0b00101, 0b01010, 0b10100, 0b01000],
                &[3, 1, 4, 0, 2],
            ),
        );
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn mad_examples() {
        // a triangle with a pendant edge: the triangle is densest
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(max_average_degree(&g).unwrap(), Ratio::from_integer(2));
        assert_eq!(
            max_average_degree(&Graph::empty(0)).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(
            max_average_degree(&Graph::path(2)).unwrap(),
            Ratio::from_integer(1)
        );
    }
}
