//! Random graphs, list assignments and the triangle-removal filter.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::cover::{Colour, Cover, CoverError};
use crate::graph::{is_path_free, Edge, Graph, GraphError};

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("no {d}-regular graph on {n} vertices")]
    Infeasible { n: usize, d: usize },
    #[error("no simple pairing found after {0} attempts")]
    Attempts(usize),
    #[error("probability must lie in [0, 1] (got {0})")]
    Probability(f64),
    #[error("cannot draw lists of {size} from a palette of {palette}")]
    Palette { size: usize, palette: u64 },
    #[error("filter did not reach a fixpoint within {0} rounds")]
    Fixpoint(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

const PAIRING_ATTEMPTS: usize = 1_000;
const PAIR_TRIES: usize = 1_000;

/// Random `d`-regular graph from the configuration model, pairing points
/// one pair at a time and rejecting pairs that would create a loop or a
/// repeated edge; a dead end restarts the pairing.
pub fn random_regular<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    rng: &mut R,
) -> Result<Graph, GenerateError> {
    if (n * d) % 2 == 1 || (n > 0 && d >= n) {
        return Err(GenerateError::Infeasible { n, d });
    }
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        let mut points: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, d)).collect();
        let mut edges = BTreeSet::new();
        while !points.is_empty() {
            let mut paired = false;
            for _ in 0..PAIR_TRIES {
                let i = rng.gen_range(0..points.len());
                let j = rng.gen_range(0..points.len());
                let (u, v) = (points[i], points[j]);
                if u != v && !edges.contains(&Edge::new(u, v)) {
                    edges.insert(Edge::new(u, v));
                    points.swap_remove(i.max(j));
                    points.swap_remove(i.min(j));
                    paired = true;
                    break;
                }
            }
            if !paired {
                continue 'attempt;
            }
        }
        return Ok(Graph::from_edges(
            n,
            edges.into_iter().map(|e| (e.lo(), e.hi())),
        )?);
    }
    Err(GenerateError::Attempts(PAIRING_ATTEMPTS))
}

/// `G(n, p)`.
pub fn binomial<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::Probability(p));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Deletes one edge per triangle until none is left: the least remaining
/// triangle loses its greatest edge.
pub fn remove_triangles(g: &Graph) -> Result<Graph, GenerateError> {
    let mut removed = BTreeSet::new();
    let mut current = g.clone();
    for _ in 0..=g.m() {
        match least_triangle(&current) {
            None => return Ok(current),
            Some((a, b, c)) => {
                removed.insert(Edge::new(b, c).max(Edge::new(a, c)));
                let list: Vec<Edge> = removed.iter().copied().collect();
                current = g.without_edges(&list);
            }
        }
    }
    Err(GenerateError::Fixpoint(g.m() + 1))
}

fn least_triangle(g: &Graph) -> Option<(usize, usize, usize)> {
    for e in g.edges() {
        let (a, b) = (e.lo(), e.hi());
        if let Some(&c) = g.neighbours(b).iter().find(|&&c| c > b && g.has_edge(a, c)) {
            return Some((a, b, c));
        }
    }
    None
}

/// A list of `size` distinct naturals per vertex, uniform from `1..=palette`,
/// each sorted.
pub fn random_lists<R: Rng + ?Sized>(
    n: usize,
    size: usize,
    palette: u64,
    rng: &mut R,
) -> Result<Vec<Vec<u64>>, GenerateError> {
    if size as u64 > palette {
        return Err(GenerateError::Palette { size, palette });
    }
    let all: Vec<u64> = (1..=palette).collect();
    Ok((0..n)
        .map(|_| {
            let mut l: Vec<u64> = all.choose_multiple(rng, size).copied().collect();
            l.sort_unstable();
            l
        })
        .collect())
}

/// The same list `{1, ..., q}` at every vertex.
pub fn uniform_lists(n: usize, q: usize) -> Vec<Vec<u64>> {
    vec![(1..=q as u64).collect(); n]
}

/// A random cover whose base graph on `n` vertices has no `P_{k-1}`.
///
/// Vertex pairs are visited in random order and each is kept with
/// probability `edge_p` if the graph stays `P_{k-1}`-free. Lists get 1 to 3
/// colours while the total stays within `max_colours` (so `n ≤ max_colours`),
/// and each base edge gets a random partial matching between its lists.
pub fn random_path_free_cover<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    max_colours: usize,
    edge_p: f64,
    rng: &mut R,
) -> Result<Cover, GenerateError> {
    if !(0.0..=1.0).contains(&edge_p) {
        return Err(GenerateError::Probability(edge_p));
    }
    if n > max_colours {
        return Err(GenerateError::Palette {
            size: n,
            palette: max_colours as u64,
        });
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if rng.gen_bool(edge_p) {
            edges.push((u, v));
            if !is_path_free(&Graph::from_edges(n, edges.iter().copied())?, k)? {
                edges.pop();
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let mut spare = max_colours - n;
    let mut lists = Vec::with_capacity(n);
    let mut first = Vec::with_capacity(n);
    let mut next = 0u32;
    for _ in 0..n {
        let size = 1 + rng.gen_range(0..=2.min(spare));
        spare -= size - 1;
        first.push(next);
        next += size as u32;
        lists.push((1..=size as u64).collect::<Vec<u64>>());
    }
    let mut cross = Vec::new();
    for e in g.edges() {
        let (u, v) = (e.lo(), e.hi());
        let mut used_u = vec![false; lists[u].len()];
        let mut used_v = vec![false; lists[v].len()];
        for i in 0..lists[u].len() {
            for j in 0..lists[v].len() {
                if !used_u[i] && !used_v[j] && rng.gen_bool(0.5) {
                    used_u[i] = true;
                    used_v[j] = true;
                    cross.push((Colour(first[u] + i as u32), Colour(first[v] + j as u32)));
                }
            }
        }
    }
    Ok(Cover::with_cross_edges(g, &lists, &cross)?)
}
