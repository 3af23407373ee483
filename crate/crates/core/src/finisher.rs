//! Phase two: complete a flawless partial colouring by uniform choices on the
//! blank vertices, resampling both ends of conflicting edges.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cover::{Colour, Cover, PartialColouring, Residual, Slot};
use crate::graph::{Edge, Vertex};

#[derive(Debug, Error, PartialEq)]
pub enum FinishError {
    #[error("partial colouring is not flawless (vertex {0})")]
    NotFlawless(Vertex),
    #[error("list length must be positive (got {0})")]
    ListLength(f64),
    #[error("resampling condition fails: {0}")]
    Condition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase2Outcome {
    Complete,
    BudgetExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct Phase2Run {
    /// The colour of every vertex when complete.
    #[serde(skip)]
    pub colouring: Option<Vec<Colour>>,
    pub outcome: Phase2Outcome,
    pub resamplings: u64,
    /// Truncated list length `⌈ℓ⌉`.
    pub list_length: usize,
    /// Largest number of other conflict events sharing a vertex with one event.
    pub max_dependency: usize,
    pub conflict_events: usize,
}

/// Default budget: `⌈n^{3/2}⌉` resamplings.
pub fn default_budget(n: usize) -> u64 {
    ((n.max(1) as f64).powf(1.5)).ceil() as u64
}

/// Runs phase two on a flawless `sigma` with list-length parameter `ell`.
///
/// Each blank list is cut to its `⌈ℓ⌉` smallest surviving colours.
pub fn run_phase2<R: Rng + ?Sized>(
    cover: &Cover,
    sigma: &PartialColouring,
    ell: f64,
    rng: &mut R,
    budget: u64,
) -> Result<Phase2Run, FinishError> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(FinishError::ListLength(ell));
    }
    let state = Residual::new(cover, sigma.clone());
    let n = cover.base().n();
    if let Some(u) =
        (0..n).find(|&u| matches!(sigma.get(u), Slot::Uncoloured(_)) || state.is_b_flawed(u, ell))
    {
        return Err(FinishError::NotFlawless(u));
    }
    let len = ell.ceil() as usize;
    let lists: Vec<Vec<Colour>> = (0..n)
        .map(|u| {
            if sigma.is_blank(u) {
                state.list(u).take(len).collect()
            } else {
                Vec::new()
            }
        })
        .collect();

    // Conflict events: cross edges between truncated lists.
    let mut kept = vec![false; cover.n_colours()];
    for x in lists.iter().flatten() {
        kept[x.index()] = true;
    }
    let incident = |x: Colour| cover.partners(x).iter().filter(|y| kept[y.index()]).count();
    let mut events = 0usize;
    let mut max_dependency = 0usize;
    for u in 0..n {
        for &x in &lists[u] {
            for &y in cover.partners(x) {
                if kept[y.index()] && x < y {
                    events += 1;
                    let (lu, lv) = (&lists[u], &lists[cover.owner(y)]);
                    if lu.len() != len || lv.len() != len {
                        return Err(FinishError::Condition(format!(
                            "truncated lists at an event have sizes {} and {}, not {len}",
                            lu.len(),
                            lv.len()
                        )));
                    }
                    let touching: usize = lu.iter().chain(lv.iter()).map(|&z| incident(z)).sum();
                    // the event itself is counted from both of its ends
                    max_dependency = max_dependency.max(touching - 2);
                }
            }
        }
    }
    if max_dependency as f64 > (len * len) as f64 / 4.0 {
        return Err(FinishError::Condition(format!(
            "an event shares a vertex with {max_dependency} others, above ⌈ℓ⌉²/4"
        )));
    }

    let mut colour: Vec<Option<Colour>> = (0..n)
        .map(|u| match sigma.get(u) {
            Slot::Coloured(x) => Some(x),
            _ => None,
        })
        .collect();
    let blank: Vec<Vertex> = (0..n).filter(|&u| sigma.is_blank(u)).collect();
    for &u in &blank {
        colour[u] = Some(lists[u][rng.gen_range(0..len)]);
    }
    let violated = |colour: &[Option<Colour>], e: Edge| match (colour[e.lo()], colour[e.hi()]) {
        (Some(x), Some(y)) => cover.are_adjacent(x, y),
        _ => false,
    };
    let mut bad: BTreeSet<Edge> = cover
        .base()
        .edges()
        .iter()
        .copied()
        .filter(|&e| sigma.is_blank(e.lo()) && sigma.is_blank(e.hi()) && violated(&colour, e))
        .collect();
    let mut run = Phase2Run {
        colouring: None,
        outcome: Phase2Outcome::Complete,
        resamplings: 0,
        list_length: len,
        max_dependency,
        conflict_events: events,
    };
    while let Some(&e) = bad.first() {
        if run.resamplings >= budget {
            run.outcome = Phase2Outcome::BudgetExceeded;
            return Ok(run);
        }
        run.resamplings += 1;
        for v in [e.lo(), e.hi()] {
            colour[v] = Some(lists[v][rng.gen_range(0..len)]);
        }
        for v in [e.lo(), e.hi()] {
            for &w in cover.base().neighbours(v) {
                if sigma.is_blank(w) {
                    let f = Edge::new(v, w);
                    if violated(&colour, f) {
                        bad.insert(f);
                    } else {
                        bad.remove(&f);
                    }
                }
            }
        }
    }
    run.colouring = Some(
        colour
            .into_iter()
            .map(|c| c.expect("every vertex coloured"))
            .collect(),
    );
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nothing_blank_returns_sigma() {
        let c = Cover::from_lists(Graph::complete(2), &[vec![1], vec![2]]).unwrap();
        let sigma = PartialColouring::from_slots(vec![
            Slot::Coloured(Colour(0)),
            Slot::Coloured(Colour(1)),
        ]);
        let run = run_phase2(&c, &sigma, 1.0, &mut ChaCha8Rng::seed_from_u64(0), 10).unwrap();
        assert_eq!(run.colouring.unwrap(), vec![Colour(0), Colour(1)]);
        assert_eq!(run.resamplings, 0);
    }

    #[test]
    fn disjoint_lists_need_no_resampling() {
        let c = Cover::from_lists(Graph::complete(2), &[vec![1, 2], vec![3, 4]]).unwrap();
        let sigma = PartialColouring::all_blank(2);
        let run = run_phase2(&c, &sigma, 2.0, &mut ChaCha8Rng::seed_from_u64(0), 10).unwrap();
        assert_eq!(run.resamplings, 0);
        assert_eq!(run.conflict_events, 0);
        assert!(c.is_independent(&run.colouring.unwrap()));
    }

    #[test]
    fn flaws_are_rejected() {
        let c = Cover::from_lists(Graph::complete(2), &[vec![1, 2], vec![1, 2]]).unwrap();
        let err = run_phase2(
            &c,
            &PartialColouring::all_blank(2),
            2.0,
            &mut ChaCha8Rng::seed_from_u64(0),
            10,
        );
        assert_eq!(err.unwrap_err(), FinishError::NotFlawless(0));
    }

    #[test]
    fn sparse_conflicts_resolve() {
        // path 0-1-2, lists of 16 with one shared natural per edge: deg* = 1 <= 16/8
        let lists = vec![
            (1..=16).collect::<Vec<u64>>(),
            (16..=31).collect(),
            (31..=46).collect(),
        ];
        let c = Cover::from_lists(Graph::path(3), &lists).unwrap();
        for seed in 0..50 {
            let run = run_phase2(
                &c,
                &PartialColouring::all_blank(3),
                16.0,
                &mut ChaCha8Rng::seed_from_u64(seed),
                100,
            )
            .unwrap();
            assert_eq!(run.conflict_events, 2);
            assert!(c.is_independent(&run.colouring.unwrap()));
        }
    }
}
