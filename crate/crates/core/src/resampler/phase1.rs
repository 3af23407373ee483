//! The main loop: repeatedly address the least flaw until none is left.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use super::actions::{address_b_in_place, address_u_in_place};
use super::{Params, ResampleError};
use crate::cover::{Cover, Flaw, PartialColouring, Residual, Slot};
use crate::graph::{Edge, Vertex};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Phase1Stats {
    pub steps: u64,
    pub b_flaws_addressed: u64,
    pub u_flaws_addressed: u64,
    pub uncolourings: u64,
    /// Sum of `|R|` over all `AddressB` calls.
    pub removed_edge_totals: u64,
    pub max_removed: usize,
    /// `AddressB` calls whose `|R|` exceeded `t`.
    pub removals_above_t: u64,
    /// `AddressB(u)` calls after which `B_u` was still present.
    pub b_flaw_persisted: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase1Outcome {
    Flawless,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct Phase1Run {
    pub sigma: PartialColouring,
    pub stats: Phase1Stats,
    pub outcome: Phase1Outcome,
}

/// Present flaws, maintained incrementally.
///
/// `B_u` depends on `σ` within distance two of `u`, so after a step that
/// changed the slots of `M` only the vertices within distance two of `M` are
/// rechecked.
struct FlawTracker {
    ell: f64,
    b: BTreeSet<Vertex>,
    u: BTreeSet<(Vertex, Edge)>,
    stamp: Vec<u64>,
    epoch: u64,
}

impl FlawTracker {
    fn new(state: &Residual<'_>, ell: f64) -> Self {
        let n = state.cover().base().n();
        let mut t = FlawTracker {
            ell,
            b: BTreeSet::new(),
            u: BTreeSet::new(),
            stamp: vec![0; n],
            epoch: 0,
        };
        for v in 0..n {
            t.refresh_b(state, v);
            t.refresh_u(state, v);
        }
        t
    }

    fn least(&self) -> Option<Flaw> {
        if let Some(&v) = self.b.first() {
            return Some(Flaw::B(v));
        }
        self.u.first().map(|&(v, e)| Flaw::U(v, e))
    }

    fn refresh_b(&mut self, state: &Residual<'_>, v: Vertex) {
        if state.is_b_flawed(v, self.ell) {
            self.b.insert(v);
        } else {
            self.b.remove(&v);
        }
    }

    fn refresh_u(&mut self, state: &Residual<'_>, v: Vertex) {
        let adj = state.cover().base().neighbours(v);
        for &w in adj {
            self.u.remove(&(v, Edge::new(v, w)));
        }
        if let Slot::Uncoloured(e) = state.sigma().get(v) {
            debug_assert!(
                state.sigma().get(e.other(v)) != Slot::Uncoloured(e),
                "both ends of {e} are uncoloured through it"
            );
            self.u.insert((v, e));
        }
    }

    fn update(&mut self, state: &Residual<'_>, changed: &[Vertex]) {
        let g = state.cover().base();
        self.epoch += 1;
        let epoch = self.epoch;
        let mut frontier: Vec<Vertex> = Vec::new();
        let mut seen = Vec::new();
        for &v in changed {
            self.refresh_u(state, v);
            if self.stamp[v] != epoch {
                self.stamp[v] = epoch;
                frontier.push(v);
                seen.push(v);
            }
        }
        for _ in 0..2 {
            let mut next = Vec::new();
            for &v in &frontier {
                for &w in g.neighbours(v) {
                    if self.stamp[w] != epoch {
                        self.stamp[w] = epoch;
                        next.push(w);
                        seen.push(w);
                    }
                }
            }
            frontier = next;
        }
        for v in seen {
            self.refresh_b(state, v);
        }
    }
}

/// Runs phase one from the all-blank colouring for at most `budget` steps.
pub fn run_phase1<R: Rng + ?Sized>(
    cover: &Cover,
    params: &Params,
    rng: &mut R,
    budget: u64,
) -> Result<Phase1Run, ResampleError> {
    let n = cover.base().n();
    let mut state = Residual::new(cover, PartialColouring::all_blank(n));
    let mut flaws = FlawTracker::new(&state, params.ell);
    let mut stats = Phase1Stats::default();
    let mut changed = Vec::new();
    while let Some(flaw) = flaws.least() {
        if stats.steps >= budget {
            return Ok(Phase1Run {
                sigma: state.into_sigma(),
                stats,
                outcome: Phase1Outcome::BudgetExceeded,
            });
        }
        stats.steps += 1;
        changed.clear();
        match flaw {
            Flaw::B(u) => {
                let step = address_b_in_place(&mut state, u, params.k, params.lambda, rng)?;
                stats.b_flaws_addressed += 1;
                stats.uncolourings += step.uncoloured.len() as u64;
                stats.removed_edge_totals += step.removed.len() as u64;
                stats.max_removed = stats.max_removed.max(step.removed.len());
                if step.removed.len() as f64 > params.t {
                    stats.removals_above_t += 1;
                }
                changed.extend_from_slice(cover.base().neighbours(u));
                changed.push(u);
            }
            Flaw::U(u, _) => {
                address_u_in_place(&mut state, u, params.lambda, rng);
                stats.u_flaws_addressed += 1;
                changed.push(u);
            }
        }
        flaws.update(&state, &changed);
        if let Flaw::B(u) = flaw {
            if flaws.b.contains(&u) {
                stats.b_flaw_persisted += 1;
            }
        }
        #[cfg(debug_assertions)]
        debug_check(&state, &flaws);
    }
    let sigma = state.into_sigma();
    debug_assert!(sigma.uncoloured_vertices().is_empty());
    Ok(Phase1Run {
        sigma,
        stats,
        outcome: Phase1Outcome::Flawless,
    })
}

/// In debug builds, compares the tracker against a full rescan on small instances.
#[cfg(debug_assertions)]
fn debug_check(state: &Residual<'_>, flaws: &FlawTracker) {
    if state.cover().base().n() <= 64 {
        assert_eq!(
            flaws.least(),
            state.least_flaw(flaws.ell),
            "flaw tracker out of date"
        );
        state
            .sigma()
            .validate(state.cover())
            .expect("invalid partial colouring");
    }
}
