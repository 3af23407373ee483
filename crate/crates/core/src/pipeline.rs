//! Both phases end to end, with restarts and a run report.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cover::{Cover, CoverError};
use crate::finisher::{self, FinishError, Phase2Outcome};
use crate::graph::Graph;
use crate::resampler::{run_phase1, Params, Phase1Outcome, Phase1Stats, ResampleError};
use crate::verify::{check_list_colouring, Violation};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Resample(#[from] ResampleError),
    #[error(transparent)]
    Finish(#[from] FinishError),
    #[error("maximum degree {actual} exceeds the parameter Δ = {bound}")]
    Degree { actual: usize, bound: usize },
    #[error("output failed verification: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Verification(Vec<Violation>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Phase1BudgetExceeded,
    Phase2BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Phase-one step budget per attempt; `None` uses [`Params::step_budget`].
    pub phase1_budget: Option<u64>,
    /// Phase-two resampling budget; `None` uses `⌈n^{3/2}⌉`.
    pub phase2_budget: Option<u64>,
    pub max_attempts: u32,
    /// Record wall-clock time in the report (which makes it nondeterministic).
    pub timing: bool,
}

impl PipelineConfig {
    pub fn with_seed(seed: u64) -> Self {
        PipelineConfig {
            seed,
            phase1_budget: None,
            phase2_budget: None,
            max_attempts: 5,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub attempts: u32,
    pub step_budget: u64,
    /// Totals over all attempts.
    #[serde(flatten)]
    pub phase1: Phase1Stats,
    pub outcome: Outcome,
    pub hypothesis_flags: BTreeMap<&'static str, bool>,
    pub resamplings: u64,
    pub phase2_outcome: Option<Phase2Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    /// The natural colour of each vertex, when successful.
    pub colouring: Option<Vec<u64>>,
    pub report: RunReport,
}

fn add_stats(total: &mut Phase1Stats, s: &Phase1Stats) {
    total.steps += s.steps;
    total.b_flaws_addressed += s.b_flaws_addressed;
    total.u_flaws_addressed += s.u_flaws_addressed;
    total.uncolourings += s.uncolourings;
    total.removed_edge_totals += s.removed_edge_totals;
    total.max_removed = total.max_removed.max(s.max_removed);
    total.removals_above_t += s.removals_above_t;
    total.b_flaw_persisted += s.b_flaw_persisted;
}

/// Colours `g` from `lists`: phase one, then phase two, restarting with a
/// fresh random stream when a budget runs out. Any colouring returned has
/// passed the independent checker.
pub fn colour_graph(
    g: &Graph,
    lists: &[Vec<u64>],
    params: &Params,
    config: &PipelineConfig,
) -> Result<PipelineResult, PipelineError> {
    let start = Instant::now();
    if g.max_degree() > params.delta_max {
        return Err(PipelineError::Degree {
            actual: g.max_degree(),
            bound: params.delta_max,
        });
    }
    let cover = Cover::from_lists(g.clone(), lists)?;
    let n = g.n();
    let step_budget = config
        .phase1_budget
        .unwrap_or_else(|| params.step_budget(n));
    let phase2_budget = config
        .phase2_budget
        .unwrap_or_else(|| finisher::default_budget(n));
    let mut report = RunReport {
        seed: config.seed,
        attempts: 0,
        step_budget,
        phase1: Phase1Stats::default(),
        outcome: Outcome::Phase1BudgetExceeded,
        hypothesis_flags: params
            .hypotheses
            .iter()
            .map(|h| (h.name, h.holds))
            .collect(),
        resamplings: 0,
        phase2_outcome: None,
        wall_ms: None,
    };
    let mut colouring = None;
    for attempt in 0..config.max_attempts.max(1) {
        report.attempts = attempt + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(attempt as u64);
        let run = run_phase1(&cover, params, &mut rng, step_budget)?;
        add_stats(&mut report.phase1, &run.stats);
        if run.outcome == Phase1Outcome::BudgetExceeded {
            report.outcome = Outcome::Phase1BudgetExceeded;
            continue;
        }
        let fin = finisher::run_phase2(&cover, &run.sigma, params.ell, &mut rng, phase2_budget)?;
        report.resamplings += fin.resamplings;
        report.phase2_outcome = Some(fin.outcome);
        match fin.colouring {
            Some(c) => {
                let naturals: Vec<u64> = c.iter().map(|&x| cover.label(x)).collect();
                let violations = check_list_colouring(g, lists, &naturals);
                if !violations.is_empty() {
                    return Err(PipelineError::Verification(violations));
                }
                report.outcome = Outcome::Success;
                colouring = Some(naturals);
                break;
            }
            None => report.outcome = Outcome::Phase2BudgetExceeded,
        }
    }
    if config.timing {
        report.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(PipelineResult { colouring, report })
}

/// `{"<vertex>": colour}` as JSON.
pub fn colouring_to_json(colouring: &[u64]) -> String {
    let map: BTreeMap<usize, u64> = colouring.iter().copied().enumerate().collect();
    serde_json::to_string(&map).expect("serialisable")
}

pub fn colouring_from_json(text: &str, n: usize) -> Result<Vec<u64>, String> {
    let map: BTreeMap<String, u64> =
        serde_json::from_str(text).map_err(|e| format!("colouring file: {e}"))?;
    let mut out = vec![None; n];
    for (k, c) in map {
        let v: usize = k
            .parse()
            .map_err(|_| format!("colouring file: bad vertex id {k:?}"))?;
        if v >= n {
            return Err(format!("colouring file: vertex {v} out of range"));
        }
        out[v] = Some(c);
    }
    out.into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| format!("colouring file: vertex {v} has no colour")))
        .collect()
}
