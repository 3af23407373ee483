use std::fmt::Write as _;
use std::path::Path;

use hardcol::cover::{lists_from_json, lists_to_json, Cover};
use hardcol::generate::{binomial, random_lists, random_regular, remove_triangles, uniform_lists};
use hardcol::graph::{count_fans_per_vertex, Graph};
use hardcol::hardcore::{
    derive_occupancy_certificate, log_z_lower_bounds, occupancy_fraction, HardCoreError,
    PkFreeSampler,
};
use hardcol::pipeline::{
    colour_graph, colouring_from_json, colouring_to_json, Outcome, PipelineConfig, PipelineError,
    RunReport,
};
use hardcol::resampler::{derive_params, manual_params, run_phase1, Params};
use hardcol::verify::{check_list_colouring, Violation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{
    AlgoArgs, BenchArgs, ColourArgs, ExploreArgs, Format, GenerateArgs, GraphKind, GraphSpec,
    ListArgs, ModeArg, OccupancyArgs, ParamsArgs, VerifyArgs,
};
use crate::{emit, input, read, CliError, EXIT_BUDGET, EXIT_OK, EXIT_VERIFY};

/// Random stream reserved for generated lists, apart from the pipeline's.
const LIST_STREAM: u64 = u64::MAX;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

pub fn generate_graph(spec: &GraphSpec, seed: u64) -> Result<Graph, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match spec.kind {
        GraphKind::RandomRegular => {
            let d = spec
                .degree
                .ok_or_else(|| CliError::Input("random-regular needs --degree".into()))?;
            random_regular(spec.n, d, &mut rng).map_err(input)?
        }
        GraphKind::Binomial => {
            let p = spec
                .p
                .ok_or_else(|| CliError::Input("binomial needs --p".into()))?;
            binomial(spec.n, p, &mut rng).map_err(input)?
        }
        GraphKind::Cycle => {
            if spec.n < 3 {
                return Err(CliError::Input("a cycle needs at least 3 vertices".into()));
            }
            Graph::cycle(spec.n)
        }
        GraphKind::Complete => Graph::complete(spec.n),
    };
    if spec.triangle_free {
        remove_triangles(&g).map_err(input)
    } else {
        Ok(g)
    }
}

#[derive(Debug, Serialize)]
struct FanReport {
    k: usize,
    max_fans: usize,
    total_fans: usize,
    per_vertex: Vec<usize>,
}

pub(crate) fn cmd_generate(a: &GenerateArgs) -> Result<i32, CliError> {
    let g = generate_graph(&a.graph, a.seed)?;
    emit(a.out.as_deref(), &g.to_text())?;
    if let (Some(q), Some(path)) = (a.q, a.lists_out.as_deref()) {
        let lists = make_lists(g.n(), q, a.palette, a.seed)?;
        std::fs::write(path, lists_to_json(&lists) + "\n")?;
    }
    if let Some(k) = a.fan_k {
        let per_vertex = count_fans_per_vertex(&g, k).map_err(input)?;
        let report = FanReport {
            k,
            max_fans: per_vertex.iter().copied().max().unwrap_or(0),
            total_fans: per_vertex.iter().sum(),
            per_vertex,
        };
        match a.format {
            Format::Json => eprint!("{}", json(&report)),
            Format::Text => eprintln!(
                "F_{} fans: max per vertex {}, total {}",
                report.k, report.max_fans, report.total_fans
            ),
        }
    }
    Ok(EXIT_OK)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::read_text(read(path)?.as_bytes())
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn make_lists(
    n: usize,
    q: usize,
    palette: Option<u64>,
    seed: u64,
) -> Result<Vec<Vec<u64>>, CliError> {
    match palette {
        Some(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(LIST_STREAM);
            random_lists(n, q, p, &mut rng).map_err(input)
        }
        None => Ok(uniform_lists(n, q)),
    }
}

fn load_lists(
    a: &ListArgs,
    g: &Graph,
    fallback_q: Option<usize>,
    seed: u64,
) -> Result<Vec<Vec<u64>>, CliError> {
    if let Some(path) = &a.lists {
        return lists_from_json(&read(path)?, g.n()).map_err(CliError::Input);
    }
    let q =
        a.q.or(fallback_q)
            .ok_or_else(|| CliError::Input("give --lists or --q".into()))?;
    make_lists(g.n(), q, a.palette, seed)
}

fn uniform_size(lists: &[Vec<u64>]) -> Result<usize, CliError> {
    let q = lists.first().map_or(0, Vec::len);
    if lists.iter().any(|l| l.len() != q) {
        return Err(CliError::Input(
            "the pipeline needs every list to have the same size".into(),
        ));
    }
    Ok(q)
}

/// Parameters for `g`: derived from `(Δ, k, t, ε)` in theorem mode, taken
/// from `λ`, `ℓ` and the list size `q` in manual mode.
pub fn build_params(a: &AlgoArgs, g: &Graph, q: Option<usize>) -> Result<Params, CliError> {
    let delta = a.delta.unwrap_or(g.max_degree()).max(2);
    match a.mode {
        ModeArg::Theorem => {
            let eps = a
                .eps
                .ok_or_else(|| CliError::Input("theorem mode needs --eps".into()))?;
            derive_params(delta, a.k, a.t, eps).map_err(input)
        }
        ModeArg::Manual => {
            let lambda = a
                .lambda
                .ok_or_else(|| CliError::Input("manual mode needs --lambda".into()))?;
            let ell = a
                .ell
                .ok_or_else(|| CliError::Input("manual mode needs --ell".into()))?;
            let q = q.ok_or_else(|| CliError::Input("manual mode needs a list size".into()))?;
            manual_params(delta, a.k, a.t, lambda, ell, q).map_err(input)
        }
    }
}

/// Lists and parameters for a colouring command.
fn setup(
    lists: &ListArgs,
    algo: &AlgoArgs,
    g: &Graph,
    seed: u64,
) -> Result<(Vec<Vec<u64>>, Params), CliError> {
    match algo.mode {
        ModeArg::Theorem => {
            let params = build_params(algo, g, None)?;
            let fallback = params.q.map(|q| q.ceil() as usize);
            let lists = load_lists(lists, g, fallback, seed)?;
            uniform_size(&lists)?;
            Ok((lists, params))
        }
        ModeArg::Manual => {
            let lists = load_lists(lists, g, None, seed)?;
            let q = uniform_size(&lists)?;
            let params = build_params(algo, g, Some(q))?;
            Ok((lists, params))
        }
    }
}

#[derive(Debug)]
pub struct ColourOutput {
    pub colouring: Option<Vec<u64>>,
    pub report: RunReport,
}

pub fn colour(
    g: &Graph,
    lists: &[Vec<u64>],
    params: &Params,
    config: &PipelineConfig,
) -> Result<ColourOutput, CliError> {
    match colour_graph(g, lists, params, config) {
        Ok(r) => Ok(ColourOutput {
            colouring: r.colouring,
            report: r.report,
        }),
        Err(PipelineError::Verification(v)) => Err(CliError::Verification(format!(
            "pipeline output failed verification: {}",
            describe(&v)
        ))),
        Err(e) => Err(input(e)),
    }
}

fn describe(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn report_text(r: &RunReport) -> String {
    let value = serde_json::to_value(r).expect("serialisable");
    let mut out = String::new();
    if let serde_json::Value::Object(map) = value {
        for (key, v) in map {
            let _ = writeln!(out, "{key}: {v}");
        }
    }
    out
}

pub(crate) fn cmd_colour(a: &ColourArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.graph)?;
    let (lists, params) = setup(&a.lists, &a.algo, &g, a.seed)?;
    if let Some(path) = &a.lists_out {
        std::fs::write(path, lists_to_json(&lists) + "\n")?;
    }
    let config = PipelineConfig {
        seed: a.seed,
        phase1_budget: a.budget,
        phase2_budget: a.phase2_budget,
        max_attempts: a.max_attempts,
        timing: a.timing,
    };
    let out = colour(&g, &lists, &params, &config)?;
    let report = match a.format {
        Format::Json => json(&out.report),
        Format::Text => report_text(&out.report),
    };
    match &a.report {
        Some(path) => std::fs::write(path, &report)?,
        None => eprint!("{report}"),
    }
    match out.colouring {
        Some(c) => {
            emit(a.out.as_deref(), &(colouring_to_json(&c) + "\n"))?;
            Ok(EXIT_OK)
        }
        None => Ok(EXIT_BUDGET),
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsReport {
    #[serde(flatten)]
    pub params: Params,
    pub n: usize,
    pub t0_bound: f64,
    pub step_budget: u64,
    /// `q_target − q`; negative when the list size misses the target.
    pub q_margin: Option<f64>,
}

pub fn params_report(
    delta: usize,
    k: usize,
    t: f64,
    eps: f64,
    n: usize,
) -> Result<ParamsReport, CliError> {
    let params = derive_params(delta, k, t, eps).map_err(input)?;
    Ok(ParamsReport {
        n,
        t0_bound: params.t0_bound(n),
        step_budget: params.step_budget(n),
        q_margin: params.q.zip(params.q_target).map(|(q, target)| target - q),
        params,
    })
}

fn params_text(r: &ParamsReport) -> String {
    let p = &r.params;
    let opt = |x: Option<f64>| x.map_or("undefined".to_string(), |v| format!("{v:.6e}"));
    let mut s = String::new();
    let eps = p.epsilon.map_or("-".to_string(), |e| e.to_string());
    let _ = writeln!(
        s,
        "Δ = {}, k = {}, t = {}, ε = {eps}",
        p.delta_max, p.k, p.t
    );
    let _ = writeln!(s, "a = {:.6}", p.a);
    let _ = writeln!(s, "λ = {:.6e}", p.lambda);
    let _ = writeln!(s, "ℓ = {:.6e}", p.ell);
    if let Some(c) = &p.certificate {
        let _ = writeln!(s, "β = {:.6e}", c.certificate.beta);
        let _ = writeln!(s, "γ = {:.6e}", c.certificate.gamma);
    }
    let _ = writeln!(s, "r = {}", opt(p.r));
    let _ = writeln!(s, "q = {}", opt(p.q));
    let _ = writeln!(s, "q target = {}", opt(p.q_target));
    let _ = writeln!(s, "q margin = {}", opt(r.q_margin));
    let _ = writeln!(
        s,
        "ψ = {:.6e}, ψ_B = {:.6e}, ψ_U = {:.6e}",
        p.psi, p.psi_b, p.psi_u
    );
    let _ = writeln!(
        s,
        "T0 bound (n = {}) = {:.6e}, step budget = {}",
        r.n, r.t0_bound, r.step_budget
    );
    let _ = writeln!(s, "hypotheses:");
    for h in &p.hypotheses {
        let mark = if h.holds { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "  [{mark}] {}: {}", h.name, h.detail);
    }
    s
}

pub(crate) fn cmd_params(a: &ParamsArgs) -> Result<i32, CliError> {
    let r = params_report(a.delta, a.k, a.t, a.eps, a.n)?;
    let text = match a.format {
        Format::Json => json(&r),
        Format::Text => params_text(&r),
    };
    emit(None, &text)?;
    Ok(EXIT_OK)
}

#[derive(Clone, Debug, Serialize)]
pub struct OccupancyRow {
    pub lambda: f64,
    pub fraction: f64,
    pub estimated: bool,
    /// `1/(β+γΔ)`; absent for edgeless graphs.
    pub bound: Option<f64>,
    pub bound_holds: Option<bool>,
    pub log_z: Option<f64>,
    pub log_z_bound: Option<f64>,
    pub mean_size: Option<f64>,
    pub mean_size_bound: Option<f64>,
}

/// One row per fugacity. With `samples`, the fraction is estimated from
/// exact hard-core samples (the graph must have no `P_{k-1}`); otherwise it
/// is computed by enumeration.
pub fn occupancy(
    g: &Graph,
    lambdas: &[f64],
    a: f64,
    samples: Option<(u64, usize, u64)>,
) -> Result<Vec<OccupancyRow>, CliError> {
    if g.n() == 0 {
        return Err(CliError::Input("graph has no vertices".into()));
    }
    let delta = g.max_degree();
    let cover = Cover::of_graph(g);
    lambdas
        .iter()
        .map(|&lambda| {
            let bound = if delta > 0 {
                let cert = derive_occupancy_certificate(a, delta as f64, lambda).map_err(input)?;
                Some(cert.certificate.fraction_bound(delta))
            } else {
                None
            };
            let (fraction, estimated, lower) = match samples {
                Some((count, k, seed)) => {
                    let mut sampler = PkFreeSampler::new(&cover, lambda, k).map_err(input)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let total: usize = (0..count).map(|_| sampler.sample(&mut rng).len()).sum();
                    (
                        total as f64 / (count.max(1) as f64 * g.n() as f64),
                        true,
                        None,
                    )
                }
                None => {
                    let fraction = occupancy_fraction(g, lambda).map_err(input)?;
                    let lower = match log_z_lower_bounds(g, lambda, a) {
                        Ok(b) => Some(b),
                        Err(HardCoreError::AverageDegree { .. }) => None,
                        Err(e) => return Err(input(e)),
                    };
                    (fraction, false, lower)
                }
            };
            Ok(OccupancyRow {
                lambda,
                fraction,
                estimated,
                bound,
                bound_holds: bound.map(|b| fraction >= b),
                log_z: lower.map(|b| b.log_z),
                log_z_bound: lower.map(|b| b.sparse_bound),
                mean_size: lower.map(|b| b.mean_size),
                mean_size_bound: lower.map(|b| b.mean_bound),
            })
        })
        .collect()
}

fn occupancy_text(rows: &[OccupancyRow]) -> String {
    let cell = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
    let mut s = format!(
        "{:>8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n",
        "lambda", "fraction", "bound", "log_z", "log_z_lb", "mean", "mean_lb"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            r.lambda,
            format!("{:.6}{}", r.fraction, if r.estimated { "~" } else { "" }),
            cell(r.bound),
            cell(r.log_z),
            cell(r.log_z_bound),
            cell(r.mean_size),
            cell(r.mean_size_bound),
        );
    }
    s
}

pub(crate) fn cmd_occupancy(a: &OccupancyArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.graph)?;
    let rows = occupancy(&g, &a.lambda, a.a, a.samples.map(|s| (s, a.k, a.seed)))?;
    let text = match a.format {
        Format::Json => json(&rows),
        Format::Text => occupancy_text(&rows),
    };
    emit(None, &text)?;
    Ok(EXIT_OK)
}

pub fn verify(g: &Graph, lists: &[Vec<u64>], colouring: &[u64]) -> Vec<Violation> {
    check_list_colouring(g, lists, colouring)
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    valid: bool,
    violations: &'a [Violation],
}

pub(crate) fn cmd_verify(a: &VerifyArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.graph)?;
    let lists = load_lists(&a.lists, &g, None, a.seed)?;
    let colouring = colouring_from_json(&read(&a.colouring)?, g.n()).map_err(CliError::Input)?;
    let violations = verify(&g, &lists, &colouring);
    let text = match a.format {
        Format::Json => json(&VerifyReport {
            valid: violations.is_empty(),
            violations: &violations,
        }),
        Format::Text if violations.is_empty() => "valid\n".to_string(),
        Format::Text => violations.iter().map(|v| format!("{v}\n")).collect(),
    };
    emit(None, &text)?;
    Ok(if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

#[derive(Debug, Serialize)]
pub struct ExploreSummary {
    pub runs: u64,
    pub flawless_runs: u64,
    pub b_flaws_addressed: u64,
    pub b_flaw_persisted: u64,
    /// Fraction of `AddressB(u)` steps after which `B_u` was still present.
    pub estimate: Option<f64>,
    /// `1/(4Δ³)`, for comparison only.
    pub reference_bound: f64,
}

/// Phase one from `runs` consecutive seeds, counting how often `B_u` survives
/// `AddressB(u)`.
pub fn explore_b(
    cover: &Cover,
    params: &Params,
    seed: u64,
    runs: u64,
    budget: Option<u64>,
    jobs: usize,
) -> Result<ExploreSummary, CliError> {
    let budget = budget.unwrap_or_else(|| params.step_budget(cover.base().n()));
    let stats = pool(jobs)?.install(|| {
        (0..runs)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                run_phase1(cover, params, &mut rng, budget).map_err(input)
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let addressed: u64 = stats.iter().map(|r| r.stats.b_flaws_addressed).sum();
    let persisted: u64 = stats.iter().map(|r| r.stats.b_flaw_persisted).sum();
    let d = params.delta_max as f64;
    Ok(ExploreSummary {
        runs,
        flawless_runs: stats
            .iter()
            .filter(|r| r.outcome == hardcol::resampler::Phase1Outcome::Flawless)
            .count() as u64,
        b_flaws_addressed: addressed,
        b_flaw_persisted: persisted,
        estimate: (addressed > 0).then(|| persisted as f64 / addressed as f64),
        reference_bound: 1.0 / (4.0 * d * d * d),
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(input)
}

pub(crate) fn cmd_explore_b(a: &ExploreArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.graph)?;
    let (lists, params) = setup(&a.lists, &a.algo, &g, a.seed)?;
    let cover = Cover::from_lists(g, &lists).map_err(input)?;
    let summary = explore_b(&cover, &params, a.seed, a.runs, a.budget, a.jobs)?;
    let text = match a.format {
        Format::Json => json(&summary),
        Format::Text => format!(
            "runs {} (flawless {}), AddressB steps {}, B flaw survived {}, rate {}, reference 1/(4Δ³) = {:.3e}\n",
            summary.runs,
            summary.flawless_runs,
            summary.b_flaws_addressed,
            summary.b_flaw_persisted,
            summary.estimate.map_or("-".into(), |e| format!("{e:.4e}")),
            summary.reference_bound
        ),
    };
    emit(None, &text)?;
    Ok(EXIT_OK)
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub q: usize,
    pub outcome: Option<Outcome>,
    pub attempts: u32,
    pub steps: u64,
    pub resamplings: u64,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchSummary {
    pub runs: u64,
    pub successes: u64,
    pub verified: u64,
    pub verification_failures: u64,
    pub rows: Vec<BenchRow>,
}

/// Generates and colours `runs` instances with seeds `seed, seed+1, ...`;
/// the list size defaults to each instance's maximum degree plus one.
pub fn bench(
    spec: &GraphSpec,
    algo: &AlgoArgs,
    q: Option<usize>,
    seed: u64,
    runs: u64,
    budget: Option<u64>,
    jobs: usize,
) -> Result<BenchSummary, CliError> {
    let rows = pool(jobs)?.install(|| {
        (0..runs)
            .into_par_iter()
            .map(|i| bench_one(spec, algo, q, seed.wrapping_add(i), budget))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(BenchSummary {
        runs,
        successes: rows
            .iter()
            .filter(|r| r.outcome == Some(Outcome::Success))
            .count() as u64,
        verified: rows.iter().filter(|r| r.verified).count() as u64,
        verification_failures: rows
            .iter()
            .filter(|r| r.outcome == Some(Outcome::Success) && !r.verified || r.error.is_some())
            .count() as u64,
        rows,
    })
}

fn bench_one(
    spec: &GraphSpec,
    algo: &AlgoArgs,
    q: Option<usize>,
    seed: u64,
    budget: Option<u64>,
) -> Result<BenchRow, CliError> {
    let g = generate_graph(spec, seed)?;
    let q = q.unwrap_or(g.max_degree() + 1);
    let lists = uniform_lists(g.n(), q);
    let params = build_params(algo, &g, Some(q))?;
    let config = PipelineConfig {
        phase1_budget: budget,
        ..PipelineConfig::with_seed(seed)
    };
    let mut row = BenchRow {
        seed,
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        q,
        outcome: None,
        attempts: 0,
        steps: 0,
        resamplings: 0,
        verified: false,
        error: None,
    };
    match colour(&g, &lists, &params, &config) {
        Ok(out) => {
            row.outcome = Some(out.report.outcome);
            row.attempts = out.report.attempts;
            row.steps = out.report.phase1.steps;
            row.resamplings = out.report.resamplings;
            row.verified = out
                .colouring
                .is_some_and(|c| check_list_colouring(&g, &lists, &c).is_empty());
        }
        Err(CliError::Verification(msg)) => row.error = Some(msg),
        Err(e) => return Err(e),
    }
    Ok(row)
}

pub(crate) fn cmd_bench(a: &BenchArgs) -> Result<i32, CliError> {
    let summary = bench(&a.graph, &a.algo, a.q, a.seed, a.runs, a.budget, a.jobs)?;
    let text = match a.format {
        Format::Json => json(&summary),
        Format::Text => {
            let mut s = String::new();
            for r in &summary.rows {
                let outcome = r.outcome.map_or("error".to_string(), |o| {
                    serde_json::to_string(&o).expect("serialisable")
                });
                let _ = writeln!(
                    s,
                    "seed {:>6}  n {:>5}  Δ {:>3}  q {:>3}  {outcome:<24} steps {:>7}  resamplings {:>5}  verified {}",
                    r.seed, r.n, r.max_degree, r.q, r.steps, r.resamplings, r.verified
                );
            }
            let _ = writeln!(
                s,
                "{} runs, {} succeeded, {} verified",
                summary.runs, summary.successes, summary.verified
            );
            s
        }
    };
    emit(None, &text)?;
    Ok(if summary.verification_failures > 0 {
        EXIT_VERIFY
    } else if summary.successes < summary.runs {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}
