use std::time::Instant;

use rayon::prelude::*;

use super::corpus::{Cell, CellKey, Corpus, RunCase};
use super::{threads_from_env, ExperimentSpec};
use crate::baselines::{interpolate_with, MethodConfig, MethodId};
use crate::error::{Error, Result};
use crate::lli::LliConfig;
use crate::metrics::{compute_errors, ErrorReport};

/// Mean error of one run of a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunScore {
    pub run: usize,
    pub mean: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    /// Errors pooled over all runs, plus the per-run means.
    Scored { report: ErrorReport, runs: Vec<RunScore> },
    Failed(String),
}

/// Result of one method on one `(length, curve, ratio)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub key: CellKey,
    pub method: MethodId,
    pub k: usize,
    /// Trajectory length.
    pub n_points: usize,
    pub curve_seed: u64,
    pub loss_ratio: f64,
    /// Interpolation time summed over runs.
    pub wall_time_ms: f64,
    pub outcome: CellOutcome,
}

impl BenchRecord {
    pub fn report(&self) -> Option<&ErrorReport> {
        match &self.outcome {
            CellOutcome::Scored { report, .. } => Some(report),
            CellOutcome::Failed(_) => None,
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self.outcome, CellOutcome::Failed(_))
    }
}

/// Records for one window size of the ablation.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationGroup {
    pub k: usize,
    pub records: Vec<BenchRecord>,
}

/// Interpolates both axes of a run at its queries.
pub(crate) fn estimate(run: &RunCase, method: MethodId, config: &MethodConfig) -> Result<Vec<(i64, f64, f64)>> {
    let xs = interpolate_with(method, &run.knots_x, &run.queries, config)?;
    let ys = interpolate_with(method, &run.knots_y, &run.queries, config)?;
    Ok(run
        .truth
        .iter()
        .zip(xs.into_iter().zip(ys))
        .map(|(&(t, _, _), (x, y))| (t, x, y))
        .collect())
}

pub(crate) fn score_run(run: &RunCase, estimates: &[(i64, f64, f64)]) -> Result<ErrorReport> {
    if estimates.iter().any(|e| !(e.1.is_finite() && e.2.is_finite())) {
        return Err(Error::SingularSystem("non-finite estimate"));
    }
    compute_errors(&run.truth, estimates)
}

fn evaluate_cell(cell: &Cell, method: MethodId, config: &MethodConfig) -> BenchRecord {
    let mut elapsed = 0.0;
    let mut outcome = || -> Result<CellOutcome> {
        let mut points = Vec::new();
        let mut runs = Vec::new();
        for run in &cell.runs {
            let start = Instant::now();
            let est = estimate(run, method, config)?;
            elapsed += start.elapsed().as_secs_f64() * 1e3;
            let report = score_run(run, &est)?;
            runs.push(RunScore {
                run: run.run,
                mean: report.mean_euclidean,
                count: report.count,
            });
            points.extend(report.per_point);
        }
        Ok(CellOutcome::Scored {
            report: ErrorReport::from_points(points)?,
            runs,
        })
    };
    let outcome = outcome().unwrap_or_else(|e| {
        log::warn!(
            "{method} failed on curve {} (length {}) at ratio {}: {e}",
            cell.curve_seed,
            cell.n_points,
            cell.loss_ratio
        );
        CellOutcome::Failed(e.to_string())
    });
    BenchRecord {
        key: cell.key,
        method,
        k: config.lli.k,
        n_points: cell.n_points,
        curve_seed: cell.curve_seed,
        loss_ratio: cell.loss_ratio,
        wall_time_ms: elapsed,
        outcome,
    }
}

/// Runs `f` on a pool capped at `threads` workers, or at the environment cap.
pub(crate) fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads.or_else(threads_from_env) {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Scores `methods` on every cell; records come back in `(cell key, method)`
/// order whatever the scheduling.
pub fn evaluate_corpus(corpus: &Corpus, methods: &[MethodId], config: &MethodConfig) -> Vec<BenchRecord> {
    let jobs: Vec<(&Cell, MethodId)> = corpus
        .cells
        .iter()
        .flat_map(|c| methods.iter().map(move |&m| (c, m)))
        .collect();
    jobs.par_iter()
        .map(|&(cell, method)| evaluate_cell(cell, method, config))
        .collect()
}

/// Generates the corpus of `spec` and scores every requested method on it.
///
/// `threads` overrides the worker cap; `None` falls back to the environment
/// and then to all cores. Failed cells are recorded, not fatal.
pub fn run_accuracy_sweep(spec: &ExperimentSpec, threads: Option<usize>) -> Result<Vec<BenchRecord>> {
    let config = spec.method_config();
    with_pool(threads, || {
        let corpus = Corpus::build(spec)?;
        Ok(evaluate_corpus(&corpus, &spec.methods, &config))
    })?
}

/// LLI accuracy for each window size on one shared corpus.
///
/// The protected prefix is widened to the largest `k` so that every group
/// sees the same curves, noise and masks.
pub fn run_k_ablation(spec: &ExperimentSpec, k_values: &[usize], threads: Option<usize>) -> Result<Vec<AblationGroup>> {
    if k_values.is_empty() {
        return Err(Error::InvalidConfig("no window sizes to ablate".into()));
    }
    let configs = k_values
        .iter()
        .map(|&k| LliConfig::new(k, spec.sigma))
        .collect::<Result<Vec<_>>>()?;
    let pinned = spec.pinned_for(k_values);
    with_pool(threads, || {
        let corpus = Corpus::build(&pinned)?;
        Ok(configs
            .iter()
            .map(|&lli| AblationGroup {
                k: lli.k,
                records: evaluate_corpus(
                    &corpus,
                    &[MethodId::Lli],
                    &MethodConfig {
                        lli,
                        ..pinned.method_config()
                    },
                ),
            })
            .collect())
    })?
}
