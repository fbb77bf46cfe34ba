use std::time::Instant;

use super::corpus::Corpus;
use super::sweep::{estimate, score_run, with_pool};
use super::ExperimentSpec;
use crate::baselines::{MethodConfig, MethodId};
use crate::error::{Error, Result};
use crate::lli::LliConfig;
use crate::metrics::ErrorReport;

/// Wall time of one method over a whole corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRecord {
    pub method: MethodId,
    pub k: usize,
    /// Interpolated points per repetition.
    pub n_points: usize,
    /// Median over the timed repetitions.
    pub wall_time_ms: f64,
    pub samples_ms: Vec<f64>,
    /// Errors of the timed estimates, pooled over the corpus in cell order.
    pub report: Option<ErrorReport>,
    pub error: Option<String>,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Estimates for every run of every cell, in corpus order.
type Estimates = Vec<Vec<(i64, f64, f64)>>;

fn time_once(corpus: &Corpus, method: MethodId, config: &MethodConfig) -> Result<(f64, Estimates)> {
    let start = Instant::now();
    let estimates = corpus
        .cells
        .iter()
        .flat_map(|c| &c.runs)
        .map(|run| estimate(run, method, config))
        .collect::<Result<Vec<_>>>()?;
    Ok((start.elapsed().as_secs_f64() * 1e3, estimates))
}

fn time_method(corpus: &Corpus, method: MethodId, config: &MethodConfig, repetitions: usize) -> Result<(Vec<f64>, ErrorReport)> {
    time_once(corpus, method, config)?;
    let mut samples = Vec::with_capacity(repetitions);
    let mut last = Vec::new();
    for _ in 0..repetitions {
        let (ms, est) = time_once(corpus, method, config)?;
        samples.push(ms);
        last = est;
    }
    let mut points = Vec::new();
    for (run, est) in corpus.cells.iter().flat_map(|c| &c.runs).zip(&last) {
        points.extend(score_run(run, est)?.per_point);
    }
    Ok((samples, ErrorReport::from_points(points)?))
}

/// Times every method on one corpus, serially.
///
/// Only interpolation calls are timed. Each `(method, k)` gets one discarded
/// warm-up pass and `repetitions` timed passes; the median is reported. LLI is
/// timed at every window size in `timing_k` (plus `k`), the baselines at `k`.
pub fn run_timing(spec: &ExperimentSpec) -> Result<Vec<TimingRecord>> {
    if spec.repetitions < 3 {
        return Err(Error::InvalidConfig(format!(
            "timing needs at least 3 repetitions, got {}",
            spec.repetitions
        )));
    }
    let mut lli_ks = vec![spec.k];
    for &k in &spec.timing_k {
        if !lli_ks.contains(&k) {
            lli_ks.push(k);
        }
    }
    let pinned = spec.pinned_for(&lli_ks);
    let corpus = with_pool(Some(1), || Corpus::build(&pinned))??;
    let n_points = corpus.query_count();

    let mut records = Vec::new();
    for &method in &spec.methods {
        let ks: &[usize] = if method == MethodId::Lli { &lli_ks } else { &lli_ks[..1] };
        for &k in ks {
            let config = MethodConfig {
                lli: LliConfig::new(k, spec.sigma)?,
                ..pinned.method_config()
            };
            let record = match time_method(&corpus, method, &config, spec.repetitions) {
                Ok((samples, report)) => TimingRecord {
                    method,
                    k,
                    n_points,
                    wall_time_ms: median(&samples),
                    samples_ms: samples,
                    report: Some(report),
                    error: None,
                },
                Err(e) => {
                    log::warn!("timing {method} (k = {k}) failed: {e}");
                    TimingRecord {
                        method,
                        k,
                        n_points,
                        wall_time_ms: f64::NAN,
                        samples_ms: Vec::new(),
                        report: None,
                        error: Some(e.to_string()),
                    }
                }
            };
            records.push(record);
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::run_accuracy_sweep;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn timing_accuracy_matches_the_sweep() {
        let spec = ExperimentSpec::from_json(
            r#"{"curve_lengths":[150],"curves_per_length":2,"loss_ratios":[0.1,0.3],
                "methods":["lli","pchip"],"master_seed":5,"repetitions":3,
                "timing_k":[5],"protect_prefix":6}"#,
        )
        .unwrap();
        let timing = run_timing(&spec).unwrap();
        assert_eq!(timing.len(), 2);
        let sweep = run_accuracy_sweep(&spec, Some(2)).unwrap();
        for t in &timing {
            assert!(t.wall_time_ms > 0.0);
            assert_eq!(t.samples_ms.len(), 3);
            let pooled: Vec<_> = sweep
                .iter()
                .filter(|r| r.method == t.method)
                .flat_map(|r| r.report().unwrap().per_point.clone())
                .collect();
            assert_eq!(t.report.as_ref().unwrap().per_point, pooled);
            assert_eq!(t.n_points, pooled.len());
        }
    }

    #[test]
    fn rejects_too_few_repetitions() {
        let mut spec = ExperimentSpec::from_json(
            r#"{"curve_lengths":[150],"curves_per_length":1,"loss_ratios":[0.1],"master_seed":5}"#,
        )
        .unwrap();
        spec.repetitions = 2;
        assert!(run_timing(&spec).is_err());
    }
}
