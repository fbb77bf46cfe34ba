use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::sweep::{BenchRecord, CellOutcome};
use super::timing::TimingRecord;
use crate::baselines::MethodId;
use crate::error::Result;
use crate::metrics::{empirical_cdf, std_across_runs, CdfCurve, MetricsRow};

pub const TIMING_HEADER: &str = "method,k,n_points,wall_time_ms";

/// One metrics CSV row per record; failed cells carry NaN statistics.
pub fn metrics_rows(records: &[BenchRecord]) -> Vec<MetricsRow> {
    records
        .iter()
        .map(|r| {
            let (mean_err, mse, mean_x_err, std) = match &r.outcome {
                CellOutcome::Scored { report, runs } => {
                    let means: Vec<f64> = runs.iter().map(|s| s.mean).collect();
                    (
                        report.mean_euclidean,
                        report.mse,
                        report.mean_x_error,
                        std_across_runs(&means).unwrap_or(f64::NAN),
                    )
                }
                CellOutcome::Failed(_) => (f64::NAN, f64::NAN, f64::NAN, f64::NAN),
            };
            MetricsRow {
                method: r.method.name().to_string(),
                curve_seed: r.curve_seed,
                n_points: r.n_points,
                loss_ratio: r.loss_ratio,
                mean_err,
                mse,
                mean_x_err,
                std,
            }
        })
        .collect()
}

/// Corpus-level statistics for one method at one loss ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub method: MethodId,
    pub loss_ratio: f64,
    /// Mean over all scored points of all successful cells.
    pub mean_err: f64,
    pub mse: f64,
    pub mean_x_err: f64,
    /// Spread of the per-run corpus means; NaN with one run.
    pub std: f64,
    pub points: usize,
    pub cells: usize,
    pub failed_cells: usize,
}

#[derive(Default)]
struct Acc {
    sum: f64,
    sum_sq: f64,
    sum_x: f64,
    points: usize,
    cells: usize,
    failed: usize,
    runs: BTreeMap<usize, (f64, usize)>,
}

/// Pools records by `(loss ratio, method)`, ratios ascending and methods in
/// first-seen order.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut methods: Vec<MethodId> = Vec::new();
    let mut ratios: Vec<f64> = Vec::new();
    let mut acc: BTreeMap<(usize, usize), Acc> = BTreeMap::new();
    for r in records {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
        if !ratios.contains(&r.loss_ratio) {
            ratios.push(r.loss_ratio);
        }
    }
    ratios.sort_by(f64::total_cmp);
    for r in records {
        let ri = ratios.iter().position(|&x| x == r.loss_ratio).unwrap();
        let mi = methods.iter().position(|&m| m == r.method).unwrap();
        let a = acc.entry((ri, mi)).or_default();
        a.cells += 1;
        match &r.outcome {
            CellOutcome::Scored { report, runs } => {
                for p in &report.per_point {
                    a.sum += p.euclidean;
                    a.sum_sq += p.euclidean * p.euclidean;
                    a.sum_x += p.x_error;
                }
                a.points += report.count;
                for s in runs {
                    let e = a.runs.entry(s.run).or_insert((0.0, 0));
                    e.0 += s.mean * s.count as f64;
                    e.1 += s.count;
                }
            }
            CellOutcome::Failed(_) => a.failed += 1,
        }
    }
    acc.into_iter()
        .map(|((ri, mi), a)| {
            let n = a.points as f64;
            let run_means: Vec<f64> = a.runs.values().map(|(s, c)| s / *c as f64).collect();
            SummaryRow {
                method: methods[mi],
                loss_ratio: ratios[ri],
                mean_err: a.sum / n,
                mse: a.sum_sq / n,
                mean_x_err: a.sum_x / n,
                std: std_across_runs(&run_means).unwrap_or(f64::NAN),
                points: a.points,
                cells: a.cells,
                failed_cells: a.failed,
            }
        })
        .collect()
}

/// Error CDF per method over every scored point, methods in first-seen order.
pub fn cdf_by_method(records: &[BenchRecord]) -> Result<Vec<(String, CdfCurve)>> {
    let mut pooled: Vec<(MethodId, Vec<f64>)> = Vec::new();
    for r in records {
        let Some(report) = r.report() else { continue };
        let idx = match pooled.iter().position(|(m, _)| *m == r.method) {
            Some(i) => i,
            None => {
                pooled.push((r.method, Vec::new()));
                pooled.len() - 1
            }
        };
        pooled[idx].1.extend(report.per_point.iter().map(|p| p.euclidean));
    }
    pooled
        .into_iter()
        .map(|(m, e)| Ok((m.name().to_string(), empirical_cdf(&e)?)))
        .collect()
}

pub fn render_timing_csv(records: &[TimingRecord]) -> String {
    let mut out = format!("{TIMING_HEADER}\n");
    for r in records {
        let _ = writeln!(out, "{},{},{},{}", r.method, r.k, r.n_points, r.wall_time_ms);
    }
    out
}

/// Fixed-width table of mean errors, one row per ratio and one column per
/// method.
pub fn render_summary_table(rows: &[SummaryRow]) -> String {
    let mut methods: Vec<MethodId> = Vec::new();
    let mut ratios: Vec<f64> = Vec::new();
    for r in rows {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
        if !ratios.contains(&r.loss_ratio) {
            ratios.push(r.loss_ratio);
        }
    }
    let mut out = format!("{:>10}", "loss_ratio");
    for m in &methods {
        let _ = write!(out, " {:>10}", m.name());
    }
    out.push('\n');
    for &ratio in &ratios {
        let _ = write!(out, "{ratio:>10}");
        for &m in &methods {
            let cell = rows
                .iter()
                .find(|r| r.method == m && r.loss_ratio == ratio)
                .map(|r| {
                    if r.points == 0 {
                        "failed".to_string()
                    } else if r.failed_cells > 0 {
                        format!("{:.3}*", r.mean_err)
                    } else {
                        format!("{:.3}", r.mean_err)
                    }
                })
                .unwrap_or_default();
            let _ = write!(out, " {cell:>10}");
        }
        out.push('\n');
    }
    if rows.iter().any(|r| r.failed_cells > 0) {
        out.push_str("* some cells failed and are excluded\n");
    }
    out
}
