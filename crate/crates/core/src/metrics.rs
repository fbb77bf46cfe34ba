//! Error statistics: per-point errors, MSE, per-axis error, spread across runs,
//! the empirical error CDF and its quantiles, plus the metrics CSV formats.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointError {
    pub index: i64,
    pub euclidean: f64,
    pub x_error: f64,
    pub y_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub per_point: Vec<PointError>,
    /// Mean Euclidean distance, cm.
    pub mean_euclidean: f64,
    /// Mean squared Euclidean distance, cm^2.
    pub mse: f64,
    /// Mean absolute x error, cm.
    pub mean_x_error: f64,
    pub count: usize,
}

impl ErrorReport {
    pub fn from_points(per_point: Vec<PointError>) -> Result<Self> {
        if per_point.is_empty() {
            return Err(Error::Validation("no points to score".into()));
        }
        let n = per_point.len() as f64;
        let mean_euclidean = per_point.iter().map(|p| p.euclidean).sum::<f64>() / n;
        let mse = per_point.iter().map(|p| p.euclidean * p.euclidean).sum::<f64>() / n;
        let mean_x_error = per_point.iter().map(|p| p.x_error).sum::<f64>() / n;
        Ok(Self {
            count: per_point.len(),
            per_point,
            mean_euclidean,
            mse,
            mean_x_error,
        })
    }

    pub fn euclidean_errors(&self) -> Vec<f64> {
        self.per_point.iter().map(|p| p.euclidean).collect()
    }
}

/// Scores aligned `(index, x, y)` estimates against the truth.
pub fn compute_errors(truth: &[(i64, f64, f64)], estimates: &[(i64, f64, f64)]) -> Result<ErrorReport> {
    if truth.len() != estimates.len() {
        return Err(Error::LengthMismatch {
            expected: truth.len(),
            actual: estimates.len(),
        });
    }
    let per_point = truth
        .iter()
        .zip(estimates)
        .map(|(&(i, tx, ty), &(j, ex, ey))| {
            if i != j {
                return Err(Error::Validation(format!(
                    "misaligned indices {i} and {j}"
                )));
            }
            let dx = (ex - tx).abs();
            let dy = (ey - ty).abs();
            Ok(PointError {
                index: i,
                euclidean: dx.hypot(dy),
                x_error: dx,
                y_error: dy,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ErrorReport::from_points(per_point)
}

/// Empirical CDF stored at the distinct sorted errors.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfCurve {
    sorted_errors: Vec<f64>,
    probabilities: Vec<f64>,
}

impl CdfCurve {
    pub fn sorted_errors(&self) -> &[f64] {
        &self.sorted_errors
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Fraction of errors `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.sorted_errors.partition_point(|&e| e <= x);
        if n == 0 {
            0.0
        } else {
            self.probabilities[n - 1]
        }
    }

    /// Smallest error value whose CDF reaches `q`.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "quantile must be in (0, 1], got {q}"
            )));
        }
        let i = self.probabilities.partition_point(|&p| p < q);
        Ok(self.sorted_errors[i.min(self.sorted_errors.len() - 1)])
    }
}

pub fn empirical_cdf(errors: &[f64]) -> Result<CdfCurve> {
    if errors.is_empty() {
        return Err(Error::Validation("empty error list".into()));
    }
    crate::error::ensure_finite(errors, "errors")?;
    let mut sorted = errors.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut sorted_errors = Vec::new();
    let mut probabilities = Vec::new();
    for (i, &e) in sorted.iter().enumerate() {
        if sorted.get(i + 1) == Some(&e) {
            continue;
        }
        sorted_errors.push(e);
        probabilities.push(if i + 1 == sorted.len() {
            1.0
        } else {
            (i + 1) as f64 / n
        });
    }
    Ok(CdfCurve {
        sorted_errors,
        probabilities,
    })
}

pub fn cdf_quantile(curve: &CdfCurve, q: f64) -> Result<f64> {
    curve.quantile(q)
}

/// Sample standard deviation (n - 1 denominator).
pub fn std_across_runs(per_run_means: &[f64]) -> Result<f64> {
    if per_run_means.len() < 2 {
        return Err(Error::Validation(format!(
            "spread needs at least 2 runs, got {}",
            per_run_means.len()
        )));
    }
    let n = per_run_means.len() as f64;
    let mean = per_run_means.iter().sum::<f64>() / n;
    let ss: f64 = per_run_means.iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok((ss / (n - 1.0)).sqrt())
}

/// One row of the metrics CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRow {
    pub method: String,
    pub curve_seed: u64,
    pub n_points: usize,
    pub loss_ratio: f64,
    pub mean_err: f64,
    pub mse: f64,
    pub mean_x_err: f64,
    /// Spread of the per-run mean error; NaN with fewer than two runs.
    pub std: f64,
}

pub const METRICS_HEADER: &str = "method,curve_seed,n_points,loss_ratio,mean_err,mse,mean_x_err,std";
pub const CDF_HEADER: &str = "method,error,probability";

pub fn render_metrics_csv(rows: &[MetricsRow]) -> String {
    let mut out = format!("{METRICS_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.method, r.curve_seed, r.n_points, r.loss_ratio, r.mean_err, r.mse, r.mean_x_err, r.std
        );
    }
    out
}

/// Long-form CDF table, one block per method.
pub fn render_cdf_csv(curves: &[(String, CdfCurve)]) -> String {
    let mut out = format!("{CDF_HEADER}\n");
    for (method, c) in curves {
        for (e, p) in c.sorted_errors.iter().zip(&c.probabilities) {
            let _ = writeln!(out, "{method},{e},{p}");
        }
    }
    out
}
