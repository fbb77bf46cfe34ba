//! Classical 1-D interpolators used as comparison baselines, and the uniform
//! [`interpolate_with`] entry point that also drives LLI.
//!
//! Every baseline is a fitted object implementing [`Interpolant`]; the
//! `*_interp` functions fit once and evaluate a batch of queries. By default
//! [`interpolate_with`] fits each baseline on the `k` knots nearest to every
//! query (the same amount of data LLI sees); RBF and kriging can instead solve
//! one dense system over all knots (`MethodConfig::global_solve`).

mod kriging;
mod linear;
mod makima;
mod pchip;
mod rbf;
mod spline;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use kriging::{kriging_interp, ExponentialVariogram, OrdinaryKriging};
pub use linear::{linear_interp, PiecewiseLinear};
pub use makima::{makima_interp, makima_slopes, Makima};
pub use pchip::{pchip_interp, pchip_slopes, Pchip};
pub use rbf::{rbf_interp, Multiquadric};
pub use spline::{spline_interp, NaturalSpline};

use crate::error::{ensure_finite, Error, Result};
use crate::lli::{self, LliConfig, Neighborhood};

/// Knot abscissae (sample-index units) and values (cm) for one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl KnotSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: times.len(),
                actual: values.len(),
            });
        }
        if times.len() < 2 {
            return Err(Error::InvalidKnots(format!(
                "at least 2 knots required, got {}",
                times.len()
            )));
        }
        ensure_finite(&times, "knot times")?;
        ensure_finite(&values, "knot values")?;
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidKnots(
                "knot times must be strictly increasing".into(),
            ));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn first_time(&self) -> f64 {
        self.times[0]
    }

    pub fn last_time(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// Index of the knot exactly at `t`, if any.
    pub fn knot_at(&self, t: f64) -> Option<usize> {
        self.times.binary_search_by(|p| p.total_cmp(&t)).ok()
    }

    /// Contiguous sub-series `[lo, hi)`.
    pub fn slice(&self, lo: usize, hi: usize) -> KnotSeries {
        KnotSeries {
            times: self.times[lo..hi].to_vec(),
            values: self.values[lo..hi].to_vec(),
        }
    }

    /// Index range of the `count` knots nearest to `t` (ties go to the earlier
    /// knot). For `t` strictly inside the series the range always contains the
    /// two knots bracketing `t`, even when one side is much farther away.
    pub fn nearest_range(&self, t: f64, count: usize) -> (usize, usize) {
        let n = self.len();
        let count = count.min(n);
        let mut hi = self.times.partition_point(|&p| p < t);
        let mut lo = hi;
        if count >= 2 && hi > 0 && hi < n {
            lo -= 1;
            hi += 1;
        }
        while hi - lo < count {
            let take_left = lo > 0 && (hi == n || t - self.times[lo - 1] <= self.times[hi] - t);
            if take_left {
                lo -= 1;
            } else {
                hi += 1;
            }
        }
        (lo, hi)
    }

    pub(crate) fn check_in_range(&self, t: f64) -> Result<()> {
        let (min, max) = (self.first_time(), self.last_time());
        if t.is_finite() && t >= min && t <= max {
            Ok(())
        } else {
            Err(Error::ExtrapolationUnsupported { query: t, min, max })
        }
    }

    fn require(&self, min: usize, what: &str) -> Result<()> {
        if self.len() < min {
            return Err(Error::InvalidKnots(format!(
                "{what} needs at least {min} knots, got {}",
                self.len()
            )));
        }
        Ok(())
    }
}

/// A fitted interpolant for one axis.
pub trait Interpolant {
    fn eval(&self, t: f64) -> Result<f64>;

    fn eval_many(&self, queries: &[f64]) -> Result<Vec<f64>> {
        queries.iter().map(|&q| self.eval(q)).collect()
    }
}

/// The seven compared methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodId {
    Lli,
    Linear,
    Spline,
    Makima,
    Pchip,
    Rbf,
    Kriging,
}

impl MethodId {
    pub const ALL: [MethodId; 7] = [
        MethodId::Lli,
        MethodId::Linear,
        MethodId::Spline,
        MethodId::Makima,
        MethodId::Pchip,
        MethodId::Rbf,
        MethodId::Kriging,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::Lli => "lli",
            MethodId::Linear => "linear",
            MethodId::Spline => "spline",
            MethodId::Makima => "makima",
            MethodId::Pchip => "pchip",
            MethodId::Rbf => "rbf",
            MethodId::Kriging => "kriging",
        }
    }

    /// Fewest knots the method can be fitted on.
    pub fn min_knots(self) -> usize {
        match self {
            MethodId::Spline | MethodId::Kriging => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        MethodId::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// Settings shared by all methods in [`interpolate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MethodConfig {
    /// LLI settings; `lli.k` is also the local window size of the baselines.
    pub lli: LliConfig,
    /// Fit RBF and kriging once over all knots instead of per-query windows.
    pub global_solve: bool,
    /// Multiquadric shape parameter; mean knot spacing when `None`.
    pub rbf_shape: Option<f64>,
}

impl MethodConfig {
    pub fn with_lli(lli: LliConfig) -> Self {
        Self {
            lli,
            ..Self::default()
        }
    }
}

fn fit_baseline(
    method: MethodId,
    knots: &KnotSeries,
    config: &MethodConfig,
) -> Result<Box<dyn Interpolant>> {
    Ok(match method {
        MethodId::Linear => Box::new(PiecewiseLinear::fit(knots)?),
        MethodId::Spline => Box::new(NaturalSpline::fit(knots)?),
        MethodId::Makima => Box::new(Makima::fit(knots)?),
        MethodId::Pchip => Box::new(Pchip::fit(knots)?),
        MethodId::Rbf => Box::new(Multiquadric::fit(knots, config.rbf_shape)?),
        MethodId::Kriging => Box::new(OrdinaryKriging::fit(knots)?),
        MethodId::Lli => unreachable!("LLI is not a fitted baseline"),
    })
}

/// Evaluates `method` at every query time.
///
/// Baselines reject queries outside the knot range with
/// [`Error::ExtrapolationUnsupported`]. LLI fills interior queries from the
/// known samples around them and extrapolates queries after the last knot
/// (repeatedly, one sample at a time, when several trailing samples are lost).
pub fn interpolate_with(
    method: MethodId,
    knots: &KnotSeries,
    queries: &[f64],
    config: &MethodConfig,
) -> Result<Vec<f64>> {
    config.lli.validate()?;
    ensure_finite(queries, "queries")?;
    if method == MethodId::Lli {
        return lli_queries(knots, queries, &config.lli);
    }
    knots.require(method.min_knots(), method.name())?;
    for &q in queries {
        knots.check_in_range(q)?;
    }

    let global = config.global_solve && matches!(method, MethodId::Rbf | MethodId::Kriging);
    if global {
        return fit_baseline(method, knots, config)?.eval_many(queries);
    }

    let window = config.lli.k.max(method.min_knots());
    queries
        .iter()
        .map(|&q| {
            if let Some(i) = knots.knot_at(q) {
                return Ok(knots.values[i]);
            }
            if method == MethodId::Linear {
                return PiecewiseLinear::eval_on(knots, q);
            }
            let (lo, hi) = knots.nearest_range(q, window);
            fit_baseline(method, &knots.slice(lo, hi), config)?.eval(q)
        })
        .collect()
}

fn lli_queries(knots: &KnotSeries, queries: &[f64], config: &LliConfig) -> Result<Vec<f64>> {
    let last = knots.last_time();
    let mut trailing: Option<Vec<f64>> = None;
    queries
        .iter()
        .map(|&q| {
            if let Some(i) = knots.knot_at(q) {
                return Ok(knots.values[i]);
            }
            if q < knots.first_time() {
                return Err(Error::InsufficientHistory {
                    needed: config.before_needed(),
                    available: 0,
                });
            }
            if q < last {
                return lli_interior(knots, q, config);
            }
            let steps = q - last;
            if steps.fract() != 0.0 {
                return Err(Error::InvalidKnots(format!(
                    "LLI extrapolation needs whole sample steps past the last knot, got {steps}"
                )));
            }
            let steps = steps as usize;
            let series = trailing.get_or_insert_with(|| knots.values.clone());
            let have = series.len() - knots.len();
            for _ in have..steps {
                let next = lli::extrapolate_next(series, config)?;
                series.push(next);
            }
            Ok(series[knots.len() + steps - 1])
        })
        .collect()
}

/// One interior query: within-range mode when enough known samples follow it,
/// otherwise extrapolation from the samples before it.
fn lli_interior(knots: &KnotSeries, q: f64, config: &LliConfig) -> Result<f64> {
    let split = knots.times.partition_point(|&t| t < q);
    let before = &knots.values[..split];
    let after = &knots.values[split..];
    if after.len() >= config.after_needed() {
        let nbhd = Neighborhood {
            before: &before[before.len().saturating_sub(config.before_needed())..],
            after: &after[..config.after_needed()],
            gap_index: q as i64,
        };
        lli::interpolate_in_range(&nbhd, config)
    } else {
        lli::extrapolate_next(before, config)
    }
}
