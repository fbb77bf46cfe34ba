use super::{Interpolant, KnotSeries};
use crate::error::Result;

/// Straight line between the two knots bracketing each query.
#[derive(Debug, Clone)]
pub struct PiecewiseLinear {
    knots: KnotSeries,
}

impl PiecewiseLinear {
    pub fn fit(knots: &KnotSeries) -> Result<Self> {
        Ok(Self {
            knots: knots.clone(),
        })
    }

    pub(crate) fn eval_on(knots: &KnotSeries, t: f64) -> Result<f64> {
        knots.check_in_range(t)?;
        let (ts, vs) = (knots.times(), knots.values());
        let i = ts.partition_point(|&p| p <= t).clamp(1, ts.len() - 1);
        let (t0, t1) = (ts[i - 1], ts[i]);
        if t == t0 {
            return Ok(vs[i - 1]);
        }
        let a = (t - t0) / (t1 - t0);
        Ok(vs[i - 1] + a * (vs[i] - vs[i - 1]))
    }
}

impl Interpolant for PiecewiseLinear {
    fn eval(&self, t: f64) -> Result<f64> {
        Self::eval_on(&self.knots, t)
    }
}

pub fn linear_interp(knots: &KnotSeries, queries: &[f64]) -> Result<Vec<f64>> {
    PiecewiseLinear::fit(knots)?.eval_many(queries)
}
