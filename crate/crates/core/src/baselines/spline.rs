use super::{Interpolant, KnotSeries};
use crate::error::Result;

/// Natural cubic spline: C2 everywhere, zero second derivative at both ends.
#[derive(Debug, Clone)]
pub struct NaturalSpline {
    knots: KnotSeries,
    /// Second derivative at every knot.
    curvature: Vec<f64>,
}

impl NaturalSpline {
    pub fn fit(knots: &KnotSeries) -> Result<Self> {
        knots.require(3, "spline")?;
        let (t, y) = (knots.times(), knots.values());
        let n = t.len();
        let h: Vec<f64> = t.windows(2).map(|w| w[1] - w[0]).collect();

        // Tridiagonal system for the interior second derivatives, Thomas algorithm.
        let m = n - 2;
        let mut diag = vec![0.0; m];
        let mut upper = vec![0.0; m];
        let mut rhs = vec![0.0; m];
        for i in 0..m {
            diag[i] = 2.0 * (h[i] + h[i + 1]);
            upper[i] = h[i + 1];
            rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h[i + 1] - (y[i + 1] - y[i]) / h[i]);
        }
        for i in 1..m {
            let f = h[i] / diag[i - 1];
            diag[i] -= f * upper[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
        let mut curvature = vec![0.0; n];
        for i in (0..m).rev() {
            let next = if i + 1 < m { curvature[i + 2] } else { 0.0 };
            curvature[i + 1] = (rhs[i] - upper[i] * next) / diag[i];
        }
        Ok(Self {
            knots: knots.clone(),
            curvature,
        })
    }
}

impl Interpolant for NaturalSpline {
    fn eval(&self, q: f64) -> Result<f64> {
        self.knots.check_in_range(q)?;
        let (t, y, c) = (self.knots.times(), self.knots.values(), &self.curvature);
        let i = t.partition_point(|&p| p <= q).clamp(1, t.len() - 1) - 1;
        let h = t[i + 1] - t[i];
        let a = (t[i + 1] - q) / h;
        let b = (q - t[i]) / h;
        Ok(a * y[i]
            + b * y[i + 1]
            + ((a * a * a - a) * c[i] + (b * b * b - b) * c[i + 1]) * h * h / 6.0)
    }
}

pub fn spline_interp(knots: &KnotSeries, queries: &[f64]) -> Result<Vec<f64>> {
    NaturalSpline::fit(knots)?.eval_many(queries)
}
