use nalgebra::{DMatrix, DVector};

use super::{Interpolant, KnotSeries};
use crate::error::{Error, Result};

/// Radial basis interpolant `s(t) = sum_i lambda_i phi(|t - t_i|)` with the
/// multiquadric kernel `phi(r) = sqrt(r^2 + c^2)`.
#[derive(Debug, Clone)]
pub struct Multiquadric {
    knots: KnotSeries,
    shape: f64,
    lambda: Vec<f64>,
}

impl Multiquadric {
    /// Solves the collocation system `s(t_i) = y_i`. The shape `c` defaults to
    /// the mean knot spacing.
    pub fn fit(knots: &KnotSeries, shape: Option<f64>) -> Result<Self> {
        let t = knots.times();
        let n = t.len();
        let shape = shape.unwrap_or((knots.last_time() - knots.first_time()) / (n - 1) as f64);
        if !(shape.is_finite() && shape > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "RBF shape must be positive, got {shape}"
            )));
        }
        let c2 = shape * shape;
        let a = DMatrix::from_fn(n, n, |i, j| {
            let r = t[i] - t[j];
            (r * r + c2).sqrt()
        });
        let b = DVector::from_column_slice(knots.values());
        let lambda = a
            .lu()
            .solve(&b)
            .filter(|x| x.iter().all(|v| v.is_finite()))
            .ok_or(Error::SingularSystem("RBF collocation"))?;
        Ok(Self {
            knots: knots.clone(),
            shape,
            lambda: lambda.as_slice().to_vec(),
        })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.lambda
    }
}

impl Interpolant for Multiquadric {
    fn eval(&self, q: f64) -> Result<f64> {
        self.knots.check_in_range(q)?;
        let c2 = self.shape * self.shape;
        Ok(self
            .knots
            .times()
            .iter()
            .zip(&self.lambda)
            .map(|(t, l)| l * ((q - t) * (q - t) + c2).sqrt())
            .sum())
    }
}

pub fn rbf_interp(knots: &KnotSeries, queries: &[f64]) -> Result<Vec<f64>> {
    Multiquadric::fit(knots, None)?.eval_many(queries)
}
