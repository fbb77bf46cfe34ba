use nalgebra::{DMatrix, DVector, Dyn, LU};

use super::{Interpolant, KnotSeries};
use crate::error::{Error, Result};

/// `gamma(h) = sill * (1 - exp(-h / range))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialVariogram {
    pub sill: f64,
    pub range: f64,
}

impl ExponentialVariogram {
    /// Range is a quarter of the knot time span; sill is the sample variance of
    /// the knot values (1 when the values are constant).
    pub fn from_knots(knots: &KnotSeries) -> Self {
        let v = knots.values();
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        Self {
            sill: if var > 0.0 { var } else { 1.0 },
            range: (knots.last_time() - knots.first_time()) / 4.0,
        }
    }

    pub fn gamma(&self, h: f64) -> f64 {
        self.sill * (1.0 - (-h.abs() / self.range).exp())
    }
}

/// Ordinary kriging over the time axis.
///
/// Weights solve `[Gamma 1; 1^T 0] [w; mu] = [gamma_0; 1]`, so they sum to one.
/// Predictions use the equivalent dual form
/// `sum_i alpha_i gamma(|t - t_i|) + alpha_n` with `[alpha] = A^-1 [y; 0]`.
#[derive(Debug, Clone)]
pub struct OrdinaryKriging {
    knots: KnotSeries,
    variogram: ExponentialVariogram,
    lu: LU<f64, Dyn, Dyn>,
    dual: Vec<f64>,
}

impl OrdinaryKriging {
    pub fn fit(knots: &KnotSeries) -> Result<Self> {
        Self::with_variogram(knots, ExponentialVariogram::from_knots(knots))
    }

    pub fn with_variogram(knots: &KnotSeries, variogram: ExponentialVariogram) -> Result<Self> {
        knots.require(3, "kriging")?;
        let t = knots.times();
        let n = t.len();
        let a = DMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => variogram.gamma(t[i] - t[j]),
            (false, false) => 0.0,
            _ => 1.0,
        });
        let lu = a.lu();
        let mut rhs = DVector::zeros(n + 1);
        rhs.rows_mut(0, n).copy_from_slice(knots.values());
        let dual = lu
            .solve(&rhs)
            .filter(|x| x.iter().all(|v| v.is_finite()))
            .ok_or(Error::SingularSystem("kriging system"))?;
        Ok(Self {
            knots: knots.clone(),
            variogram,
            lu,
            dual: dual.as_slice().to_vec(),
        })
    }

    pub fn variogram(&self) -> ExponentialVariogram {
        self.variogram
    }

    /// Kriging weights for a query (without the Lagrange multiplier).
    pub fn weights_at(&self, q: f64) -> Result<Vec<f64>> {
        let t = self.knots.times();
        let n = t.len();
        let mut rhs = DVector::from_element(n + 1, 1.0);
        for i in 0..n {
            rhs[i] = self.variogram.gamma(q - t[i]);
        }
        let sol = self
            .lu
            .solve(&rhs)
            .ok_or(Error::SingularSystem("kriging system"))?;
        Ok(sol.as_slice()[..n].to_vec())
    }
}

impl Interpolant for OrdinaryKriging {
    fn eval(&self, q: f64) -> Result<f64> {
        self.knots.check_in_range(q)?;
        if let Some(i) = self.knots.knot_at(q) {
            return Ok(self.knots.values()[i]);
        }
        let t = self.knots.times();
        let n = t.len();
        let sum: f64 = t
            .iter()
            .zip(&self.dual[..n])
            .map(|(ti, a)| a * self.variogram.gamma(q - ti))
            .sum();
        Ok(sum + self.dual[n])
    }
}

pub fn kriging_interp(knots: &KnotSeries, queries: &[f64]) -> Result<Vec<f64>> {
    OrdinaryKriging::fit(knots)?.eval_many(queries)
}
