use super::pchip::eval_hermite;
use super::{Interpolant, KnotSeries};
use crate::error::Result;

/// Modified Akima interpolant.
#[derive(Debug, Clone)]
pub struct Makima {
    knots: KnotSeries,
    slopes: Vec<f64>,
}

/// Knot derivatives
/// `s_i = (w1 m_{i-1} + w2 m_i) / (w1 + w2)` with
/// `w1 = |m_{i+1} - m_i| + |m_{i+1} + m_i| / 2` and
/// `w2 = |m_{i-1} - m_{i-2}| + |m_{i-1} + m_{i-2}| / 2`.
///
/// Secants are padded with two linearly extrapolated values at each end. When
/// `w1 + w2 = 0` the average of the two adjacent secants is used.
pub fn makima_slopes(times: &[f64], values: &[f64]) -> Vec<f64> {
    let n = times.len();
    let secants: Vec<f64> = (0..n - 1)
        .map(|i| (values[i + 1] - values[i]) / (times[i + 1] - times[i]))
        .collect();
    if n == 2 {
        return vec![secants[0]; 2];
    }
    // padded[j + 2] is secant m_j, for j in -2..=n
    let mut padded = Vec::with_capacity(n + 3);
    let (m0, m1) = (secants[0], secants[1]);
    let left1 = 2.0 * m0 - m1;
    padded.push(2.0 * left1 - m0);
    padded.push(left1);
    padded.extend_from_slice(&secants);
    let (a, b) = (secants[n - 2], secants[n - 3]);
    let right1 = 2.0 * a - b;
    padded.push(right1);
    padded.push(2.0 * right1 - a);

    (0..n)
        .map(|i| {
            let mm2 = padded[i];
            let mm1 = padded[i + 1];
            let m = padded[i + 2];
            let mp1 = padded[i + 3];
            let w1 = (mp1 - m).abs() + (mp1 + m).abs() / 2.0;
            let w2 = (mm1 - mm2).abs() + (mm1 + mm2).abs() / 2.0;
            if w1 + w2 == 0.0 {
                (mm1 + m) / 2.0
            } else {
                (w1 * mm1 + w2 * m) / (w1 + w2)
            }
        })
        .collect()
}

impl Makima {
    pub fn fit(knots: &KnotSeries) -> Result<Self> {
        Ok(Self {
            slopes: makima_slopes(knots.times(), knots.values()),
            knots: knots.clone(),
        })
    }
}

impl Interpolant for Makima {
    fn eval(&self, q: f64) -> Result<f64> {
        eval_hermite(&self.knots, &self.slopes, q)
    }
}

pub fn makima_interp(knots: &KnotSeries, queries: &[f64]) -> Result<Vec<f64>> {
    Makima::fit(knots)?.eval_many(queries)
}
