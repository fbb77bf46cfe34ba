use super::{Interpolant, KnotSeries};
use crate::error::Result;

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson).
#[derive(Debug, Clone)]
pub struct Pchip {
    knots: KnotSeries,
    slopes: Vec<f64>,
}

/// Knot derivatives: weighted harmonic mean of neighbouring secants, zero where
/// the secants change sign, and the shape-preserving three-point rule at the ends.
pub fn pchip_slopes(times: &[f64], values: &[f64]) -> Vec<f64> {
    let n = times.len();
    let h: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let m: Vec<f64> = (0..n - 1).map(|i| (values[i + 1] - values[i]) / h[i]).collect();
    if n == 2 {
        return vec![m[0], m[0]];
    }
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        if m[i - 1] * m[i] <= 0.0 {
            d[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
        }
    }
    d[0] = end_slope(h[0], h[1], m[0], m[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
    d
}

fn end_slope(h0: f64, h1: f64, m0: f64, m1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if sign(d) != sign(m0) {
        0.0
    } else if sign(m0) != sign(m1) && d.abs() > 3.0 * m0.abs() {
        3.0 * m0
    } else {
        d
    }
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Cubic Hermite evaluation on one segment.
pub(crate) fn hermite(t0: f64, t1: f64, y0: f64, y1: f64, d0: f64, d1: f64, q: f64) -> f64 {
    let h = t1 - t0;
    let s = (q - t0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * h * d0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * h * d1
}

pub(crate) fn eval_hermite(knots: &KnotSeries, slopes: &[f64], q: f64) -> Result<f64> {
    knots.check_in_range(q)?;
    let (t, y) = (knots.times(), knots.values());
    let i = t.partition_point(|&p| p <= q).clamp(1, t.len() - 1) - 1;
    if q == t[i] {
        return Ok(y[i]);
    }
    Ok(hermite(t[i], t[i + 1], y[i], y[i + 1], slopes[i], slopes[i + 1], q))
}

impl Pchip {
    pub fn fit(knots: &KnotSeries) -> Result<Self> {
        Ok(Self {
            slopes: pchip_slopes(knots.times(), knots.values()),
            knots: knots.clone(),
        })
    }
}

impl Interpolant for Pchip {
    fn eval(&self, q: f64) -> Result<f64> {
        eval_hermite(&self.knots, &self.slopes, q)
    }
}

pub fn pchip_interp(knots: &KnotSeries, queries: &[f64]) -> Result<Vec<f64>> {
    Pchip::fit(knots)?.eval_many(queries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_middle_segment() {
        // Secants [1, 0, 1]: both interior derivatives are zero, segment stays at 1.
        let k = KnotSeries::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 1.0, 2.0]).unwrap();
        assert_eq!(pchip_interp(&k, &[1.5]).unwrap(), vec![1.0]);
    }

    #[test]
    fn zero_slope_at_local_extremum() {
        let d = pchip_slopes(&[0.0, 1.0, 2.0], &[0.0, 2.0, 1.0]);
        assert_eq!(d[1], 0.0);
    }

    #[test]
    fn stays_within_bracketing_knots_on_monotone_data() {
        let t = vec![0.0, 1.0, 1.5, 4.0, 5.0];
        let v = vec![0.0, 0.1, 3.0, 3.2, 9.0];
        let k = KnotSeries::new(t.clone(), v.clone()).unwrap();
        for i in 0..t.len() - 1 {
            for s in 1..10 {
                let q = t[i] + (t[i + 1] - t[i]) * s as f64 / 10.0;
                let y = pchip_interp(&k, &[q]).unwrap()[0];
                assert!(y >= v[i] - 1e-12 && y <= v[i + 1] + 1e-12);
            }
        }
    }
}
