use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Trajectory;
use crate::error::{Error, Result};

/// Bezier orders drawn by default.
pub const DEFAULT_ORDER_RANGE: (usize, usize) = (5, 14);
/// Control-point box (width, height) in cm.
pub const DEFAULT_BOX: (f64, f64) = (800.0, 1800.0);
/// Fewest samples a generated trajectory may have.
pub const MIN_SAMPLES: usize = 100;

/// A Bezier curve of a given order and how densely to sample it.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierSpec {
    pub order: usize,
    pub control_points: Vec<[f64; 2]>,
    pub n_samples: usize,
    pub seed: u64,
}

impl BezierSpec {
    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.control_points.len() != self.order + 1 {
            return Err(Error::InvalidConfig(format!(
                "order {} needs {} control points, got {}",
                self.order,
                self.order + 1,
                self.control_points.len()
            )));
        }
        if self.n_samples < MIN_SAMPLES {
            return Err(Error::InvalidConfig(format!(
                "n_samples must be at least {MIN_SAMPLES}, got {}",
                self.n_samples
            )));
        }
        Ok(())
    }

    /// De Casteljau evaluation at parameter `s` in `[0, 1]`.
    pub fn point_at(&self, s: f64) -> [f64; 2] {
        de_casteljau(&self.control_points, s)
    }
}

pub(crate) fn de_casteljau(control: &[[f64; 2]], s: f64) -> [f64; 2] {
    let mut pts = control.to_vec();
    for level in (1..pts.len()).rev() {
        for i in 0..level {
            pts[i] = [
                (1.0 - s) * pts[i][0] + s * pts[i + 1][0],
                (1.0 - s) * pts[i][1] + s * pts[i + 1][1],
            ];
        }
    }
    pts[0]
}

/// Samples the curve at `n_samples` uniformly spaced parameters in `[0, 1]`.
pub fn sample_bezier(spec: &BezierSpec) -> Result<Trajectory> {
    spec.validate()?;
    let last = (spec.n_samples - 1) as f64;
    Trajectory::from_xy((0..spec.n_samples).map(|i| {
        let [x, y] = spec.point_at(i as f64 / last);
        (x, y)
    }))
}

/// Draws an order uniformly from `order_range` (inclusive) and i.i.d. uniform
/// control points in `[0, width] x [0, height]`.
pub fn random_bezier_spec(
    order_range: (usize, usize),
    box_size: (f64, f64),
    n_samples: usize,
    seed: u64,
) -> Result<BezierSpec> {
    let (lo, hi) = order_range;
    if lo == 0 || lo > hi {
        return Err(Error::InvalidConfig(format!(
            "invalid order range [{lo}, {hi}]"
        )));
    }
    let (w, h) = box_size;
    if !(w.is_finite() && h.is_finite() && w > 0.0 && h > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "invalid control-point box {w} x {h}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = rng.random_range(lo..=hi);
    let control_points = (0..=order)
        .map(|_| [rng.random_range(0.0..w), rng.random_range(0.0..h)])
        .collect();
    let spec = BezierSpec {
        order,
        control_points,
        n_samples,
        seed,
    };
    spec.validate()?;
    Ok(spec)
}
