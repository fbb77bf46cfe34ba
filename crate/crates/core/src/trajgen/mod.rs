//! Synthetic trajectory corpora: random Bezier curves, Gaussian position noise,
//! lost-point masks, and the trajectory / mask CSV formats.

mod bezier;
mod io;
mod mask;

pub use bezier::{random_bezier_spec, sample_bezier, BezierSpec, DEFAULT_BOX, DEFAULT_ORDER_RANGE};
pub use io::{
    load_mask_csv, load_trajectory_csv, parse_mask_csv, parse_trajectory_csv, render_mask_csv,
    render_trajectory_csv, write_mask_csv, write_trajectory_csv,
};
pub use mask::{make_mask, MaskPolicy, MaskSpec, MissingMask};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default standard deviation of the added position noise, in cm.
pub const DEFAULT_NOISE_CM: f64 = 2.0;

/// One time-indexed position in cm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: i64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Generated,
    Loaded,
}

/// Positions sampled at consecutive integer time indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    points: Vec<TrajectoryPoint>,
    provenance: Provenance,
}

impl Trajectory {
    pub fn new(points: Vec<TrajectoryPoint>, provenance: Provenance) -> Result<Self> {
        if let Some(w) = points.windows(2).find(|w| w[1].t != w[0].t + 1) {
            return Err(Error::Validation(format!(
                "time indices must be consecutive integers: {} followed by {}",
                w[0].t, w[1].t
            )));
        }
        if let Some(p) = points.iter().find(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(Error::Validation(format!(
                "non-finite position at t = {}",
                p.t
            )));
        }
        Ok(Self { points, provenance })
    }

    /// Builds a generated trajectory with indices `0..` from `(x, y)` pairs.
    pub fn from_xy(xy: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let points = xy
            .into_iter()
            .enumerate()
            .map(|(i, (x, y))| TrajectoryPoint { t: i as i64, x, y })
            .collect();
        Self::new(points, Provenance::Generated)
    }

    pub fn points(&self) -> &[TrajectoryPoint] {
        &self.points
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first_t(&self) -> Option<i64> {
        self.points.first().map(|p| p.t)
    }

    /// Point at time index `t`.
    pub fn at(&self, t: i64) -> Option<&TrajectoryPoint> {
        let first = self.first_t()?;
        usize::try_from(t - first)
            .ok()
            .and_then(|i| self.points.get(i))
    }
}

/// Seeded i.i.d. Gaussian noise on both axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub sigma_noise: f64,
    pub seed: u64,
}

/// Adds `N(0, sigma_noise^2)` independently to x and y of every point.
pub fn add_noise(traj: &Trajectory, spec: &NoiseSpec) -> Result<Trajectory> {
    if !(spec.sigma_noise.is_finite() && spec.sigma_noise >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "noise sigma must be finite and non-negative, got {}",
            spec.sigma_noise
        )));
    }
    if spec.sigma_noise == 0.0 {
        return Ok(traj.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normal = Normal::new(0.0, spec.sigma_noise)
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let points = traj
        .points
        .iter()
        .map(|p| TrajectoryPoint {
            t: p.t,
            x: p.x + normal.sample(&mut rng),
            y: p.y + normal.sample(&mut rng),
        })
        .collect();
    Ok(Trajectory {
        points,
        provenance: traj.provenance,
    })
}
