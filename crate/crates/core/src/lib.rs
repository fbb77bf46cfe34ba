//! Trajectory interpolation by local linear reconstruction.
//!
//! The core idea comes from locally linear embedding: a trajectory sample is
//! written as an affine combination of its `k` neighbours in time, with
//! weights found by a sum-to-one constrained least-squares fit. The same
//! weights, slid forward by one sample, reconstruct a lost point. Each
//! coordinate axis is handled independently.
//!
//! Modules:
//!
//! - [`lli`]: weight solver, forward extrapolation and within-range gap filling.
//! - [`baselines`]: linear, natural cubic spline, PCHIP, Makima, multiquadric
//!   RBF and ordinary kriging, plus [`baselines::interpolate_with`] dispatch.
//! - [`trajgen`]: random Bezier trajectories, Gaussian noise, lost-point masks
//!   and the trajectory / mask CSV formats.
//! - [`metrics`]: per-point errors, MSE, empirical CDF and quantiles.
//! - [`bench`]: deterministic accuracy sweeps, timing runs and k-ablation.
//! - [`cli`]: the `manifold-interp` command line.
//!
//! ```
//! use manifold_interp::lli::{extrapolate_next, LliConfig};
//!
//! let config = LliConfig::new(3, 1e-12).unwrap();
//! let next = extrapolate_next(&[0.0, 1.0, 2.0, 3.0], &config).unwrap();
//! assert!((next - 4.0).abs() < 1e-6);
//! ```

pub mod baselines;
pub mod bench;
pub mod cli;
mod error;
pub mod lli;
pub mod metrics;
pub mod trajgen;

pub use baselines::{interpolate_with, KnotSeries, MethodConfig, MethodId};
pub use error::{Error, Result};
pub use lli::{LliConfig, WeightVector};
pub use trajgen::{MissingMask, Trajectory, TrajectoryPoint};

