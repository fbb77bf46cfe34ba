//! Experiment harness: seeded corpora, accuracy sweeps over curve lengths and
//! loss ratios, serial timing runs and the window-size ablation.
//!
//! Seeds are split from `master_seed` with a splitmix64 mix:
//!
//! ```text
//! curve_seed = mix(master_seed, CURVE, length_index, curve_index)
//! noise_seed = mix(curve_seed, NOISE, run)
//! mask_seed  = mix(curve_seed, MASK, ratio_index, run)
//! ```
//!
//! Curves are fixed per `(length, curve)`; each run redraws noise and masks.

mod corpus;
mod report;
mod sweep;
mod timing;

pub use corpus::{curve, known_knots, run_case, Cell, CellKey, Corpus, RunCase};
pub use report::{
    cdf_by_method, metrics_rows, render_summary_table, render_timing_csv, summarize, SummaryRow,
    TIMING_HEADER,
};
pub use sweep::{evaluate_corpus, run_accuracy_sweep, run_k_ablation, AblationGroup, BenchRecord, CellOutcome, RunScore};
pub use timing::{run_timing, TimingRecord};

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::baselines::{MethodConfig, MethodId};
use crate::error::{Error, Result};
use crate::lli::{LliConfig, DEFAULT_K, DEFAULT_SIGMA};
use crate::trajgen::{MaskPolicy, DEFAULT_BOX, DEFAULT_NOISE_CM, DEFAULT_ORDER_RANGE};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "MANIFOLD_INTERP_THREADS";

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
pub(crate) const TAG_CURVE: u64 = 1;
pub(crate) const TAG_NOISE: u64 = 2;
pub(crate) const TAG_MASK: u64 = 3;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed of `parent` for a tag and a path of indices.
pub fn derive_seed(parent: u64, tag: u64, path: &[u64]) -> u64 {
    let mut h = mix(parent.wrapping_add(GAMMA.wrapping_mul(tag.wrapping_add(1))));
    for &p in path {
        h = mix(h ^ mix(p.wrapping_add(GAMMA)));
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    #[serde(default = "default_noise")]
    pub sigma_noise: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            sigma_noise: DEFAULT_NOISE_CM,
        }
    }
}

fn default_noise() -> f64 {
    DEFAULT_NOISE_CM
}
fn default_k() -> usize {
    DEFAULT_K
}
fn default_sigma() -> f64 {
    DEFAULT_SIGMA
}
fn default_one() -> usize {
    1
}
fn default_repetitions() -> usize {
    5
}
fn default_methods() -> Vec<MethodId> {
    MethodId::ALL.to_vec()
}
fn default_order_range() -> (usize, usize) {
    DEFAULT_ORDER_RANGE
}
fn default_box() -> (f64, f64) {
    DEFAULT_BOX
}
fn default_ablation_k() -> Vec<usize> {
    vec![2, 5, 15]
}
fn default_timing_k() -> Vec<usize> {
    vec![DEFAULT_K, 20]
}

/// Experiment configuration, read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub curve_lengths: Vec<usize>,
    pub curves_per_length: usize,
    pub loss_ratios: Vec<f64>,
    #[serde(default = "default_methods")]
    pub methods: Vec<MethodId>,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default)]
    pub noise: NoiseConfig,
    pub master_seed: u64,
    /// Timed repetitions per timing cell, after one discarded warm-up.
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    /// Independent noise and mask draws per curve.
    #[serde(default = "default_one")]
    pub runs: usize,
    #[serde(default = "default_order_range")]
    pub order_range: (usize, usize),
    #[serde(default = "default_box")]
    pub box_size: (f64, f64),
    #[serde(default)]
    pub mask_policy: MaskPolicy,
    /// Leading samples never masked; `k + 1` when absent.
    #[serde(default)]
    pub protect_prefix: Option<usize>,
    /// Fit RBF and kriging over whole trajectories instead of local windows.
    #[serde(default)]
    pub global_solve: bool,
    #[serde(default)]
    pub rbf_shape: Option<f64>,
    #[serde(default = "default_ablation_k")]
    pub ablation_k: Vec<usize>,
    #[serde(default = "default_timing_k")]
    pub timing_k: Vec<usize>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)
            .map_err(|e| Error::InvalidConfig(format!("config schema error: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| {
            Error::InvalidConfig(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_json(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.curve_lengths.is_empty() || self.loss_ratios.is_empty() || self.methods.is_empty() {
            return bad("curve_lengths, loss_ratios and methods must be non-empty".into());
        }
        if self.curves_per_length == 0 || self.runs == 0 {
            return bad("curves_per_length and runs must be at least 1".into());
        }
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1".into());
        }
        if let Some(r) = self.loss_ratios.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return bad(format!("loss ratio {r} is outside (0, 1)"));
        }
        for &k in std::iter::once(&self.k).chain(&self.ablation_k).chain(&self.timing_k) {
            LliConfig { k, sigma: self.sigma }.validate()?;
        }
        if let Some(p) = self.protect_prefix {
            if p < self.k + 1 {
                return bad(format!("protect_prefix {p} must be at least k + 1 = {}", self.k + 1));
            }
        }
        if !(self.noise.sigma_noise.is_finite() && self.noise.sigma_noise >= 0.0) {
            return bad(format!("noise sigma {} is invalid", self.noise.sigma_noise));
        }
        Ok(())
    }

    pub fn lli(&self) -> LliConfig {
        LliConfig {
            k: self.k,
            sigma: self.sigma,
        }
    }

    pub fn method_config(&self) -> MethodConfig {
        MethodConfig {
            lli: self.lli(),
            global_solve: self.global_solve,
            rbf_shape: self.rbf_shape,
        }
    }

    pub fn effective_protect_prefix(&self) -> usize {
        self.protect_prefix.unwrap_or(self.k + 1)
    }

    /// Copy of the spec with `protect_prefix` pinned so that every window size
    /// in `ks` sees the same masks.
    pub(crate) fn pinned_for(&self, ks: &[usize]) -> Self {
        let widest = ks.iter().copied().chain([self.k]).max().unwrap_or(self.k);
        let mut spec = self.clone();
        spec.protect_prefix = Some(self.protect_prefix.unwrap_or(0).max(widest + 1));
        spec
    }
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}
