use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Trajectory;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskPolicy {
    /// No two lost points are adjacent.
    #[default]
    Scattered,
    Unrestricted,
}

impl std::str::FromStr for MaskPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "scattered" => Ok(MaskPolicy::Scattered),
            "unrestricted" => Ok(MaskPolicy::Unrestricted),
            other => Err(Error::InvalidConfig(format!(
                "unknown mask policy `{other}` (expected scattered or unrestricted)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskSpec {
    pub ratio: f64,
    pub seed: u64,
    /// Leading samples that are never masked.
    pub protect_prefix: usize,
    pub policy: MaskPolicy,
}

/// Sorted time indices hidden from interpolators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MissingMask {
    indices: Vec<i64>,
}

impl MissingMask {
    pub fn new(mut indices: Vec<i64>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate masked index".into()));
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn contains(&self, t: i64) -> bool {
        self.indices.binary_search(&t).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn has_adjacent_pair(&self) -> bool {
        self.indices.windows(2).any(|w| w[1] == w[0] + 1)
    }
}

/// Number of points masked for `ratio` of `n` samples, `floor(ratio * n)`.
pub fn masked_count(ratio: f64, n: usize) -> usize {
    // Guard against products like 0.29 * 100 = 28.999999999999996.
    (ratio * n as f64 + 1e-9).floor() as usize
}

/// Picks `floor(ratio * N)` indices uniformly without replacement among the
/// samples after the protected prefix.
///
/// The scattered policy samples uniformly among non-adjacent subsets directly
/// (choose `n` of `M - n + 1` slots, then spread the i-th pick by `i`). When no
/// such subset exists it falls back to the unrestricted policy with a warning.
pub fn make_mask(traj: &Trajectory, spec: &MaskSpec) -> Result<MissingMask> {
    if !(spec.ratio > 0.0 && spec.ratio < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "loss ratio must be in (0, 1), got {}",
            spec.ratio
        )));
    }
    let total = traj.len();
    let n = masked_count(spec.ratio, total);
    if n == 0 {
        return Err(Error::InvalidConfig(format!(
            "ratio {} of {total} samples masks no point",
            spec.ratio
        )));
    }
    let eligible = total.saturating_sub(spec.protect_prefix);
    if n > eligible {
        return Err(Error::InvalidConfig(format!(
            "cannot mask {n} of the {eligible} samples after the protected prefix"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut positions: Vec<usize> = match spec.policy {
        MaskPolicy::Scattered if eligible + 1 >= 2 * n => {
            let mut slots = sample(&mut rng, eligible - n + 1, n).into_vec();
            slots.sort_unstable();
            slots.into_iter().enumerate().map(|(i, s)| s + i).collect()
        }
        policy => {
            if policy == MaskPolicy::Scattered {
                log::warn!(
                    "no scattered mask of {n} points fits in {eligible} samples; \
                     using an unrestricted mask"
                );
            }
            sample(&mut rng, eligible, n).into_vec()
        }
    };
    positions.sort_unstable();
    let t0 = traj.first_t().unwrap_or(0);
    MissingMask::new(
        positions
            .into_iter()
            .map(|p| t0 + (p + spec.protect_prefix) as i64)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(n: usize) -> Trajectory {
        Trajectory::from_xy((0..n).map(|i| (i as f64, 0.0))).unwrap()
    }

    fn spec(ratio: f64, seed: u64, policy: MaskPolicy) -> MaskSpec {
        MaskSpec {
            ratio,
            seed,
            protect_prefix: 6,
            policy,
        }
    }

    #[test]
    fn count_and_prefix() {
        let m = make_mask(&traj(1000), &spec(0.1, 1, MaskPolicy::Scattered)).unwrap();
        assert_eq!(m.len(), 100);
        assert!(m.indices().iter().all(|&t| (6..1000).contains(&t)));
        assert!(!m.has_adjacent_pair());
    }

    #[test]
    fn scattered_masks_have_no_adjacent_points() {
        for (ratio, seed) in [(0.2, 1), (0.3, 2), (0.4, 3), (0.45, 4)] {
            let m = make_mask(&traj(2000), &spec(ratio, seed, MaskPolicy::Scattered)).unwrap();
            assert_eq!(m.len(), masked_count(ratio, 2000));
            assert!(!m.has_adjacent_pair(), "ratio {ratio}");
        }
    }

    #[test]
    fn infeasible_scattered_mask_falls_back() {
        let m = make_mask(&traj(2000), &spec(0.5, 1, MaskPolicy::Scattered)).unwrap();
        assert_eq!(m.len(), 1000);
        assert!(m.has_adjacent_pair());
    }

    #[test]
    fn masks_are_seeded() {
        let t = traj(500);
        let s = spec(0.3, 77, MaskPolicy::Unrestricted);
        assert_eq!(make_mask(&t, &s).unwrap(), make_mask(&t, &s).unwrap());
        let other = MaskSpec { seed: 78, ..s };
        assert_ne!(make_mask(&t, &s).unwrap(), make_mask(&t, &other).unwrap());
    }

    #[test]
    fn rejects_bad_ratios() {
        let t = traj(100);
        assert!(make_mask(&t, &spec(0.0, 1, MaskPolicy::Scattered)).is_err());
        assert!(make_mask(&t, &spec(1.0, 1, MaskPolicy::Scattered)).is_err());
        assert!(make_mask(&t, &spec(0.001, 1, MaskPolicy::Scattered)).is_err());
        assert_eq!(masked_count(0.29, 100), 29);
    }
}
