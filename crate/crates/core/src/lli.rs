//! Local-linear interpolation (LLI).
//!
//! For one coordinate axis, a window of `k` reference samples and a target
//! sample define the difference vector `X_j = target - values_j`. The
//! reconstruction weights minimise `|| X^T W ||^2` subject to `sum(W) = 1`,
//! which has the closed form `W = C^-1 1 / (1^T C^-1 1)` with `C = X X^T`.
//! `C` is rank one, so it is regularised as `C + sigma * trace(C) * I` before
//! solving. The weights are then applied to the window slid forward by one
//! sample to reconstruct the lost point.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Window size used when none is configured.
pub const DEFAULT_K: usize = 5;
/// Regularisation strength used when none is configured.
pub const DEFAULT_SIGMA: f64 = 1.0;
/// Largest supported window size.
pub const MAX_K: usize = 32;
/// Window sizes above this get a warning: the per-point cost grows cubically.
pub const K_WARN_ABOVE: usize = 10;

/// Window size and regularisation strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LliConfig {
    pub k: usize,
    pub sigma: f64,
}

impl Default for LliConfig {
    fn default() -> Self {
        Self {
            k: DEFAULT_K,
            sigma: DEFAULT_SIGMA,
        }
    }
}

impl LliConfig {
    pub fn new(k: usize, sigma: f64) -> Result<Self> {
        let config = Self { k, sigma };
        config.validate()?;
        if k > K_WARN_ABOVE {
            log::warn!("k = {k} exceeds {K_WARN_ABOVE}; interpolation cost grows as k^3");
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_K).contains(&self.k) {
            return Err(Error::InvalidConfig(format!(
                "k must be in 2..={MAX_K}, got {}",
                self.k
            )));
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "sigma must be finite and non-negative, got {}",
                self.sigma
            )));
        }
        Ok(())
    }

    /// Known samples required before a gap for within-range interpolation.
    pub fn before_needed(&self) -> usize {
        self.k / 2 + 2
    }

    /// Known samples required after a gap for within-range interpolation.
    pub fn after_needed(&self) -> usize {
        self.k - self.k / 2
    }
}

/// `k` reference values of one axis together with the value they should reconstruct.
#[derive(Debug, Clone, Copy)]
pub struct Window<'a> {
    values: &'a [f64],
    target: f64,
}

impl<'a> Window<'a> {
    pub fn new(values: &'a [f64], target: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InsufficientHistory {
                needed: 2,
                available: values.len(),
            });
        }
        ensure_finite(values, "window values")?;
        ensure_finite(&[target], "window target")?;
        Ok(Self { values, target })
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Sum-to-one reconstruction coefficients. Entries may be negative or exceed one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Wraps raw weights, checking the sum-to-one constraint to `1e-9`.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        ensure_finite(&weights, "weights")?;
        let sum: f64 = weights.iter().sum();
        if weights.is_empty() || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "weights must be non-empty and sum to one, sum is {sum}"
            )));
        }
        Ok(Self(weights))
    }

    pub fn uniform(k: usize) -> Self {
        Self(vec![1.0 / k as f64; k])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Solves the regularised sum-to-one least-squares problem for one window.
///
/// With `trace(C) = 0` (target equal to every reference) any sum-to-one vector
/// is optimal and uniform weights are returned. With `sigma = 0` the regularised
/// matrix is singular, so the `sigma -> 0` limit
/// `normalize(1 - X (X^T 1) / (X^T X))` is returned instead.
pub fn solve_weights(window: &Window<'_>, config: &LliConfig) -> Result<WeightVector> {
    let k = window.len();
    if k != config.k {
        return Err(Error::LengthMismatch {
            expected: config.k,
            actual: k,
        });
    }

    let diffs: Vec<f64> = window.values.iter().map(|v| window.target - v).collect();
    let trace: f64 = diffs.iter().map(|d| d * d).sum();
    if trace == 0.0 {
        return Ok(WeightVector::uniform(k));
    }
    if config.sigma == 0.0 {
        return Ok(limit_weights(&diffs, trace));
    }

    let ridge = config.sigma * trace;
    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let c = diffs[i] * diffs[j];
            gram[i * k + j] = c;
            gram[j * k + i] = c;
        }
        gram[i * k + i] += ridge;
    }
    let mut u = vec![1.0; k];
    if !cholesky_solve(&mut gram, k, &mut u) {
        return Err(Error::SingularSystem("LLI weight solve"));
    }
    let total: f64 = u.iter().sum();
    if total == 0.0 || !total.is_finite() {
        return Err(Error::SingularSystem("LLI weight normalisation"));
    }
    Ok(normalized(u, total))
}

/// Divides by `total` and folds the rounding residue of the sum into the
/// smallest-magnitude entry, where it perturbs the least.
fn normalized(u: Vec<f64>, total: f64) -> WeightVector {
    let mut w: Vec<f64> = u.into_iter().map(|v| v / total).collect();
    let residue = 1.0 - w.iter().sum::<f64>();
    if let Some(j) = (0..w.len()).min_by(|&a, &b| w[a].abs().total_cmp(&w[b].abs())) {
        w[j] += residue;
    }
    WeightVector(w)
}

fn limit_weights(diffs: &[f64], norm_sq: f64) -> WeightVector {
    let k = diffs.len();
    let proj: f64 = diffs.iter().sum::<f64>() / norm_sq;
    let u: Vec<f64> = diffs.iter().map(|d| 1.0 - d * proj).collect();
    let total: f64 = u.iter().sum();
    // X parallel to 1: every affine combination has the same residual.
    if total.abs() <= 1e-12 * k as f64 {
        return WeightVector::uniform(k);
    }
    normalized(u, total)
}

/// In-place Cholesky factorisation of the SPD matrix `a` (row-major, `n x n`)
/// followed by forward and back substitution on `b`. Returns `false` if a pivot
/// is not strictly positive.
fn cholesky_solve(a: &mut [f64], n: usize, b: &mut [f64]) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j];
        for p in 0..j {
            d -= a[j * n + p] * a[j * n + p];
        }
        if !(d > 0.0) {
            return false;
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for p in 0..j {
                s -= a[i * n + p] * a[j * n + p];
            }
            a[i * n + j] = s / d;
        }
    }
    for i in 0..n {
        let mut s = b[i];
        for p in 0..i {
            s -= a[i * n + p] * b[p];
        }
        b[i] = s / a[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for p in (i + 1)..n {
            s -= a[p * n + i] * b[p];
        }
        b[i] = s / a[i * n + i];
    }
    true
}

/// Affine combination `sum_j weights_j * refs_j`.
pub fn reconstruct(refs: &[f64], weights: &WeightVector) -> Result<f64> {
    if refs.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: weights.len(),
            actual: refs.len(),
        });
    }
    Ok(refs.iter().zip(weights.as_slice()).map(|(r, w)| r * w).sum())
}

/// Predicts the sample following `tail` on one axis.
///
/// Uses the last `k + 1` entries of `tail`: the weights that rebuild the most
/// recent sample from the `k` before it are applied to the `k` most recent
/// samples.
pub fn extrapolate_next(tail: &[f64], config: &LliConfig) -> Result<f64> {
    let k = config.k;
    if tail.len() < k + 1 {
        return Err(Error::InsufficientHistory {
            needed: k + 1,
            available: tail.len(),
        });
    }
    let tail = &tail[tail.len() - (k + 1)..];
    let window = Window::new(&tail[..k], tail[k])?;
    let weights = solve_weights(&window, config)?;
    reconstruct(&tail[1..], &weights)
}

/// Extrapolates the next 2-D point with independent weights per axis.
pub fn interpolate_point_2d(
    history_x: &[f64],
    history_y: &[f64],
    config: &LliConfig,
) -> Result<(f64, f64)> {
    Ok((
        extrapolate_next(history_x, config)?,
        extrapolate_next(history_y, config)?,
    ))
}

/// Known samples around a single lost point on one axis.
///
/// `before` is chronological and ends with the sample nearest the gap;
/// `after` is chronological and starts with the sample nearest the gap.
#[derive(Debug, Clone, Copy)]
pub struct Neighborhood<'a> {
    pub before: &'a [f64],
    pub after: &'a [f64],
    pub gap_index: i64,
}

/// Position of a known sample relative to the gap: `Before(1)` is the nearest
/// sample preceding it, `After(1)` the nearest following it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Before(usize),
    After(usize),
}

/// Fit and apply reference slots for within-range interpolation.
///
/// The fit rebuilds `Before(1)` from `Before(h+2..=2)` and `After(1..=m)`; the
/// apply stage uses the same pattern shifted one step towards the gap,
/// `Before(h+1..=1)` and `After(2..=m+1)`, with `h = k/2` and `m = k - 1 - h`.
/// Shifting every reference by the same step keeps affine trajectories exact.
pub fn in_range_slots(k: usize) -> (Vec<Slot>, Vec<Slot>) {
    let h = k / 2;
    let m = k - 1 - h;
    let fit = (2..=h + 2)
        .rev()
        .map(Slot::Before)
        .chain((1..=m).map(Slot::After))
        .collect();
    let apply = (1..=h + 1)
        .rev()
        .map(Slot::Before)
        .chain((2..=m + 1).map(Slot::After))
        .collect();
    (fit, apply)
}

/// Fills a single lost point from known samples on both sides of it.
pub fn interpolate_in_range(nbhd: &Neighborhood<'_>, config: &LliConfig) -> Result<f64> {
    let (before_needed, after_needed) = (config.before_needed(), config.after_needed());
    if nbhd.before.len() < before_needed {
        return Err(Error::InsufficientHistory {
            needed: before_needed,
            available: nbhd.before.len(),
        });
    }
    if nbhd.after.len() < after_needed {
        return Err(Error::InsufficientHistory {
            needed: after_needed,
            available: nbhd.after.len(),
        });
    }
    ensure_finite(nbhd.before, "neighborhood")?;
    ensure_finite(nbhd.after, "neighborhood")?;

    let pick = |slot: Slot| match slot {
        Slot::Before(i) => nbhd.before[nbhd.before.len() - i],
        Slot::After(i) => nbhd.after[i - 1],
    };
    let (fit_slots, apply_slots) = in_range_slots(config.k);
    assert!(
        !fit_slots.contains(&Slot::Before(1)),
        "fit references must not contain the fit target"
    );

    let fit: Vec<f64> = fit_slots.iter().map(|&s| pick(s)).collect();
    let apply: Vec<f64> = apply_slots.iter().map(|&s| pick(s)).collect();
    let window = Window::new(&fit, pick(Slot::Before(1)))?;
    let weights = solve_weights(&window, config)?;
    reconstruct(&apply, &weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(k: usize, sigma: f64) -> LliConfig {
        LliConfig::new(k, sigma).unwrap()
    }

    fn weights(values: &[f64], target: f64, sigma: f64) -> Vec<f64> {
        let w = Window::new(values, target).unwrap();
        solve_weights(&w, &cfg(values.len(), sigma)).unwrap().into_vec()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn constant_window_gets_uniform_weights() {
        let w = weights(&[5.0, 5.0, 5.0], 5.0, 1e-8);
        assert_close(&w, &[1.0 / 3.0; 3], 0.0);
    }

    #[test]
    fn line_window_matches_limit_weights() {
        // sigma -> 0 limit in exact rationals: [-2/3, 1/3, 4/3].
        let w = weights(&[0.0, 1.0, 2.0], 3.0, 1e-12);
        assert_close(&w, &[-2.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0], 1e-4);
        let rec: f64 = w.iter().zip([0.0, 1.0, 2.0]).map(|(a, b)| a * b).sum();
        assert!((rec - 3.0).abs() < 1e-9);
    }

    #[test]
    fn quadratic_window_matches_limit_weights() {
        // [-14/13, -3/13, 30/13]; reconstruction 117/13 = 9.
        let w = weights(&[0.0, 1.0, 4.0], 9.0, 1e-12);
        assert_close(&w, &[-14.0 / 13.0, -3.0 / 13.0, 30.0 / 13.0], 1e-4);
        let rec: f64 = w.iter().zip([0.0, 1.0, 4.0]).map(|(a, b)| a * b).sum();
        assert!((rec - 9.0).abs() < 1e-9);
    }

    #[test]
    fn zero_sigma_uses_closed_form_limit() {
        let w = weights(&[0.0, 1.0, 2.0], 3.0, 0.0);
        assert_close(&w, &[-2.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0], 1e-12);
        // X parallel to 1.
        let w = weights(&[2.0, 2.0], 7.0, 0.0);
        assert_close(&w, &[0.5, 0.5], 0.0);
    }

    #[test]
    fn rejects_non_finite_and_mismatched_input() {
        assert!(matches!(
            Window::new(&[1.0, f64::NAN], 0.0),
            Err(Error::NonFiniteInput(_))
        ));
        assert!(matches!(
            Window::new(&[1.0, 2.0], f64::INFINITY),
            Err(Error::NonFiniteInput(_))
        ));
        let w = Window::new(&[1.0, 2.0, 3.0], 4.0).unwrap();
        assert!(matches!(
            solve_weights(&w, &cfg(4, 1e-3)),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(LliConfig::new(1, 1e-3).is_err());
        assert!(LliConfig::new(5, -1.0).is_err());
        assert!(LliConfig::new(MAX_K + 1, 1.0).is_err());
    }

    #[test]
    fn reconstruct_examples() {
        let uniform = WeightVector::uniform(3);
        assert!((reconstruct(&[1.0, 2.0, 3.0], &uniform).unwrap() - 2.0).abs() < 1e-15);
        let w = WeightVector::new(vec![-2.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0]).unwrap();
        assert!((reconstruct(&[1.0, 2.0, 3.0], &w).unwrap() - 4.0).abs() < 1e-12);
        assert!((reconstruct(&[7.0, 7.0, 7.0], &w).unwrap() - 7.0).abs() < 1e-12);
        assert!(matches!(
            reconstruct(&[1.0, 2.0], &w),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn extrapolation_examples() {
        let next = extrapolate_next(&[0.0, 1.0, 2.0, 3.0], &cfg(3, 1e-12)).unwrap();
        assert!((next - 4.0).abs() < 1e-6);
        let next = extrapolate_next(&[2.5; 4], &cfg(3, 1e-12)).unwrap();
        assert_eq!(next, 2.5);
        // t^2 tail: limit weights [-14, -3, 30]/13 applied to [1, 4, 9] = 244/13.
        let next = extrapolate_next(&[0.0, 1.0, 4.0, 9.0], &cfg(3, 1e-12)).unwrap();
        assert!((next - 244.0 / 13.0).abs() < 1e-4, "{next}");
        assert!(matches!(
            extrapolate_next(&[0.0, 1.0, 2.0], &cfg(3, 1e-3)),
            Err(Error::InsufficientHistory { needed: 4, available: 3 })
        ));
    }

    #[test]
    fn extrapolation_uses_most_recent_samples() {
        let c = cfg(3, 1e-12);
        let long = extrapolate_next(&[9.0, -4.0, 0.0, 1.0, 2.0, 3.0], &c).unwrap();
        assert!((long - 4.0).abs() < 1e-6);
    }

    #[test]
    fn two_axes_are_independent() {
        let c = cfg(3, 1e-12);
        let (x, y) = interpolate_point_2d(&[0.0, 1.0, 2.0, 3.0], &[0.0, 2.0, 4.0, 6.0], &c).unwrap();
        assert!((x - 4.0).abs() < 1e-6 && (y - 8.0).abs() < 1e-6);
        let (x, y) = interpolate_point_2d(&[5.0; 4], &[0.0, 1.0, 2.0, 3.0], &c).unwrap();
        assert!((x - 5.0).abs() < 1e-12 && (y - 4.0).abs() < 1e-6);
    }

    #[test]
    fn circle_continuation_matches_kkt_oracle() {
        // Golden values from a dense (k+1)x(k+1) KKT solve at sigma = 1e-3.
        let theta: Vec<f64> = (0..6).map(|j| 0.1 * j as f64).collect();
        let xs: Vec<f64> = theta.iter().map(|t| 100.0 * t.cos()).collect();
        let ys: Vec<f64> = theta.iter().map(|t| 100.0 * t.sin()).collect();
        let (x, y) = interpolate_point_2d(&xs, &ys, &cfg(5, 1e-3)).unwrap();
        assert!((x - 81.312614742479).abs() < 1e-8, "{x}");
        assert!((y - 56.676920351843435).abs() < 1e-8, "{y}");
        // and within 1.3 cm of the true continuation at angle 0.6
        assert!((x - 100.0 * 0.6f64.cos()).hypot(y - 100.0 * 0.6f64.sin()) < 1.3);
    }

    #[test]
    fn slots_never_touch_the_gap_and_have_k_entries() {
        for k in 2..=MAX_K {
            let (fit, apply) = in_range_slots(k);
            assert_eq!(fit.len(), k);
            assert_eq!(apply.len(), k);
            assert!(!fit.contains(&Slot::Before(1)));
            let c = cfg(k, 1.0);
            for s in fit.iter().chain(&apply) {
                match *s {
                    Slot::Before(i) => assert!(i >= 1 && i <= c.before_needed()),
                    Slot::After(i) => assert!(i >= 1 && i <= c.after_needed()),
                }
            }
        }
        assert_eq!(
            in_range_slots(5).0,
            vec![
                Slot::Before(4),
                Slot::Before(3),
                Slot::Before(2),
                Slot::After(1),
                Slot::After(2)
            ]
        );
    }

    fn line_nbhd(t: i64, k: usize) -> (Vec<f64>, Vec<f64>) {
        let c = cfg(k, 1.0);
        let before = ((t - c.before_needed() as i64)..t).map(|j| j as f64).collect();
        let after = ((t + 1)..=(t + c.after_needed() as i64)).map(|j| j as f64).collect();
        (before, after)
    }

    #[test]
    fn in_range_is_exact_on_lines() {
        for k in 2..=12 {
            let (before, after) = line_nbhd(10, k);
            let nb = Neighborhood {
                before: &before,
                after: &after,
                gap_index: 10,
            };
            let v = interpolate_in_range(&nb, &cfg(k, 1e-12)).unwrap();
            assert!((v - 10.0).abs() < 1e-6, "k={k}: {v}");
        }
    }

    #[test]
    fn in_range_constant_and_quadratic() {
        let before = [3.0; 4];
        let after = [3.0; 3];
        let nb = Neighborhood {
            before: &before,
            after: &after,
            gap_index: 4,
        };
        assert!((interpolate_in_range(&nb, &cfg(5, 1e-3)).unwrap() - 3.0).abs() < 1e-12);

        // p_j = j^2, gap at 10; exact-rational sigma -> 0 oracle gives 736476/7409.
        let before: Vec<f64> = (6..10).map(|j| (j * j) as f64).collect();
        let after: Vec<f64> = (11..14).map(|j| (j * j) as f64).collect();
        let nb = Neighborhood {
            before: &before,
            after: &after,
            gap_index: 10,
        };
        let v = interpolate_in_range(&nb, &cfg(5, 1e-12)).unwrap();
        assert!((v - 736476.0 / 7409.0).abs() < 1e-3, "{v}");
    }

    #[test]
    fn in_range_rejects_small_neighborhoods() {
        let before = [0.0, 1.0, 2.0];
        let after = [4.0, 5.0, 6.0];
        let nb = Neighborhood {
            before: &before,
            after: &after,
            gap_index: 3,
        };
        assert!(matches!(
            interpolate_in_range(&nb, &cfg(5, 1e-3)),
            Err(Error::InsufficientHistory { needed: 4, available: 3 })
        ));
        let before = [0.0, 1.0, 2.0, 3.0];
        let after = [5.0, 6.0];
        let nb = Neighborhood {
            before: &before,
            after: &after,
            gap_index: 4,
        };
        assert!(matches!(
            interpolate_in_range(&nb, &cfg(5, 1e-3)),
            Err(Error::InsufficientHistory { needed: 3, available: 2 })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn window_strategy() -> impl Strategy<Value = (Vec<f64>, f64)> {
            (2usize..=10).prop_flat_map(|k| {
                (
                    proptest::collection::vec(-100.0f64..100.0, k),
                    -100.0f64..100.0,
                )
            })
        }

        proptest! {
            #[test]
            fn weights_sum_to_one((values, target) in window_strategy(), log_sigma in -3.0f64..1.0) {
                let sigma = 10f64.powf(log_sigma);
                let w = weights(&values, target, sigma);
                let sum: f64 = w.iter().sum();
                prop_assert!((sum - 1.0).abs() <= 1e-12, "sum {}", sum);
            }

            #[test]
            fn weights_are_affine_invariant(
                (values, target) in window_strategy(),
                a in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
                b in -100.0f64..100.0,
            ) {
                let w = weights(&values, target, 1e-3);
                let moved: Vec<f64> = values.iter().map(|v| a * v + b).collect();
                let w2 = weights(&moved, a * target + b, 1e-3);
                for (p, q) in w.iter().zip(&w2) {
                    prop_assert!((p - q).abs() <= 1e-9, "{:?} vs {:?}", w, w2);
                }
            }

            #[test]
            fn residual_vanishes_as_sigma_goes_to_zero((values, target) in window_strategy()) {
                let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                    - values.iter().cloned().fold(f64::INFINITY, f64::min);
                // Near-coincident references force weights of order |target| / spread.
                prop_assume!(spread > 1.0);
                let w = WeightVector::new(weights(&values, target, 1e-12)).unwrap();
                let rec = reconstruct(&values, &w).unwrap();
                prop_assert!((target - rec).abs() <= 1e-6 * (1.0 + target.abs()), "{} vs {}", rec, target);
            }

            #[test]
            fn solve_is_deterministic((values, target) in window_strategy()) {
                let a = weights(&values, target, 1.0);
                let b = weights(&values, target, 1.0);
                prop_assert_eq!(
                    a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
                    b.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
                );
            }
        }
    }
}
