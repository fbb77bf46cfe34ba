use rayon::prelude::*;

use super::{derive_seed, ExperimentSpec, TAG_CURVE, TAG_MASK, TAG_NOISE};
use crate::baselines::KnotSeries;
use crate::error::Result;
use crate::trajgen::{
    add_noise, make_mask, random_bezier_spec, sample_bezier, BezierSpec, MaskSpec, MissingMask,
    NoiseSpec, Trajectory,
};

/// Position of a cell in the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub length_index: usize,
    pub curve_index: usize,
    pub ratio_index: usize,
}

/// One noisy, masked realisation of a curve, ready for interpolation.
#[derive(Debug, Clone)]
pub struct RunCase {
    pub run: usize,
    pub noise_seed: u64,
    pub mask_seed: u64,
    pub noisy: Trajectory,
    pub mask: MissingMask,
    pub knots_x: KnotSeries,
    pub knots_y: KnotSeries,
    /// Masked time indices strictly between the first and last known sample.
    pub queries: Vec<f64>,
    /// Noise-free positions at `queries`.
    pub truth: Vec<(i64, f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub key: CellKey,
    pub n_points: usize,
    pub curve_seed: u64,
    pub loss_ratio: f64,
    pub runs: Vec<RunCase>,
}

/// Every `(length, curve, ratio)` cell of a spec, in key order.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub cells: Vec<Cell>,
}

impl Corpus {
    pub fn build(spec: &ExperimentSpec) -> Result<Self> {
        spec.validate()?;
        let curves: Vec<(usize, usize)> = (0..spec.curve_lengths.len())
            .flat_map(|li| (0..spec.curves_per_length).map(move |ci| (li, ci)))
            .collect();
        let nested = curves
            .par_iter()
            .map(|&(li, ci)| {
                let (_, seed, clean) = curve(spec, li, ci)?;
                (0..spec.loss_ratios.len())
                    .map(|ri| {
                        let runs = (0..spec.runs)
                            .map(|run| run_case(spec, &clean, seed, ri, run))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Cell {
                            key: CellKey {
                                length_index: li,
                                curve_index: ci,
                                ratio_index: ri,
                            },
                            n_points: spec.curve_lengths[li],
                            curve_seed: seed,
                            loss_ratio: spec.loss_ratios[ri],
                            runs,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cells: nested.into_iter().flatten().collect(),
        })
    }

    /// Number of scored points per run, summed over cells.
    pub fn query_count(&self) -> usize {
        self.cells
            .iter()
            .flat_map(|c| &c.runs)
            .map(|r| r.queries.len())
            .sum()
    }
}

/// The clean curve of `(length_index, curve_index)` and its seed.
pub fn curve(spec: &ExperimentSpec, li: usize, ci: usize) -> Result<(BezierSpec, u64, Trajectory)> {
    let seed = derive_seed(spec.master_seed, TAG_CURVE, &[li as u64, ci as u64]);
    let bezier = random_bezier_spec(spec.order_range, spec.box_size, spec.curve_lengths[li], seed)?;
    let clean = sample_bezier(&bezier)?;
    Ok((bezier, seed, clean))
}

pub fn run_case(
    spec: &ExperimentSpec,
    clean: &Trajectory,
    curve_seed: u64,
    ratio_index: usize,
    run: usize,
) -> Result<RunCase> {
    let noise_seed = derive_seed(curve_seed, TAG_NOISE, &[run as u64]);
    let mask_seed = derive_seed(curve_seed, TAG_MASK, &[ratio_index as u64, run as u64]);
    let noisy = add_noise(
        clean,
        &NoiseSpec {
            sigma_noise: spec.noise.sigma_noise,
            seed: noise_seed,
        },
    )?;
    let mask = make_mask(
        &noisy,
        &MaskSpec {
            ratio: spec.loss_ratios[ratio_index],
            seed: mask_seed,
            protect_prefix: spec.effective_protect_prefix(),
            policy: spec.mask_policy,
        },
    )?;
    let (knots_x, knots_y) = known_knots(&noisy, &mask)?;
    let (first, last) = (knots_x.first_time(), knots_x.last_time());
    let mut queries = Vec::new();
    let mut truth = Vec::new();
    for &t in mask.indices() {
        let tf = t as f64;
        if tf > first && tf < last {
            let p = clean.at(t).expect("mask indices lie in the trajectory");
            queries.push(tf);
            truth.push((t, p.x, p.y));
        }
    }
    Ok(RunCase {
        run,
        noise_seed,
        mask_seed,
        noisy,
        mask,
        knots_x,
        knots_y,
        queries,
        truth,
    })
}

/// Per-axis knot series of the samples not hidden by `mask`.
pub fn known_knots(traj: &Trajectory, mask: &MissingMask) -> Result<(KnotSeries, KnotSeries)> {
    let known: Vec<_> = traj.points().iter().filter(|p| !mask.contains(p.t)).collect();
    let t: Vec<f64> = known.iter().map(|p| p.t as f64).collect();
    Ok((
        KnotSeries::new(t.clone(), known.iter().map(|p| p.x).collect())?,
        KnotSeries::new(t, known.iter().map(|p| p.y).collect())?,
    ))
}
