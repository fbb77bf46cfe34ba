//! Masks a noisy Bezier trajectory and fills the gaps with LLI.
//!
//! ```text
//! cargo run --example fill_gaps -- 0.3
//! ```

use manifold_interp::bench::known_knots;
use manifold_interp::metrics::compute_errors;
use manifold_interp::trajgen::{add_noise, make_mask, random_bezier_spec, sample_bezier, MaskPolicy, MaskSpec, NoiseSpec};
use manifold_interp::{interpolate_with, LliConfig, MethodConfig, MethodId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ratio: f64 = std::env::args().nth(1).map_or(Ok(0.3), |s| s.parse())?;
    let spec = random_bezier_spec((5, 14), (800.0, 1800.0), 1000, 42)?;
    let clean = sample_bezier(&spec)?;
    let noisy = add_noise(&clean, &NoiseSpec { sigma_noise: 2.0, seed: 7 })?;
    let mask = make_mask(
        &noisy,
        &MaskSpec {
            ratio,
            seed: 8,
            protect_prefix: 6,
            policy: MaskPolicy::Scattered,
        },
    )?;

    let (kx, ky) = known_knots(&noisy, &mask)?;
    let queries: Vec<f64> = mask.indices().iter().map(|&t| t as f64).collect();
    let config = MethodConfig::with_lli(LliConfig::new(5, 1.0)?);
    let xs = interpolate_with(MethodId::Lli, &kx, &queries, &config)?;
    let ys = interpolate_with(MethodId::Lli, &ky, &queries, &config)?;

    let truth: Vec<(i64, f64, f64)> = mask
        .indices()
        .iter()
        .map(|&t| {
            let p = clean.at(t).unwrap();
            (t, p.x, p.y)
        })
        .collect();
    let est: Vec<(i64, f64, f64)> = mask.indices().iter().zip(xs.iter().zip(&ys)).map(|(&t, (&x, &y))| (t, x, y)).collect();
    let report = compute_errors(&truth, &est)?;
    println!(
        "order {} curve, {} of {} samples filled: mean error {:.3} cm, mse {:.3}",
        spec.order,
        mask.len(),
        noisy.len(),
        report.mean_euclidean,
        report.mse
    );
    Ok(())
}
