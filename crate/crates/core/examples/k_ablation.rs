//! Mean LLI error for each window size in `ablation_k`, on one shared corpus.
//!
//! ```text
//! cargo run --release --example k_ablation -- fixtures/fixture_corpus.json
//! ```

use std::path::PathBuf;

use manifold_interp::bench::{run_k_ablation, summarize, ExperimentSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/smoke.json")));
    let spec = ExperimentSpec::load(&path)?;
    let groups = run_k_ablation(&spec, &spec.ablation_k, None)?;

    println!("{:>4} {:>10} {:>10}", "k", "mean_err", "points");
    for g in &groups {
        let (sum, n) = g
            .records
            .iter()
            .filter_map(|r| r.report())
            .fold((0.0, 0), |(s, n), rep| (s + rep.mean_euclidean * rep.count as f64, n + rep.count));
        println!("{:>4} {:>10.4} {:>10}", g.k, sum / n as f64, n);
        for row in summarize(&g.records) {
            println!("       ratio {:<4} {:.4}", row.loss_ratio, row.mean_err);
        }
    }
    Ok(())
}
