//! Serial wall-clock timing of every method on one corpus, plus LLI at each
//! window size of `timing_k`.
//!
//! ```text
//! cargo run --release --example timing -- fixtures/timing.json
//! ```

use std::path::PathBuf;

use manifold_interp::bench::{render_timing_csv, run_timing, ExperimentSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/smoke.json")));
    let spec = ExperimentSpec::load(&path)?;
    let records = run_timing(&spec)?;
    print!("{}", render_timing_csv(&records));
    for r in &records {
        if let Some(report) = &r.report {
            println!(
                "{:>8} k={:<3} mean error {:.3} cm over {} points",
                r.method.name(),
                r.k,
                report.mean_euclidean,
                report.count
            );
        }
    }
    Ok(())
}
