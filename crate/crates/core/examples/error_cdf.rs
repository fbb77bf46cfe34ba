//! Error CDF quantiles of each method over a config's corpus.

use std::path::PathBuf;

use manifold_interp::bench::{cdf_by_method, run_accuracy_sweep, ExperimentSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/smoke.json")));
    let spec = ExperimentSpec::load(&path)?;
    let records = run_accuracy_sweep(&spec, None)?;
    println!("{:>8} {:>8} {:>8} {:>8} {:>8}", "method", "p50", "p90", "p99", "max");
    for (method, cdf) in cdf_by_method(&records)? {
        println!(
            "{method:>8} {:>8.3} {:>8.3} {:>8.3} {:>8.3}",
            cdf.quantile(0.5)?,
            cdf.quantile(0.9)?,
            cdf.quantile(0.99)?,
            cdf.quantile(1.0)?
        );
    }
    Ok(())
}
