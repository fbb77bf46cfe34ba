//! Runs the accuracy sweep of a JSON experiment config and prints the mean
//! error of every method at every loss ratio.
//!
//! ```text
//! cargo run --release --example accuracy_sweep -- fixtures/fixture_corpus.json
//! ```

use std::path::PathBuf;
use std::time::Instant;

use manifold_interp::bench::{render_summary_table, run_accuracy_sweep, summarize, ExperimentSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/smoke.json")));
    let spec = ExperimentSpec::load(&path)?;

    let start = Instant::now();
    let records = run_accuracy_sweep(&spec, None)?;
    let rows = summarize(&records);
    print!("{}", render_summary_table(&rows));
    println!(
        "{} records in {:.1} s",
        records.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
