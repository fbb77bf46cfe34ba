//! Mean LLI error against the regularisation strength on a config's corpus.

use std::path::PathBuf;

use manifold_interp::bench::{run_accuracy_sweep, summarize, ExperimentSpec};
use manifold_interp::MethodId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/smoke.json")));
    let mut spec = ExperimentSpec::load(&path)?;
    spec.methods = vec![MethodId::Lli];

    println!("{:>8} {:>10} {:>10}", "sigma", "ratio", "mean_err");
    for sigma in [1e-6, 1e-3, 1e-2, 0.1, 1.0, 10.0] {
        spec.sigma = sigma;
        for row in summarize(&run_accuracy_sweep(&spec, None)?) {
            println!("{sigma:>8} {:>10} {:>10.4}", row.loss_ratio, row.mean_err);
        }
    }
    Ok(())
}
