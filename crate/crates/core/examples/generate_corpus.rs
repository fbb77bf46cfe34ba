//! Writes the first curve of a config, one noisy run and its masks as CSV.
//!
//! ```text
//! cargo run --example generate_corpus -- fixtures/smoke.json /tmp/corpus
//! ```

use std::path::PathBuf;

use manifold_interp::bench::{curve, run_case, ExperimentSpec};
use manifold_interp::trajgen::{write_mask_csv, write_trajectory_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/smoke.json")));
    let out = args.next().map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&out)?;

    let spec = ExperimentSpec::load(&config)?;
    let (bezier, seed, clean) = curve(&spec, 0, 0)?;
    write_trajectory_csv(&out.join("truth.csv"), &clean)?;
    println!("curve seed {seed}, order {}, {} samples", bezier.order, clean.len());
    for (ri, ratio) in spec.loss_ratios.iter().enumerate() {
        let case = run_case(&spec, &clean, seed, ri, 0)?;
        if ri == 0 {
            write_trajectory_csv(&out.join("noisy.csv"), &case.noisy)?;
        }
        write_mask_csv(&out.join(format!("mask_{ri}.csv")), &case.mask)?;
        println!("ratio {ratio}: {} masked, {} scored", case.mask.len(), case.queries.len());
    }
    println!("wrote {}", out.display());
    Ok(())
}
