//! Every method on the same sparse series, side by side.

use manifold_interp::{interpolate_with, KnotSeries, MethodConfig, MethodId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let times: Vec<f64> = (0..30).filter(|t| t % 4 != 1).map(f64::from).collect();
    let values: Vec<f64> = times.iter().map(|t| 50.0 * (t / 6.0).sin() + t).collect();
    let knots = KnotSeries::new(times, values)?;
    let queries = [5.0f64, 9.0, 13.0, 17.0, 21.0];
    let config = MethodConfig::default();

    print!("{:>8}", "method");
    for q in queries {
        print!(" {:>9}", format!("t={q}"));
    }
    println!();
    print!("{:>8}", "truth");
    for q in queries {
        print!(" {:>9.3}", 50.0 * (q / 6.0).sin() + q);
    }
    println!();
    for method in MethodId::ALL {
        print!("{:>8}", method.name());
        match interpolate_with(method, &knots, &queries, &config) {
            Ok(v) => v.iter().for_each(|x| print!(" {x:>9.3}")),
            Err(e) => print!(" {e}"),
        }
        println!();
    }
    Ok(())
}
