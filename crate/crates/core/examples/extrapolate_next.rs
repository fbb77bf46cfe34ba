//! Predicts the next point of a noisy spiral from its recent history and
//! prints the weights used on each axis.

use manifold_interp::lli::{extrapolate_next, solve_weights, Window};
use manifold_interp::LliConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = LliConfig::new(5, 1.0)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = (0..40)
        .map(|i| {
            let a = i as f64 * 0.15;
            let r = 100.0 + 4.0 * i as f64;
            (r * a.cos(), r * a.sin())
        })
        .unzip();

    let history = 30;
    let px = extrapolate_next(&xs[..history], &config)?;
    let py = extrapolate_next(&ys[..history], &config)?;
    println!("predicted ({px:.3}, {py:.3})");
    println!("actual    ({:.3}, {:.3})", xs[history], ys[history]);

    let tail = &xs[history - 6..history];
    let w = solve_weights(&Window::new(&tail[..5], tail[5])?, &config)?;
    println!("x weights {:?} (sum {:.15})", w.as_slice(), w.sum());
    Ok(())
}
