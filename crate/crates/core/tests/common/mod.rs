//! Naive reference implementations used to check the library.
//!
//! Everything here is deliberately written from the defining equations with
//! dense Gaussian elimination, sharing no code with the crate.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Stationarity and feasibility of `min w^T (C + sigma tr(C) I) w` subject to
/// `sum w = 1`, solved as one bordered linear system.
pub fn kkt_weights(values: &[f64], target: f64, sigma: f64) -> Vec<f64> {
    let k = values.len();
    let x: Vec<f64> = values.iter().map(|v| target - v).collect();
    let tr: f64 = x.iter().map(|d| d * d).sum();
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = 2.0 * x[i] * x[j];
        }
        a[i][i] += 2.0 * sigma * tr;
        a[i][k] = 1.0;
        a[k][i] = 1.0;
    }
    let mut b = vec![0.0; k + 1];
    b[k] = 1.0;
    gauss_solve(a, b)[..k].to_vec()
}

/// Strictly increasing times with spacings in `[0.3, 2]` and values in
/// `[-10, 10]`.
pub fn random_knots(r: &mut ChaCha8Rng, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut t = vec![r.random_range(-5.0..5.0)];
    for _ in 1..n {
        let last = *t.last().unwrap();
        t.push(last + r.random_range(0.3..2.0));
    }
    let v = (0..n).map(|_| r.random_range(-10.0..10.0)).collect();
    (t, v)
}

pub fn random_queries(r: &mut ChaCha8Rng, t: &[f64], count: usize) -> Vec<f64> {
    let (lo, hi) = (t[0], t[t.len() - 1]);
    (0..count).map(|_| r.random_range(lo..=hi)).collect()
}

fn segment(t: &[f64], q: f64) -> usize {
    let mut i = 0;
    while i + 2 < t.len() && q > t[i + 1] {
        i += 1;
    }
    i
}

pub fn linear_oracle(t: &[f64], v: &[f64], q: f64) -> f64 {
    let i = segment(t, q);
    v[i] + (v[i + 1] - v[i]) * (q - t[i]) / (t[i + 1] - t[i])
}

/// Natural cubic spline from the full `4(n-1)` coefficient system:
/// `s_i(x) = a + b d + c d^2 + e d^3` with `d = x - t_i`.
pub fn natural_spline_oracle(t: &[f64], v: &[f64], q: f64) -> f64 {
    let m = t.len() - 1;
    let size = 4 * m;
    let mut a = vec![vec![0.0; size]; size];
    let mut b = vec![0.0; size];
    let mut row = 0;
    for i in 0..m {
        let h = t[i + 1] - t[i];
        let c = 4 * i;
        a[row][c] = 1.0;
        b[row] = v[i];
        row += 1;
        a[row][c] = 1.0;
        a[row][c + 1] = h;
        a[row][c + 2] = h * h;
        a[row][c + 3] = h * h * h;
        b[row] = v[i + 1];
        row += 1;
        if i + 1 < m {
            // First and second derivative continuity at t_{i+1}.
            a[row][c + 1] = 1.0;
            a[row][c + 2] = 2.0 * h;
            a[row][c + 3] = 3.0 * h * h;
            a[row][c + 5] = -1.0;
            row += 1;
            a[row][c + 2] = 2.0;
            a[row][c + 3] = 6.0 * h;
            a[row][c + 6] = -2.0;
            row += 1;
        }
    }
    a[row][2] = 2.0;
    row += 1;
    let h = t[m] - t[m - 1];
    let c = 4 * (m - 1);
    a[row][c + 2] = 2.0;
    a[row][c + 3] = 6.0 * h;
    let coef = gauss_solve(a, b);
    let i = segment(t, q);
    let d = q - t[i];
    let c = &coef[4 * i..4 * i + 4];
    c[0] + c[1] * d + c[2] * d * d + c[3] * d * d * d
}

fn hermite_oracle(t: &[f64], v: &[f64], d: &[f64], q: f64) -> f64 {
    let i = segment(t, q);
    let h = t[i + 1] - t[i];
    let s = (q - t[i]) / h;
    let h00 = 2.0 * s.powi(3) - 3.0 * s * s + 1.0;
    let h10 = s.powi(3) - 2.0 * s * s + s;
    let h01 = -2.0 * s.powi(3) + 3.0 * s * s;
    let h11 = s.powi(3) - s * s;
    h00 * v[i] + h10 * h * d[i] + h01 * v[i + 1] + h11 * h * d[i + 1]
}

fn secants(t: &[f64], v: &[f64]) -> Vec<f64> {
    (0..t.len() - 1)
        .map(|i| (v[i + 1] - v[i]) / (t[i + 1] - t[i]))
        .collect()
}

/// Fritsch-Carlson slopes: weighted harmonic means inside, a one-sided
/// three-point estimate with shape-preserving clamps at the ends.
pub fn pchip_oracle(t: &[f64], v: &[f64], q: f64) -> f64 {
    let n = t.len();
    let del = secants(t, v);
    let h: Vec<f64> = (0..n - 1).map(|i| t[i + 1] - t[i]).collect();
    let mut d = vec![0.0; n];
    if n == 2 {
        d = vec![del[0], del[0]];
    } else {
        for k in 1..n - 1 {
            if del[k - 1] * del[k] > 0.0 {
                let w1 = 2.0 * h[k] + h[k - 1];
                let w2 = h[k] + 2.0 * h[k - 1];
                d[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
            }
        }
        let end = |h0: f64, h1: f64, m0: f64, m1: f64| {
            let e = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
            let sgn = |x: f64| if x > 0.0 { 1 } else if x < 0.0 { -1 } else { 0 };
            if sgn(e) != sgn(m0) {
                0.0
            } else if sgn(m0) != sgn(m1) && e.abs() > 3.0 * m0.abs() {
                3.0 * m0
            } else {
                e
            }
        };
        d[0] = end(h[0], h[1], del[0], del[1]);
        d[n - 1] = end(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    }
    hermite_oracle(t, v, &d, q)
}

/// Modified Akima slopes with two extrapolated secants on each side.
pub fn makima_oracle(t: &[f64], v: &[f64], q: f64) -> f64 {
    let n = t.len();
    let del = secants(t, v);
    if n == 2 {
        return linear_oracle(t, v, q);
    }
    let m = del.len();
    // Padded secant list: index j + 2 holds del[j].
    let mut p = vec![0.0; m + 4];
    p[2..m + 2].copy_from_slice(&del);
    p[1] = 2.0 * p[2] - p[3];
    p[0] = 2.0 * p[1] - p[2];
    p[m + 2] = 2.0 * p[m + 1] - p[m];
    p[m + 3] = 2.0 * p[m + 2] - p[m + 1];
    let d: Vec<f64> = (0..n)
        .map(|i| {
            let (a, b, c, e) = (p[i], p[i + 1], p[i + 2], p[i + 3]);
            let w1 = (e - c).abs() + (e + c).abs() / 2.0;
            let w2 = (b - a).abs() + (b + a).abs() / 2.0;
            if w1 + w2 == 0.0 {
                (b + c) / 2.0
            } else {
                (w1 * b + w2 * c) / (w1 + w2)
            }
        })
        .collect();
    hermite_oracle(t, v, &d, q)
}

pub fn rbf_oracle(t: &[f64], v: &[f64], q: f64) -> f64 {
    let n = t.len();
    let c = (t[n - 1] - t[0]) / (n - 1) as f64;
    let phi = |r: f64| (r * r + c * c).sqrt();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| phi(t[i] - t[j])).collect())
        .collect();
    let lambda = gauss_solve(a, v.to_vec());
    (0..n).map(|i| lambda[i] * phi(q - t[i])).sum()
}

/// Ordinary kriging in primal form: weights for the query, then the weighted
/// sum of the data.
pub fn kriging_oracle(t: &[f64], v: &[f64], q: f64) -> f64 {
    let n = t.len();
    let mean = v.iter().sum::<f64>() / n as f64;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sill = if var > 0.0 { var } else { 1.0 };
    let range = (t[n - 1] - t[0]) / 4.0;
    let g = |h: f64| sill * (1.0 - (-h.abs() / range).exp());
    let mut a = vec![vec![0.0; n + 1]; n + 1];
    let mut b = vec![1.0; n + 1];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = g(t[i] - t[j]);
        }
        a[i][n] = 1.0;
        a[n][i] = 1.0;
        b[i] = g(q - t[i]);
    }
    let w = gauss_solve(a, b);
    (0..n).map(|i| w[i] * v[i]).sum()
}

use manifold_interp::baselines::{
    kriging_interp, linear_interp, makima_interp, pchip_interp, rbf_interp, spline_interp,
};
use manifold_interp::KnotSeries;

pub type Interp = fn(&KnotSeries, &[f64]) -> manifold_interp::Result<Vec<f64>>;
pub type Oracle = fn(&[f64], &[f64], f64) -> f64;

/// Library interpolant, naive oracle and fewest knots for each baseline.
pub fn baseline_pairs() -> Vec<(&'static str, Interp, Oracle, usize)> {
    vec![
        ("linear", linear_interp as Interp, linear_oracle as Oracle, 2),
        ("spline", spline_interp, natural_spline_oracle, 3),
        ("pchip", pchip_interp, pchip_oracle, 2),
        ("makima", makima_interp, makima_oracle, 2),
        ("rbf", rbf_interp, rbf_oracle, 2),
        ("kriging", kriging_interp, kriging_oracle, 3),
    ]
}

/// Largest deviation from the oracle over `instances` random knot sets with
/// up to 20 knots and 10 queries each.
pub fn oracle_max_error(interp: Interp, oracle: Oracle, min_knots: usize, seed: u64, instances: usize) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..instances {
        let n = r.random_range(min_knots..=20);
        let (t, v) = random_knots(&mut r, n);
        let mut q = random_queries(&mut r, &t, 10);
        q.push(t[n / 2]);
        let knots = KnotSeries::new(t.clone(), v.clone()).unwrap();
        let got = interp(&knots, &q).unwrap();
        for (qi, g) in q.iter().zip(got) {
            let want = oracle(&t, &v, *qi);
            let err = (g - want).abs() / want.abs().max(1.0);
            worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
        }
    }
    worst
}

/// Number of random monotone instances on which PCHIP leaves the data range
/// of some segment.
pub fn pchip_monotonicity_violations(seed: u64, instances: usize) -> usize {
    let mut r = rng(seed);
    let mut bad = 0;
    for _ in 0..instances {
        let n = r.random_range(2..=20);
        let (t, _) = random_knots(&mut r, n);
        let mut v = vec![r.random_range(-10.0..10.0)];
        let decreasing = r.random_bool(0.5);
        for _ in 1..n {
            let step = if r.random_bool(0.2) { 0.0 } else { r.random_range(0.0..5.0) };
            let last = *v.last().unwrap();
            v.push(if decreasing { last - step } else { last + step });
        }
        let knots = KnotSeries::new(t.clone(), v.clone()).unwrap();
        let q: Vec<f64> = (0..=400)
            .map(|i| (t[0] + (t[n - 1] - t[0]) * i as f64 / 400.0).min(t[n - 1]))
            .collect();
        let s = pchip_interp(&knots, &q).unwrap();
        let ordered = s.windows(2).all(|w| {
            if decreasing {
                w[1] <= w[0] + 1e-12
            } else {
                w[1] >= w[0] - 1e-12
            }
        });
        let (lo, hi) = (v[0].min(v[n - 1]), v[0].max(v[n - 1]));
        let bounded = s.iter().all(|x| *x >= lo - 1e-12 && *x <= hi + 1e-12);
        if !(ordered && bounded) {
            bad += 1;
        }
    }
    bad
}
