//! Command-line front end: `generate`, `interpolate`, `bench`, `ablate` and
//! `cdf`.
//!
//! Settings come from a JSON experiment config; flags override the config,
//! which overrides built-in defaults. Exit codes: 0 success, 1 runtime
//! failure, 2 usage or configuration error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::baselines::{interpolate_with, MethodConfig, MethodId};
use crate::bench::{
    self, cdf_by_method, metrics_rows, render_summary_table, render_timing_csv, run_accuracy_sweep,
    run_k_ablation, run_timing, summarize, ExperimentSpec,
};
use crate::error::{Error, Result};
use crate::lli::{LliConfig, DEFAULT_K, DEFAULT_SIGMA};
use crate::metrics::{render_cdf_csv, render_metrics_csv};
use crate::trajgen::{
    load_mask_csv, load_trajectory_csv, render_mask_csv, render_trajectory_csv, MaskPolicy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "manifold-interp", version, about = "Trajectory gap filling with local-linear interpolation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the corpus of a config as trajectory and mask CSVs.
    Generate(CorpusArgs),
    /// Fill the masked samples of one trajectory.
    Interpolate(InterpolateArgs),
    /// Accuracy sweep and serial timing; writes metrics, CDF and timing CSVs.
    Bench(BenchArgs),
    /// LLI accuracy for several window sizes on one corpus.
    Ablate(AblateArgs),
    /// Error CDF of every method over the corpus.
    Cdf(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct Overrides {
    /// Methods to run (repeat or comma-separate); default from the config.
    #[arg(long, value_delimiter = ',')]
    pub method: Vec<MethodId>,
    /// LLI window size.
    #[arg(long)]
    pub k: Option<usize>,
    /// LLI regularisation strength.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Mask policy.
    #[arg(long, value_parser = ["scattered", "unrestricted"])]
    pub policy: Option<String>,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// JSON experiment config.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Run the accuracy sweep on one thread too, not only the timing.
    #[arg(long)]
    pub timing_serial: bool,
}

#[derive(Debug, Args)]
pub struct AblateArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Window sizes; default from the config.
    #[arg(long, value_delimiter = ',')]
    pub k_values: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct InterpolateArgs {
    /// Trajectory CSV (`t,x,y`).
    #[arg(long)]
    pub traj: PathBuf,
    /// Mask CSV (`t`) listing the samples to fill.
    #[arg(long)]
    pub mask: PathBuf,
    #[arg(long, default_value = "lli")]
    pub method: MethodId,
    #[arg(long, default_value_t = DEFAULT_K)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_SIGMA)]
    pub sigma: f64,
    /// Output CSV (`t,x,y,source`).
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Messages go to standard error; summaries to standard output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_) | Error::UnknownMethod(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Interpolate(a) => cmd_interpolate(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Ablate(a) => cmd_ablate(&a),
        Command::Cdf(a) => cmd_cdf(&a),
    }
}

/// Loads the config at `args.config` and applies flag overrides.
pub fn load_spec(args: &CorpusArgs) -> Result<ExperimentSpec> {
    if !args.config.exists() {
        return Err(Error::InvalidConfig(format!(
            "config file {} does not exist",
            args.config.display()
        )));
    }
    let mut spec = ExperimentSpec::load(&args.config)?;
    let o = &args.overrides;
    if !o.method.is_empty() {
        spec.methods = o.method.clone();
    }
    if let Some(k) = o.k {
        spec.k = k;
    }
    if let Some(sigma) = o.sigma {
        spec.sigma = sigma;
    }
    if let Some(seed) = o.seed {
        spec.master_seed = seed;
    }
    if let Some(p) = &o.policy {
        spec.mask_policy = p.parse::<MaskPolicy>()?;
    }
    spec.validate()?;
    Ok(spec)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

fn cmd_generate(args: &CorpusArgs) -> Result<i32> {
    let spec = load_spec(args)?;
    fs::create_dir_all(&args.out)?;
    let mut manifest = String::from("file,kind,n_points,curve_seed,seed,order,loss_ratio,run\n");
    let mut files = 0;
    for li in 0..spec.curve_lengths.len() {
        for ci in 0..spec.curves_per_length {
            let (bezier, curve_seed, clean) = bench::curve(&spec, li, ci)?;
            let n = clean.len();
            let stem = format!("curve_{li:02}_{ci:03}");
            let name = format!("{stem}_truth.csv");
            write(&args.out, &name, &render_trajectory_csv(&clean))?;
            let _ = writeln!(manifest, "{name},truth,{n},{curve_seed},{curve_seed},{},,", bezier.order);
            files += 1;
            for run in 0..spec.runs {
                for (ri, &ratio) in spec.loss_ratios.iter().enumerate() {
                    let case = bench::run_case(&spec, &clean, curve_seed, ri, run)?;
                    if ri == 0 {
                        let name = format!("{stem}_run{run}.csv");
                        write(&args.out, &name, &render_trajectory_csv(&case.noisy))?;
                        let _ = writeln!(
                            manifest,
                            "{name},noisy,{n},{curve_seed},{},{},,{run}",
                            case.noise_seed, bezier.order
                        );
                        files += 1;
                    }
                    let name = format!("{stem}_run{run}_mask{ri}.csv");
                    write(&args.out, &name, &render_mask_csv(&case.mask))?;
                    let _ = writeln!(
                        manifest,
                        "{name},mask,{n},{curve_seed},{},{},{ratio},{run}",
                        case.mask_seed, bezier.order
                    );
                    files += 1;
                }
            }
        }
    }
    write(&args.out, "manifest.csv", &manifest)?;
    print!("{manifest}");
    eprintln!("wrote {files} CSV files to {}", args.out.display());
    Ok(EXIT_OK)
}

fn cmd_interpolate(args: &InterpolateArgs) -> Result<i32> {
    let config = MethodConfig::with_lli(LliConfig::new(args.k, args.sigma)?);
    let traj = load_trajectory_csv(&args.traj)?;
    let mask = load_mask_csv(&args.mask)?;
    if let Some(t) = mask.indices().iter().find(|&&t| traj.at(t).is_none()) {
        return Err(Error::Validation(format!(
            "masked index {t} is not in the trajectory"
        )));
    }
    let (kx, ky) = bench::known_knots(&traj, &mask)?;
    let queries: Vec<f64> = mask.indices().iter().map(|&t| t as f64).collect();
    let xs = interpolate_with(args.method, &kx, &queries, &config)?;
    let ys = interpolate_with(args.method, &ky, &queries, &config)?;

    let mut out = String::from("t,x,y,source\n");
    let mut filled = mask.indices().iter().zip(xs.iter().zip(&ys)).peekable();
    for p in traj.points() {
        match filled.peek() {
            Some((&t, (x, y))) if t == p.t => {
                let _ = writeln!(out, "{},{},{},interpolated", p.t, x, y);
                filled.next();
            }
            _ => {
                let _ = writeln!(out, "{},{},{},observed", p.t, p.x, p.y);
            }
        }
    }
    fs::write(&args.out, out)?;
    eprintln!(
        "filled {} of {} samples with {}",
        mask.len(),
        traj.len(),
        args.method
    );
    Ok(EXIT_OK)
}

fn cmd_bench(args: &BenchArgs) -> Result<i32> {
    let spec = load_spec(&args.corpus)?;
    let out = &args.corpus.out;
    fs::create_dir_all(out)?;
    let threads = args.timing_serial.then_some(1);
    let records = run_accuracy_sweep(&spec, threads)?;
    write(out, "metrics.csv", &render_metrics_csv(&metrics_rows(&records)))?;
    write(out, "cdf.csv", &render_cdf_csv(&cdf_by_method(&records).unwrap_or_default()))?;
    let timing = run_timing(&spec)?;
    write(out, "timing.csv", &render_timing_csv(&timing))?;

    print!("{}", render_summary_table(&summarize(&records)));
    println!();
    print!("{}", render_timing_csv(&timing));
    Ok(all_failed_code(&records))
}

fn all_failed_code(records: &[bench::BenchRecord]) -> i32 {
    let failed = records.iter().filter(|r| r.is_failed()).count();
    if failed > 0 {
        eprintln!("{failed} of {} cells failed", records.len());
    }
    if failed == records.len() {
        EXIT_FAILURE
    } else {
        EXIT_OK
    }
}

fn cmd_ablate(args: &AblateArgs) -> Result<i32> {
    let mut spec = load_spec(&args.corpus)?;
    if !args.k_values.is_empty() {
        spec.ablation_k = args.k_values.clone();
    }
    let out = &args.corpus.out;
    fs::create_dir_all(out)?;
    let groups = run_k_ablation(&spec, &spec.ablation_k, None)?;
    let mut summary = String::from("k,loss_ratio,mean_err,mse,mean_x_err,std\n");
    let mut all = Vec::new();
    for g in &groups {
        write(
            out,
            &format!("ablation_k{}.csv", g.k),
            &render_metrics_csv(&metrics_rows(&g.records)),
        )?;
        for row in summarize(&g.records) {
            let _ = writeln!(
                summary,
                "{},{},{},{},{},{}",
                g.k, row.loss_ratio, row.mean_err, row.mse, row.mean_x_err, row.std
            );
        }
        all.extend(g.records.iter().cloned());
    }
    write(out, "ablation.csv", &summary)?;
    print!("{summary}");
    Ok(all_failed_code(&all))
}

fn cmd_cdf(args: &CorpusArgs) -> Result<i32> {
    let spec = load_spec(args)?;
    fs::create_dir_all(&args.out)?;
    let records = run_accuracy_sweep(&spec, None)?;
    let curves = cdf_by_method(&records)?;
    write(&args.out, "cdf.csv", &render_cdf_csv(&curves))?;

    let qs = [0.5, 0.8, 0.9, 0.95];
    let mut table = format!("{:>10}", "method");
    for q in qs {
        let _ = write!(table, " {:>9}", format!("q{q}"));
    }
    table.push('\n');
    for (method, c) in &curves {
        let _ = write!(table, "{method:>10}");
        for q in qs {
            let _ = write!(table, " {:>9.3}", c.quantile(q)?);
        }
        table.push('\n');
    }
    print!("{table}");
    Ok(all_failed_code(&records))
}
