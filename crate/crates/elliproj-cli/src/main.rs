//! Command-line interface for the finite-projection toolkit.
//!
//! Subcommands cover direction-set generation and verification, the
//! random-projection two-sample test, the projection-weighted classifier,
//! and the Monte Carlo experiment harness. All randomness flows from
//! explicit `--seed` flags and outputs are byte-identical across reruns
//! and `--threads` settings.
//!
//! Exit codes: 0 success (or test does not reject), 1 compute error,
//! 2 invalid input or configuration, 3 direction set is not a uniqueness
//! set (witness printed), 4 test rejects.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use elliproj::harness::{
    write_accuracy_table, write_manifest, write_power_table, write_sharpness_table,
};
use elliproj::io::{
    read_classifier_path, read_direction_set_path, read_labeled_sample_path, read_sample_path,
    write_classifier_path, write_direction_set_path, write_json_pretty, write_labels,
};
use elliproj::{
    canonical_sm_set, fit, is_sm_uniqueness_set, null_witness, predict_batch,
    run_classification_experiment, run_mixture_comparison, run_power_study, run_sharpness_demo,
    sum_basis_sm_set, BootstrapScheme, Error, Result, RngSeed, RptConfig,
    ScenarioSpec,
};

const EXIT_OK: i32 = 0;
const EXIT_COMPUTE: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_NOT_UNIQUE: i32 = 3;
const EXIT_REJECT: i32 = 4;

#[derive(Parser)]
#[command(
    name = "elliproj",
    version,
    about = "Finite-projection two-sample testing and classification for elliptical data"
)]
struct Cli {
    /// Cap the worker thread count (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SmsetKind {
    /// Standard basis vectors plus pairwise sums: the minimal canonical set.
    Canonical,
    /// All single-index and two-index sums over a supplied basis.
    SumBasis,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a direction set and write it as CSV.
    GenSmset {
        /// Ambient dimension (required for --kind canonical).
        #[arg(long)]
        dim: Option<usize>,
        /// Which construction to use.
        #[arg(long, value_enum)]
        kind: SmsetKind,
        /// CSV file with d basis vectors (required for --kind sum-basis).
        #[arg(long)]
        basis: Option<PathBuf>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check whether a direction set determines symmetric matrices; if not,
    /// print a nonzero witness annihilated by every direction.
    CheckSmset {
        /// Input CSV path.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Random-projection two-sample test: maximal projected KS distance
    /// over a direction set, bootstrap-calibrated.
    Rpt {
        /// First sample (CSV, one observation per row).
        #[arg(long)]
        x: PathBuf,
        /// Second sample (CSV, same number of columns).
        #[arg(long)]
        y: PathBuf,
        /// Directions CSV; defaults to the canonical set for the data's
        /// dimension.
        #[arg(long)]
        dirs: Option<PathBuf>,
        /// Significance level.
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Bootstrap replicates.
        #[arg(long, alias = "B", default_value_t = 500)]
        bootstrap: usize,
        /// Random seed for the calibration.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Calibrate with pooled resampling instead of centered per-sample
        /// resampling.
        #[arg(long)]
        pooled: bool,
    },
    /// Fit the projection-weighted k-NN classifier and/or predict labels.
    Classify {
        /// Labeled training CSV (features plus trailing 0/1 label column).
        /// Enables fit mode.
        #[arg(long)]
        train: Option<PathBuf>,
        /// Model JSON path: written in fit mode, read in predict-only mode.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Feature CSV to predict; labels are written one per line.
        #[arg(long)]
        predict: Option<PathBuf>,
        /// Where to write predicted labels (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directions CSV; defaults to the canonical set for the data's
        /// dimension.
        #[arg(long)]
        dirs: Option<PathBuf>,
        /// Neighbor count; omitted means 5-fold cross-validation over
        /// {1, 3, 5, 9, 15}.
        #[arg(long)]
        k: Option<usize>,
        /// Fraction of training rows held out for direction weighting.
        #[arg(long, default_value_t = 0.25)]
        omega: f64,
        /// Weight-rank retention threshold in (0, 1].
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Random seed for the train/weighting split.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a Monte Carlo experiment described by a scenario JSON config and
    /// write result tables plus a manifest into a directory.
    Experiment {
        /// Scenario config JSON.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore a second initialization (e.g. in tests): the pool is
        // process-global and results do not depend on its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_COMPUTE
            }
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::GenSmset { dim, kind, basis, out } => gen_smset(dim, kind, basis, &out),
        Command::CheckSmset { input } => check_smset(&input),
        Command::Rpt { x, y, dirs, alpha, bootstrap, seed, pooled } => {
            rpt(&x, &y, dirs.as_deref(), alpha, bootstrap, seed, pooled)
        }
        Command::Classify { train, model, predict, out, dirs, k, omega, delta, seed } => classify(
            train.as_deref(),
            model.as_deref(),
            predict.as_deref(),
            out.as_deref(),
            dirs.as_deref(),
            k,
            omega,
            delta,
            seed,
        ),
        Command::Experiment { config, out } => experiment(&config, &out),
    }
}

fn gen_smset(
    dim: Option<usize>,
    kind: SmsetKind,
    basis: Option<PathBuf>,
    out: &Path,
) -> Result<i32> {
    let set = match kind {
        SmsetKind::Canonical => {
            let d = dim.ok_or_else(|| {
                Error::BadConfig("--kind canonical requires --dim".into())
            })?;
            if d == 0 {
                return Err(Error::BadConfig("dimension must be positive".into()));
            }
            canonical_sm_set(d)
        }
        SmsetKind::SumBasis => {
            let path = basis.ok_or_else(|| {
                Error::BadConfig("--kind sum-basis requires --basis".into())
            })?;
            let basis_set = read_direction_set_path(path)?;
            if let Some(d) = dim {
                if d != basis_set.dim() {
                    return Err(Error::DimensionMismatch { expected: d, got: basis_set.dim() });
                }
            }
            sum_basis_sm_set(&basis_set)?
        }
    };
    write_direction_set_path(out, &set)?;
    Ok(EXIT_OK)
}

fn check_smset(input: &Path) -> Result<i32> {
    let set = read_direction_set_path(input)?;
    let stdout = std::io::stdout();
    if is_sm_uniqueness_set(&set) {
        write_json_pretty(
            stdout.lock(),
            &serde_json::json!({
                "uniqueness_set": true,
                "dim": set.dim(),
                "directions": set.len(),
            }),
        )?;
        Ok(EXIT_OK)
    } else {
        let witness = null_witness(&set)?;
        write_json_pretty(
            stdout.lock(),
            &serde_json::json!({
                "uniqueness_set": false,
                "dim": set.dim(),
                "directions": set.len(),
                "witness": witness.to_rows(),
            }),
        )?;
        Ok(EXIT_NOT_UNIQUE)
    }
}

fn rpt(
    x: &Path,
    y: &Path,
    dirs: Option<&Path>,
    alpha: f64,
    bootstrap: usize,
    seed: u64,
    pooled: bool,
) -> Result<i32> {
    let x = read_sample_path(x)?;
    let y = read_sample_path(y)?;
    let directions = match dirs {
        Some(path) => read_direction_set_path(path)?,
        None => canonical_sm_set(x.dim()),
    };
    let mut cfg = RptConfig::new(directions);
    cfg.alpha = alpha;
    cfg.bootstrap_reps = bootstrap;
    cfg.seed = RngSeed::new(seed);
    if pooled {
        cfg.scheme = BootstrapScheme::Pooled;
    }
    let report = elliproj::rpt_test(&x, &y, &cfg)?;
    write_json_pretty(std::io::stdout().lock(), &report)?;
    Ok(if report.reject { EXIT_REJECT } else { EXIT_OK })
}

#[allow(clippy::too_many_arguments)]
fn classify(
    train: Option<&Path>,
    model_path: Option<&Path>,
    predict_path: Option<&Path>,
    out: Option<&Path>,
    dirs: Option<&Path>,
    k: Option<usize>,
    omega: f64,
    delta: f64,
    seed: u64,
) -> Result<i32> {
    let model = match (train, model_path) {
        (Some(train_path), _) => {
            let data = read_labeled_sample_path(train_path)?;
            let directions = match dirs {
                Some(path) => read_direction_set_path(path)?,
                None => canonical_sm_set(data.features().dim()),
            };
            let fitted = fit(&data, &directions, k, omega, delta, RngSeed::new(seed))?;
            if let Some(path) = model_path {
                write_classifier_path(path, &fitted)?;
            } else if predict_path.is_none() {
                return Err(Error::BadConfig(
                    "fit mode needs --model (to save) or --predict (to use the fit)".into(),
                ));
            }
            fitted
        }
        (None, Some(path)) => {
            if dirs.is_some() || k.is_some() {
                return Err(Error::BadConfig(
                    "--dirs and --k apply to fitting; predict mode takes them from the model"
                        .into(),
                ));
            }
            read_classifier_path(path)?
        }
        (None, None) => {
            return Err(Error::BadConfig("pass --train (fit) or --model (predict)".into()))
        }
    };
    if let Some(path) = predict_path {
        let features = read_sample_path(path)?;
        let labels = predict_batch(&model, &features)?;
        match out {
            Some(path) => write_labels(BufWriter::new(File::create(path)?), &labels)?,
            None => write_labels(std::io::stdout().lock(), &labels)?,
        }
    }
    Ok(EXIT_OK)
}

fn experiment(config: &Path, out: &Path) -> Result<i32> {
    let spec: ScenarioSpec = elliproj::io::read_json(std::io::BufReader::new(File::open(config)?))?;
    spec.validate()?;
    std::fs::create_dir_all(out)?;
    let table = |name: &str| -> Result<BufWriter<File>> {
        Ok(BufWriter::new(File::create(out.join(name))?))
    };
    let outputs: Vec<&str> = match &spec {
        ScenarioSpec::TailWeight { .. }
        | ScenarioSpec::LocationShift { .. }
        | ScenarioSpec::ScalePerturbation { .. } => {
            let curve = run_power_study(&spec)?;
            write_power_table(table("power.csv")?, std::slice::from_ref(&curve))?;
            vec!["power.csv", "manifest.json"]
        }
        ScenarioSpec::Mixture { .. } => {
            let curves = run_mixture_comparison(&spec)?;
            write_power_table(table("comparison.csv")?, &curves)?;
            vec!["comparison.csv", "manifest.json"]
        }
        ScenarioSpec::Sharpness { d, n, replications, seed } => {
            let outcome = run_sharpness_demo(*d, *n, *replications, RngSeed::new(*seed))?;
            write_sharpness_table(table("sharpness.csv")?, &outcome)?;
            vec!["sharpness.csv", "manifest.json"]
        }
        ScenarioSpec::Classify { .. } => {
            let summary = run_classification_experiment(&spec)?;
            write_accuracy_table(table("accuracy.csv")?, &summary)?;
            vec!["accuracy.csv", "manifest.json"]
        }
    };
    write_manifest(BufWriter::new(File::create(out.join("manifest.json"))?), &spec, &outputs)?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{}", serde_json::json!({ "outputs": outputs }))?;
    Ok(EXIT_OK)
}
