//! Seeded Monte Carlo experiment driver.
//!
//! Reproduces the simulation studies at configurable scale: power curves
//! for three two-sample scenarios, the mixture comparison against the
//! energy-distance baseline, the sharpness demonstration (a deficient
//! direction set cannot see a matched alternative, the full set can), and
//! the projection-weighted classifier experiment.
//!
//! Every run is a pure function of its [`ScenarioSpec`]. Seeding follows a
//! tree: the root seed spawns one stream per grid point, each grid stream
//! spawns one stream per repetition, and each repetition splits again for
//! data generation and test calibration. Repetitions therefore parallelize
//! freely, and extending `replications` reproduces the earlier repetitions
//! bit for bit.
//!
//! Result tables are CSV (one row per grid point per test with rejection
//! counts, fractions, and Monte Carlo standard errors) plus a JSON manifest
//! echoing the effective configuration.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::energy_test;
use crate::classify::{fit, predict, LabeledSample};
use crate::elliptical::{
    matched_alternative, sample_elliptical, sample_mixture, EllipticalSpec, Generator,
    MixtureSpec, Sample,
};
use crate::error::{Error, Result};
use crate::rng::RngSeed;
use crate::rpt::{rpt_test, RptConfig};
use crate::smset::{canonical_sm_set, SymmetricMatrix};

// ---------------------------------------------------------------------------
// Scenario specification
// ---------------------------------------------------------------------------

fn d_power() -> usize {
    5
}
fn n_power() -> usize {
    500
}
fn grid_tail() -> Vec<f64> {
    vec![1.0, 2.0, 3.0, 4.0]
}
fn grid_shift() -> Vec<f64> {
    vec![0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
}
fn grid_scale() -> Vec<f64> {
    vec![0.0, 0.25, 0.5, 0.75, 1.0]
}
fn grid_mixture() -> Vec<f64> {
    vec![0.0, 0.2, 0.4, 0.6]
}
fn reps_power() -> usize {
    200
}
fn alpha_default() -> f64 {
    0.05
}
fn bootstrap_default() -> usize {
    500
}
fn permutations_default() -> usize {
    299
}
fn d_mixture() -> usize {
    5
}
fn n_mixture() -> usize {
    100
}
fn d_classify() -> usize {
    10
}
fn class_size_default() -> usize {
    500
}
fn shift_coords_default() -> usize {
    3
}
fn shift_max_default() -> f64 {
    3.0
}
fn train_fraction_default() -> f64 {
    0.75
}
fn omega_default() -> f64 {
    0.25
}
fn delta_default() -> f64 {
    0.5
}
fn reps_classify() -> usize {
    20
}
fn d_sharpness() -> usize {
    3
}
fn n_sharpness() -> usize {
    2000
}

/// One simulation study, fully specified. The JSON form is tagged by the
/// `scenario` field; omitted fields take the documented defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario")]
pub enum ScenarioSpec {
    /// Heavier- vs lighter-tailed standard Student-t laws: `X` is Cauchy,
    /// `Y` is Student-t with `nu_2` from the grid (`nu_2 = 1` is the null).
    #[serde(rename = "1")]
    TailWeight {
        #[serde(default = "d_power")]
        d: usize,
        #[serde(default = "n_power")]
        n: usize,
        #[serde(default)]
        m: Option<usize>,
        /// Degrees of freedom `nu_2`, integers stored as floats.
        #[serde(default = "grid_tail")]
        grid: Vec<f64>,
        #[serde(default = "reps_power")]
        replications: usize,
        #[serde(default = "alpha_default")]
        alpha: f64,
        #[serde(default = "bootstrap_default")]
        bootstrap: usize,
        #[serde(default)]
        seed: u64,
    },
    /// Location shift between two Student-t(2) laws: `Y` is shifted by
    /// `mu_2` along the all-ones vector (`mu_2 = 0` is the null).
    #[serde(rename = "2")]
    LocationShift {
        #[serde(default = "d_power")]
        d: usize,
        #[serde(default = "n_power")]
        n: usize,
        #[serde(default)]
        m: Option<usize>,
        /// Shift magnitudes `mu_2`.
        #[serde(default = "grid_shift")]
        grid: Vec<f64>,
        #[serde(default = "reps_power")]
        replications: usize,
        #[serde(default = "alpha_default")]
        alpha: f64,
        #[serde(default = "bootstrap_default")]
        bootstrap: usize,
        #[serde(default)]
        seed: u64,
    },
    /// Scale perturbation between two Student-t(2) laws: `Y` has
    /// `Sigma = I + theta * J` with `J` the all-ones matrix (`theta = 0`
    /// is the null).
    #[serde(rename = "3")]
    ScalePerturbation {
        #[serde(default = "d_power")]
        d: usize,
        #[serde(default = "n_power")]
        n: usize,
        #[serde(default)]
        m: Option<usize>,
        /// Perturbation magnitudes `theta >= 0`.
        #[serde(default = "grid_scale")]
        grid: Vec<f64>,
        #[serde(default = "reps_power")]
        replications: usize,
        #[serde(default = "alpha_default")]
        alpha: f64,
        #[serde(default = "bootstrap_default")]
        bootstrap: usize,
        #[serde(default)]
        seed: u64,
    },
    /// Three-part mixture comparison of the projection test against the
    /// energy baseline: `X` has shift 0, `Y` has shift `mu_2` from the grid.
    #[serde(rename = "mixture")]
    Mixture {
        #[serde(default = "d_mixture")]
        d: usize,
        #[serde(default = "n_mixture")]
        n: usize,
        #[serde(default)]
        m: Option<usize>,
        /// Shift magnitudes `mu_2`.
        #[serde(default = "grid_mixture")]
        grid: Vec<f64>,
        /// Component weights `(alpha_1, alpha_2, alpha_3)`; must sum to 1.
        weights: [f64; 3],
        #[serde(default = "reps_power")]
        replications: usize,
        #[serde(default = "alpha_default")]
        alpha: f64,
        #[serde(default = "bootstrap_default")]
        bootstrap: usize,
        /// Permutations for the energy test's calibration.
        #[serde(default = "permutations_default")]
        permutations: usize,
        #[serde(default)]
        seed: u64,
    },
    /// Shifted-Cauchy classification task: two classes of Cauchy
    /// observations, the second shifted by `eta` with `eta_i` uniform on
    /// `[0, shift_max)` for the first `shift_coords` coordinates.
    #[serde(rename = "classify")]
    Classify {
        #[serde(default = "d_classify")]
        d: usize,
        /// Observations per class.
        #[serde(default = "class_size_default")]
        class_size: usize,
        #[serde(default = "shift_coords_default")]
        shift_coords: usize,
        #[serde(default = "shift_max_default")]
        shift_max: f64,
        #[serde(default = "train_fraction_default")]
        train_fraction: f64,
        /// Neighbor count; omit to cross-validate.
        #[serde(default)]
        k: Option<usize>,
        #[serde(default = "omega_default")]
        omega: f64,
        #[serde(default = "delta_default")]
        delta: f64,
        #[serde(default = "reps_classify")]
        replications: usize,
        #[serde(default)]
        seed: u64,
    },
    /// Sharpness demonstration: test a Gaussian against its matched
    /// alternative with the deficient set (blind by construction) and the
    /// full canonical set (which sees the difference).
    #[serde(rename = "sharpness")]
    Sharpness {
        #[serde(default = "d_sharpness")]
        d: usize,
        #[serde(default = "n_sharpness")]
        n: usize,
        #[serde(default = "reps_power")]
        replications: usize,
        #[serde(default)]
        seed: u64,
    },
}

impl ScenarioSpec {
    /// The scenario tag as it appears in JSON.
    pub fn scenario_id(&self) -> &'static str {
        match self {
            ScenarioSpec::TailWeight { .. } => "1",
            ScenarioSpec::LocationShift { .. } => "2",
            ScenarioSpec::ScalePerturbation { .. } => "3",
            ScenarioSpec::Mixture { .. } => "mixture",
            ScenarioSpec::Classify { .. } => "classify",
            ScenarioSpec::Sharpness { .. } => "sharpness",
        }
    }

    /// Validate ranges common to all runners, so configuration problems
    /// surface before any sampling starts.
    pub fn validate(&self) -> Result<()> {
        match self {
            ScenarioSpec::TailWeight { d, n, m, grid, replications, alpha, bootstrap, .. }
            | ScenarioSpec::LocationShift { d, n, m, grid, replications, alpha, bootstrap, .. }
            | ScenarioSpec::ScalePerturbation {
                d, n, m, grid, replications, alpha, bootstrap, ..
            } => {
                check_power_common(*d, *n, *m, grid, *replications, *alpha, *bootstrap)?;
                match self {
                    ScenarioSpec::TailWeight { .. } => {
                        for &g in grid {
                            if g < 1.0 || g.fract() != 0.0 || g > u32::MAX as f64 {
                                return Err(Error::BadConfig(format!(
                                    "scenario 1 grid must hold integer degrees of freedom >= 1, got {g}"
                                )));
                            }
                        }
                    }
                    ScenarioSpec::ScalePerturbation { .. } => {
                        for &g in grid {
                            if g < 0.0 {
                                return Err(Error::BadConfig(format!(
                                    "scenario 3 grid must be nonnegative, got {g}"
                                )));
                            }
                        }
                    }
                    _ => {}
                }
                Ok(())
            }
            ScenarioSpec::Mixture {
                d,
                n,
                m,
                grid,
                weights,
                replications,
                alpha,
                bootstrap,
                permutations,
                ..
            } => {
                check_power_common(*d, *n, *m, grid, *replications, *alpha, *bootstrap)?;
                MixtureSpec::new(*d, 0.0, *weights)?;
                if *permutations < 99 {
                    return Err(Error::BadConfig(format!(
                        "permutations must be at least 99, got {permutations}"
                    )));
                }
                Ok(())
            }
            ScenarioSpec::Classify {
                d,
                class_size,
                shift_coords,
                shift_max,
                train_fraction,
                omega,
                delta,
                replications,
                ..
            } => {
                if *d == 0 {
                    return Err(Error::BadConfig("dimension must be positive".into()));
                }
                if *class_size < 4 {
                    return Err(Error::BadConfig(format!(
                        "class_size must be at least 4, got {class_size}"
                    )));
                }
                if *shift_coords > *d {
                    return Err(Error::BadConfig(format!(
                        "shift_coords = {shift_coords} exceeds dimension {d}"
                    )));
                }
                if !(*shift_max >= 0.0 && shift_max.is_finite()) {
                    return Err(Error::BadConfig(format!(
                        "shift_max must be finite and nonnegative, got {shift_max}"
                    )));
                }
                if !(*train_fraction > 0.0 && *train_fraction < 1.0) {
                    return Err(Error::BadConfig(format!(
                        "train_fraction must lie in (0, 1), got {train_fraction}"
                    )));
                }
                if !(*omega > 0.0 && *omega < 1.0) {
                    return Err(Error::BadConfig(format!("omega must lie in (0, 1), got {omega}")));
                }
                if !(*delta > 0.0 && *delta <= 1.0) {
                    return Err(Error::BadConfig(format!("delta must lie in (0, 1], got {delta}")));
                }
                check_replications(*replications)
            }
            ScenarioSpec::Sharpness { d, n, replications, .. } => {
                if *d < 2 {
                    return Err(Error::BadConfig(format!(
                        "sharpness demonstration needs d >= 2, got {d}"
                    )));
                }
                if *n == 0 {
                    return Err(Error::EmptySample);
                }
                check_replications(*replications)
            }
        }
    }
}

fn check_replications(replications: usize) -> Result<()> {
    if replications == 0 {
        return Err(Error::BadConfig("replications must be at least 1".into()));
    }
    Ok(())
}

fn check_power_common(
    d: usize,
    n: usize,
    m: Option<usize>,
    grid: &[f64],
    replications: usize,
    alpha: f64,
    bootstrap: usize,
) -> Result<()> {
    if d == 0 {
        return Err(Error::BadConfig("dimension must be positive".into()));
    }
    if n == 0 || m == Some(0) {
        return Err(Error::EmptySample);
    }
    if grid.is_empty() {
        return Err(Error::BadConfig("parameter grid must be nonempty".into()));
    }
    if grid.iter().any(|g| !g.is_finite()) {
        return Err(Error::BadConfig("parameter grid must be finite".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::BadConfig(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if bootstrap < 100 {
        return Err(Error::BadConfig(format!(
            "bootstrap must be at least 100, got {bootstrap}"
        )));
    }
    check_replications(replications)
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// Rejection counts along a parameter grid for one test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerCurve {
    /// Which test produced the curve (`"rpt"` or `"energy"`).
    pub test: String,
    /// Grid of the varied parameter.
    pub parameters: Vec<f64>,
    /// Rejections out of `replications`, aligned with `parameters`.
    pub rejections: Vec<usize>,
    /// Monte Carlo repetitions per grid point.
    pub replications: usize,
}

impl PowerCurve {
    /// Rejection fractions `rejections / replications`.
    pub fn fractions(&self) -> Vec<f64> {
        self.rejections.iter().map(|&r| r as f64 / self.replications as f64).collect()
    }

    /// Binomial Monte Carlo standard errors `sqrt(p (1 - p) / reps)`.
    pub fn mc_se(&self) -> Vec<f64> {
        self.fractions()
            .iter()
            .map(|&p| (p * (1.0 - p) / self.replications as f64).sqrt())
            .collect()
    }
}

/// Outcome of the sharpness demonstration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessOutcome {
    /// Dimension of the demonstration.
    pub d: usize,
    /// Per-sample size.
    pub n: usize,
    /// Monte Carlo repetitions.
    pub replications: usize,
    /// Rejections when testing along the deficient set (blind by design).
    pub deficient_rejections: usize,
    /// Rejections when testing along the full canonical set.
    pub full_rejections: usize,
}

impl SharpnessOutcome {
    /// Rejection fraction along the deficient set.
    pub fn deficient_fraction(&self) -> f64 {
        self.deficient_rejections as f64 / self.replications as f64
    }

    /// Rejection fraction along the full canonical set.
    pub fn full_fraction(&self) -> f64 {
        self.full_rejections as f64 / self.replications as f64
    }
}

/// Per-repetition test accuracies with their summary statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationSummary {
    /// Test accuracy of each repetition, in repetition order.
    pub accuracies: Vec<f64>,
    /// Mean accuracy.
    pub mean: f64,
    /// Sample standard deviation (zero for a single repetition).
    pub sd: f64,
}

impl ClassificationSummary {
    fn from_accuracies(accuracies: Vec<f64>) -> Self {
        let n = accuracies.len() as f64;
        let mean = accuracies.iter().sum::<f64>() / n;
        let sd = if accuracies.len() > 1 {
            (accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        ClassificationSummary { accuracies, mean, sd }
    }
}

// ---------------------------------------------------------------------------
// Power studies (scenarios 1-3)
// ---------------------------------------------------------------------------

/// The pair of distributions compared at one grid value.
fn scenario_pair(spec: &ScenarioSpec, param: f64) -> Result<(EllipticalSpec, EllipticalSpec)> {
    match spec {
        ScenarioSpec::TailWeight { d, .. } => {
            let x = EllipticalSpec::standard(*d, Generator::StudentT(1));
            let y = EllipticalSpec::standard(*d, Generator::StudentT(param as u32));
            Ok((x, y))
        }
        ScenarioSpec::LocationShift { d, .. } => {
            let x = EllipticalSpec::standard(*d, Generator::StudentT(2));
            let y = EllipticalSpec::new(
                vec![param; *d],
                SymmetricMatrix::identity(*d),
                Generator::StudentT(2),
            )?;
            Ok((x, y))
        }
        ScenarioSpec::ScalePerturbation { d, .. } => {
            let x = EllipticalSpec::standard(*d, Generator::StudentT(2));
            let rows: Vec<Vec<f64>> = (0..*d)
                .map(|i| (0..*d).map(|j| if i == j { 1.0 + param } else { param }).collect())
                .collect();
            let y = EllipticalSpec::new(
                vec![0.0; *d],
                SymmetricMatrix::from_rows(&rows)?,
                Generator::StudentT(2),
            )?;
            Ok((x, y))
        }
        _ => Err(Error::BadConfig(format!(
            "scenario {:?} is not a power-study scenario",
            spec.scenario_id()
        ))),
    }
}

/// Per-repetition rejection flags for one power-study grid, in
/// `[grid point][repetition]` order. Splitting this out keeps the streamed
/// seeding property testable: a longer run must extend a shorter one.
fn power_rejection_flags(spec: &ScenarioSpec) -> Result<Vec<Vec<bool>>> {
    spec.validate()?;
    let (d, n, m, grid, replications, alpha, bootstrap, seed) = match spec {
        ScenarioSpec::TailWeight { d, n, m, grid, replications, alpha, bootstrap, seed }
        | ScenarioSpec::LocationShift { d, n, m, grid, replications, alpha, bootstrap, seed }
        | ScenarioSpec::ScalePerturbation { d, n, m, grid, replications, alpha, bootstrap, seed } => {
            (*d, *n, m.unwrap_or(*n), grid.clone(), *replications, *alpha, *bootstrap, *seed)
        }
        _ => {
            return Err(Error::BadConfig(format!(
                "scenario {:?} is not a power-study scenario",
                spec.scenario_id()
            )))
        }
    };
    let directions = canonical_sm_set(d);
    let root = RngSeed::new(seed);
    let mut flags = Vec::with_capacity(grid.len());
    for (g, &param) in grid.iter().enumerate() {
        let (px, py) = scenario_pair(spec, param)?;
        let grid_seed = root.substream(g as u64);
        let outcomes: Vec<bool> = (0..replications)
            .into_par_iter()
            .map(|r| {
                let rep = grid_seed.substream(r as u64);
                let x = sample_elliptical(&px, n, rep.substream(0))?;
                let y = sample_elliptical(&py, m, rep.substream(1))?;
                let mut cfg = RptConfig::new(directions.clone());
                cfg.bootstrap_reps = bootstrap;
                cfg.alpha = alpha;
                cfg.seed = rep.substream(2);
                Ok(rpt_test(&x, &y, &cfg)?.reject)
            })
            .collect::<Result<_>>()?;
        flags.push(outcomes);
    }
    Ok(flags)
}

/// Run a scenario-1/2/3 power study: for each grid value, draw the two
/// samples, run the projection test along the canonical direction set, and
/// count rejections.
pub fn run_power_study(spec: &ScenarioSpec) -> Result<PowerCurve> {
    let flags = power_rejection_flags(spec)?;
    let (grid, replications) = match spec {
        ScenarioSpec::TailWeight { grid, replications, .. }
        | ScenarioSpec::LocationShift { grid, replications, .. }
        | ScenarioSpec::ScalePerturbation { grid, replications, .. } => {
            (grid.clone(), *replications)
        }
        _ => unreachable!("power_rejection_flags rejects other scenarios"),
    };
    Ok(PowerCurve {
        test: "rpt".into(),
        parameters: grid,
        rejections: flags.iter().map(|f| f.iter().filter(|&&r| r).count()).collect(),
        replications,
    })
}

// ---------------------------------------------------------------------------
// Mixture comparison
// ---------------------------------------------------------------------------

/// Run the mixture comparison: both the projection test and the energy
/// baseline on the same draws, one curve per test (`"rpt"` first).
pub fn run_mixture_comparison(spec: &ScenarioSpec) -> Result<Vec<PowerCurve>> {
    spec.validate()?;
    let ScenarioSpec::Mixture {
        d,
        n,
        m,
        grid,
        weights,
        replications,
        alpha,
        bootstrap,
        permutations,
        seed,
    } = spec
    else {
        return Err(Error::BadConfig(format!(
            "scenario {:?} is not the mixture comparison",
            spec.scenario_id()
        )));
    };
    let m = m.unwrap_or(*n);
    let directions = canonical_sm_set(*d);
    let base = MixtureSpec::new(*d, 0.0, *weights)?;
    let root = RngSeed::new(*seed);
    let mut rpt_rejections = Vec::with_capacity(grid.len());
    let mut energy_rejections = Vec::with_capacity(grid.len());
    for (g, &mu2) in grid.iter().enumerate() {
        let alt = MixtureSpec::new(*d, mu2, *weights)?;
        let grid_seed = root.substream(g as u64);
        let outcomes: Vec<(bool, bool)> = (0..*replications)
            .into_par_iter()
            .map(|r| {
                let rep = grid_seed.substream(r as u64);
                let x = sample_mixture(&base, *n, rep.substream(0));
                let y = sample_mixture(&alt, m, rep.substream(1));
                let mut cfg = RptConfig::new(directions.clone());
                cfg.bootstrap_reps = *bootstrap;
                cfg.alpha = *alpha;
                cfg.seed = rep.substream(2);
                let rpt = rpt_test(&x, &y, &cfg)?;
                let energy = energy_test(&x, &y, *permutations, *alpha, rep.substream(3))?;
                Ok((rpt.reject, energy.reject))
            })
            .collect::<Result<_>>()?;
        rpt_rejections.push(outcomes.iter().filter(|o| o.0).count());
        energy_rejections.push(outcomes.iter().filter(|o| o.1).count());
    }
    Ok(vec![
        PowerCurve {
            test: "rpt".into(),
            parameters: grid.clone(),
            rejections: rpt_rejections,
            replications: *replications,
        },
        PowerCurve {
            test: "energy".into(),
            parameters: grid.clone(),
            rejections: energy_rejections,
            replications: *replications,
        },
    ])
}

// ---------------------------------------------------------------------------
// Sharpness demonstration
// ---------------------------------------------------------------------------

/// Run the sharpness demonstration at level 0.05 with 500 bootstrap
/// replicates.
///
/// `P` is the standard Gaussian in dimension `d`, `S` is the canonical set
/// minus its last element, and `Q` is the matched alternative built from
/// `S`'s null witness: every projection along `S` has identical
/// distribution under `P` and `Q`, so the test run along `S` rejects only
/// at its level, while the full canonical set separates the two laws.
pub fn run_sharpness_demo(d: usize, n: usize, reps: usize, seed: RngSeed) -> Result<SharpnessOutcome> {
    if d < 2 {
        return Err(Error::BadConfig(format!("sharpness demonstration needs d >= 2, got {d}")));
    }
    if n == 0 {
        return Err(Error::EmptySample);
    }
    check_replications(reps)?;
    let p = EllipticalSpec::standard(d, Generator::Gaussian);
    let full = canonical_sm_set(d);
    let deficient = full.without(full.len() - 1);
    let q = matched_alternative(&p, &deficient)?;
    let outcomes: Vec<(bool, bool)> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let rep = seed.substream(r as u64);
            let x = sample_elliptical(&p, n, rep.substream(0))?;
            let y = sample_elliptical(&q, n, rep.substream(1))?;
            let mut blind = RptConfig::new(deficient.clone());
            blind.seed = rep.substream(2);
            let mut sighted = RptConfig::new(full.clone());
            sighted.seed = rep.substream(3);
            Ok((rpt_test(&x, &y, &blind)?.reject, rpt_test(&x, &y, &sighted)?.reject))
        })
        .collect::<Result<_>>()?;
    Ok(SharpnessOutcome {
        d,
        n,
        replications: reps,
        deficient_rejections: outcomes.iter().filter(|o| o.0).count(),
        full_rejections: outcomes.iter().filter(|o| o.1).count(),
    })
}

// ---------------------------------------------------------------------------
// Classification experiment
// ---------------------------------------------------------------------------

/// Run the shifted-Cauchy classification experiment and report test
/// accuracy per repetition.
pub fn run_classification_experiment(spec: &ScenarioSpec) -> Result<ClassificationSummary> {
    spec.validate()?;
    let ScenarioSpec::Classify {
        d,
        class_size,
        shift_coords,
        shift_max,
        train_fraction,
        k,
        omega,
        delta,
        replications,
        seed,
    } = spec
    else {
        return Err(Error::BadConfig(format!(
            "scenario {:?} is not the classification experiment",
            spec.scenario_id()
        )));
    };
    let directions = canonical_sm_set(*d);
    let root = RngSeed::new(*seed);
    let accuracies: Vec<f64> = (0..*replications)
        .into_par_iter()
        .map(|r| {
            let rep = root.substream(r as u64);
            // Per-repetition shift vector, uniform on [0, shift_max) in the
            // first shift_coords coordinates.
            let mut eta_rng = rep.substream(0).rng();
            let eta: Vec<f64> = (0..*d)
                .map(|i| {
                    if i < *shift_coords {
                        eta_rng.random::<f64>() * shift_max
                    } else {
                        0.0
                    }
                })
                .collect();
            let class0 = EllipticalSpec::standard(*d, Generator::StudentT(1));
            let class1 =
                EllipticalSpec::new(eta, SymmetricMatrix::identity(*d), Generator::StudentT(1))?;
            let x0 = sample_elliptical(&class0, *class_size, rep.substream(1))?;
            let x1 = sample_elliptical(&class1, *class_size, rep.substream(2))?;

            let total = 2 * class_size;
            let mut order: Vec<usize> = (0..total).collect();
            use rand::seq::SliceRandom;
            order.shuffle(&mut rep.substream(3).rng());
            let n_train = ((*train_fraction) * total as f64).floor() as usize;
            if n_train == 0 || n_train >= total {
                return Err(Error::BadSplit(format!(
                    "train split of {n_train} rows out of {total} leaves no data on one side"
                )));
            }
            let row_of = |idx: usize| -> (Vec<f64>, u8) {
                if idx < *class_size {
                    (x0.row(idx), 0)
                } else {
                    (x1.row(idx - class_size), 1)
                }
            };
            let mut train_rows = Vec::with_capacity(n_train);
            let mut train_labels = Vec::with_capacity(n_train);
            for &idx in &order[..n_train] {
                let (row, label) = row_of(idx);
                train_rows.push(row);
                train_labels.push(label);
            }
            let train = LabeledSample::new(Sample::from_rows(*d, train_rows)?, train_labels)?;
            let model = fit(&train, &directions, *k, *omega, *delta, rep.substream(4))?;

            let mut correct = 0usize;
            for &idx in &order[n_train..] {
                let (row, label) = row_of(idx);
                if predict(&model, &row)? == label {
                    correct += 1;
                }
            }
            Ok(correct as f64 / (total - n_train) as f64)
        })
        .collect::<Result<_>>()?;
    Ok(ClassificationSummary::from_accuracies(accuracies))
}

// ---------------------------------------------------------------------------
// Result tables
// ---------------------------------------------------------------------------

/// Write power curves as CSV: one row per grid point per test.
pub fn write_power_table<W: Write>(writer: W, curves: &[PowerCurve]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record(["test", "parameter", "rejections", "replications", "fraction", "mc_se"])?;
    for curve in curves {
        let fractions = curve.fractions();
        let ses = curve.mc_se();
        for (i, &param) in curve.parameters.iter().enumerate() {
            w.write_record([
                curve.test.clone(),
                param.to_string(),
                curve.rejections[i].to_string(),
                curve.replications.to_string(),
                fractions[i].to_string(),
                ses[i].to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Write the sharpness outcome as a two-row CSV (deficient set, full set).
pub fn write_sharpness_table<W: Write>(writer: W, outcome: &SharpnessOutcome) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record(["set", "rejections", "replications", "fraction", "mc_se"])?;
    let reps = outcome.replications as f64;
    for (name, rejections) in [
        ("deficient", outcome.deficient_rejections),
        ("full", outcome.full_rejections),
    ] {
        let p = rejections as f64 / reps;
        w.write_record([
            name.to_string(),
            rejections.to_string(),
            outcome.replications.to_string(),
            p.to_string(),
            (p * (1.0 - p) / reps).sqrt().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Write per-repetition accuracies as CSV.
pub fn write_accuracy_table<W: Write>(writer: W, summary: &ClassificationSummary) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record(["repetition", "accuracy"])?;
    for (i, acc) in summary.accuracies.iter().enumerate() {
        w.write_record([(i + 1).to_string(), acc.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Write the run manifest: the effective configuration (defaults filled in)
/// plus the list of emitted files.
pub fn write_manifest<W: Write>(writer: W, spec: &ScenarioSpec, outputs: &[&str]) -> Result<()> {
    let manifest = serde_json::json!({
        "config": spec,
        "outputs": outputs,
    });
    crate::io::write_json_pretty(writer, &manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::read_json;

    fn tiny_tail_spec(replications: usize) -> ScenarioSpec {
        ScenarioSpec::TailWeight {
            d: 2,
            n: 30,
            m: None,
            grid: vec![1.0, 4.0],
            replications,
            alpha: 0.05,
            bootstrap: 100,
            seed: 9,
        }
    }

    #[test]
    fn json_defaults_fill_in() {
        let spec: ScenarioSpec = read_json(r#"{"scenario":"1"}"#.as_bytes()).unwrap();
        let ScenarioSpec::TailWeight { d, n, grid, replications, alpha, bootstrap, seed, m } = spec
        else {
            panic!("wrong variant");
        };
        assert_eq!((d, n, m, seed), (5, 500, None, 0));
        assert_eq!(grid, vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(replications, 200);
        assert_eq!(alpha, 0.05);
        assert_eq!(bootstrap, 500);
    }

    #[test]
    fn unknown_scenario_is_a_json_error() {
        let r: Result<ScenarioSpec> = read_json(r#"{"scenario":"7"}"#.as_bytes());
        assert!(matches!(r, Err(Error::Json(_))));
    }

    #[test]
    fn validation_rejects_bad_grids() {
        let spec: ScenarioSpec =
            read_json(r#"{"scenario":"1","grid":[1.5]}"#.as_bytes()).unwrap();
        assert!(matches!(spec.validate(), Err(Error::BadConfig(_))));
        let spec: ScenarioSpec = read_json(r#"{"scenario":"2","grid":[]}"#.as_bytes()).unwrap();
        assert!(matches!(spec.validate(), Err(Error::BadConfig(_))));
        let spec: ScenarioSpec =
            read_json(r#"{"scenario":"3","grid":[-0.5]}"#.as_bytes()).unwrap();
        assert!(matches!(spec.validate(), Err(Error::BadConfig(_))));
        let spec: ScenarioSpec =
            read_json(r#"{"scenario":"mixture","weights":[0.5,0.2,0.1]}"#.as_bytes()).unwrap();
        assert!(matches!(spec.validate(), Err(Error::BadConfig(_))));
    }

    #[test]
    fn power_study_rejects_wrong_scenario() {
        let spec: ScenarioSpec =
            read_json(r#"{"scenario":"sharpness"}"#.as_bytes()).unwrap();
        assert!(matches!(run_power_study(&spec), Err(Error::BadConfig(_))));
    }

    #[test]
    fn power_study_is_deterministic_and_streams_repetitions() {
        let short = power_rejection_flags(&tiny_tail_spec(2)).unwrap();
        let again = power_rejection_flags(&tiny_tail_spec(2)).unwrap();
        assert_eq!(short, again);
        let long = power_rejection_flags(&tiny_tail_spec(4)).unwrap();
        for (s, l) in short.iter().zip(&long) {
            assert_eq!(&l[..2], s.as_slice());
        }
        let curve = run_power_study(&tiny_tail_spec(4)).unwrap();
        assert_eq!(curve.test, "rpt");
        assert_eq!(curve.parameters, vec![1.0, 4.0]);
        assert_eq!(curve.replications, 4);
        for (&r, f) in curve.rejections.iter().zip(curve.fractions()) {
            assert!(r <= 4);
            assert_eq!(f, r as f64 / 4.0);
        }
    }

    #[test]
    fn mixture_comparison_produces_both_curves() {
        let spec: ScenarioSpec = read_json(
            r#"{"scenario":"mixture","d":2,"n":20,"grid":[0.0],"weights":[0.5,0.5,0.0],
                "replications":2,"bootstrap":100,"permutations":99,"seed":4}"#
                .as_bytes(),
        )
        .unwrap();
        let curves = run_mixture_comparison(&spec).unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].test, "rpt");
        assert_eq!(curves[1].test, "energy");
        let again = run_mixture_comparison(&spec).unwrap();
        assert_eq!(curves, again);
    }

    #[test]
    fn sharpness_demo_runs_and_is_deterministic() {
        let a = run_sharpness_demo(2, 40, 2, RngSeed::new(5)).unwrap();
        let b = run_sharpness_demo(2, 40, 2, RngSeed::new(5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.replications, 2);
        assert!(a.deficient_rejections <= 2 && a.full_rejections <= 2);
        assert!(matches!(
            run_sharpness_demo(1, 40, 2, RngSeed::new(5)),
            Err(Error::BadConfig(_))
        ));
    }

    #[test]
    fn classification_experiment_summarizes_accuracies() {
        let spec: ScenarioSpec = read_json(
            r#"{"scenario":"classify","d":2,"class_size":30,"shift_coords":2,
                "shift_max":6.0,"k":1,"replications":2,"seed":3}"#
                .as_bytes(),
        )
        .unwrap();
        let summary = run_classification_experiment(&spec).unwrap();
        assert_eq!(summary.accuracies.len(), 2);
        for &a in &summary.accuracies {
            assert!((0.0..=1.0).contains(&a));
        }
        let expected_mean = summary.accuracies.iter().sum::<f64>() / 2.0;
        assert_eq!(summary.mean, expected_mean);
        let again = run_classification_experiment(&spec).unwrap();
        assert_eq!(summary, again);
    }

    #[test]
    fn power_table_round_trips_through_csv() {
        let curve = PowerCurve {
            test: "rpt".into(),
            parameters: vec![1.0, 2.0],
            rejections: vec![3, 10],
            replications: 10,
        };
        let mut buf = Vec::new();
        write_power_table(&mut buf, std::slice::from_ref(&curve)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "test,parameter,rejections,replications,fraction,mc_se");
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "rpt");
        assert_eq!(row[1], "1");
        assert_eq!(row[2], "3");
        assert_eq!(row[3], "10");
        assert_eq!(row[4].parse::<f64>().unwrap(), 0.3);
        assert_eq!(row[5].parse::<f64>().unwrap(), (0.3f64 * 0.7 / 10.0).sqrt());
        assert_eq!(lines.count(), 1);
    }

    #[test]
    fn sharpness_and_accuracy_tables_have_expected_shape() {
        let outcome = SharpnessOutcome {
            d: 3,
            n: 100,
            replications: 4,
            deficient_rejections: 1,
            full_rejections: 4,
        };
        let mut buf = Vec::new();
        write_sharpness_table(&mut buf, &outcome).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("deficient,1,4,0.25,"));
        assert!(text.contains("full,4,4,1,"));

        let summary = ClassificationSummary::from_accuracies(vec![0.5, 0.75]);
        assert_eq!(summary.mean, 0.625);
        let mut buf = Vec::new();
        write_accuracy_table(&mut buf, &summary).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().collect::<Vec<_>>(), vec![
            "repetition,accuracy",
            "1,0.5",
            "2,0.75",
        ]);
    }

    #[test]
    fn manifest_echoes_config_and_outputs() {
        let spec = tiny_tail_spec(2);
        let mut buf = Vec::new();
        write_manifest(&mut buf, &spec, &["power.csv"]).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(value["config"]["scenario"], "1");
        assert_eq!(value["outputs"][0], "power.csv");
        let back: ScenarioSpec = serde_json::from_value(value["config"].clone()).unwrap();
        assert_eq!(back, spec);
    }
}
