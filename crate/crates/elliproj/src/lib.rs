//! Finite-projection machinery for comparing elliptical distributions.
//!
//! Two elliptical laws on `R^d` that agree on every one-dimensional
//! projection along a suitable *finite* set of directions must be equal —
//! and `(d^2 + d) / 2` directions suffice if and only if the only symmetric
//! matrix annihilated by all of them (in the sense `x' A x = 0`) is zero.
//! This crate implements that circle of ideas end to end:
//!
//! - [`smset`]: direction sets, the rank criterion deciding whether a set
//!   determines symmetric matrices, canonical minimal constructions, and
//!   explicit null witnesses when a set falls short.
//! - [`elliptical`]: elliptical distribution specs (Gaussian, Student-t,
//!   Cauchy), seeded sampling, closed-form characteristic functions, and
//!   the matched alternative `Sigma_2 = Sigma_1 + eps * A` that a deficient
//!   direction set provably cannot distinguish.
//! - [`kstest`]: an exact two-sample Kolmogorov-Smirnov distance (integer
//!   arithmetic on the merged order, ties handled exactly).
//! - [`rpt`]: the random-projection two-sample test — maximal projected KS
//!   distance over a direction set, calibrated by bootstrap resampling.
//! - [`baselines`]: the energy-distance test with permutation calibration,
//!   used as the comparison baseline.
//! - [`classify`]: a projection-weighted k-nearest-neighbor binary
//!   classifier built on the same direction sets.
//! - [`harness`]: seeded Monte Carlo studies (power curves, mixture
//!   comparison, sharpness demonstration, classification experiment) with
//!   CSV/JSON result emission.
//! - [`io`]: CSV and JSON readers/writers for all of the above.
//!
//! Everything randomized flows from an explicit [`rng::RngSeed`]; runs are
//! bit-identical across reruns and thread counts.

pub mod baselines;
pub mod classify;
pub mod elliptical;
pub mod error;
pub mod harness;
pub mod io;
pub mod kstest;
mod linalg;
pub mod rng;
pub mod rpt;
pub mod smset;

pub use baselines::{energy_statistic, energy_test, EnergyReport};
pub use classify::{fit, knn_posterior, predict, predict_batch, LabeledSample, RpClassifier};
pub use elliptical::{
    characteristic_function, choose_epsilon, is_nondegenerate, matched_alternative, project,
    sample_elliptical, sample_mixture, EllipticalSpec, Generator, MixtureSpec, Sample,
};
pub use error::{Error, Result};
pub use harness::{
    run_classification_experiment, run_mixture_comparison, run_power_study, run_sharpness_demo,
    ClassificationSummary, PowerCurve, ScenarioSpec, SharpnessOutcome,
};
pub use kstest::{ks_two_sample, EmpiricalCdf};
pub use rng::RngSeed;
pub use rpt::{
    bootstrap_distribution, bootstrap_replicates, rpt_statistic, rpt_test, BootstrapScheme,
    RptConfig, TestReport,
};
pub use smset::{
    canonical_sm_set, half_vectorize, is_sm_uniqueness_set, null_witness, spans_space,
    sum_basis_sm_set, DirectionSet, SymmetricMatrix,
};

// The matrix types in the public API come from nalgebra; re-export it so
// downstream code can name them without pinning a second copy.
pub use nalgebra;
