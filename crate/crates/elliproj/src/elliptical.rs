//! Elliptical distributions: representation, sampling, closed-form
//! characteristic functions, projections, and the matched-alternative
//! construction.
//!
//! An elliptical distribution on `R^d` has characteristic function
//! `phi(xi) = e^{i mu . xi} psi(xi' Sigma xi)` for a location `mu`, a
//! positive semi-definite scale matrix `Sigma`, and a scalar generator
//! `psi`. Implemented generators are Gaussian (`psi(t) = e^{-t/2}`) and
//! Student-t with `nu` degrees of freedom, with Cauchy as the `nu = 1`
//! special case (`psi(t) = e^{-sqrt(t)}`); these cover every family used by
//! the simulation harness and both have exact samplers.
//!
//! The headline construction is [`matched_alternative`]: given a
//! non-degenerate spec and a direction set that is *not* an sm-uniqueness
//! set, it perturbs the scale matrix by a multiple of the set's null witness
//! to obtain a genuinely different distribution whose one-dimensional
//! projections along every listed direction are unchanged — the sharpness
//! counterexample for projection-based testing.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::RngSeed;
use crate::smset::{null_witness, DirectionSet, SymmetricMatrix};

/// Relative eigenvalue tolerance for semi-definiteness and strict
/// definiteness checks.
const EIG_RTOL: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Scalar generator family of an elliptical distribution.
///
/// Serialized as `"gaussian"` or `{"student_t": nu}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// `psi(t) = e^{-t/2}`.
    Gaussian,
    /// Student-t with the given degrees of freedom; `StudentT(1)` is Cauchy.
    StudentT(u32),
}

/// Parameters of one elliptical distribution: location, scale, generator.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticalSpec {
    mu: DVector<f64>,
    sigma: SymmetricMatrix,
    generator: Generator,
}

impl EllipticalSpec {
    /// Validate and build a spec. The scale matrix must be positive
    /// semi-definite (eigenvalues no smaller than `-1e-10 * lambda_max`) and
    /// a Student-t generator needs `nu >= 1`.
    pub fn new(mu: Vec<f64>, sigma: SymmetricMatrix, generator: Generator) -> Result<Self> {
        if mu.len() != sigma.dim() {
            return Err(Error::DimensionMismatch { expected: sigma.dim(), got: mu.len() });
        }
        if mu.iter().any(|e| !e.is_finite()) {
            return Err(Error::BadConfig("location entries must be finite".into()));
        }
        if let Generator::StudentT(nu) = generator {
            if nu == 0 {
                return Err(Error::BadConfig("student_t degrees of freedom must be >= 1".into()));
            }
        }
        let eigs = sigma.eigenvalues();
        let lambda_min = eigs[0];
        let lambda_max = eigs[eigs.len() - 1];
        if lambda_min < -EIG_RTOL * lambda_max.abs() || lambda_max < 0.0 {
            return Err(Error::NotPsd { min_eig: lambda_min });
        }
        Ok(EllipticalSpec { mu: DVector::from_vec(mu), sigma, generator })
    }

    /// Dimension `d`.
    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    /// Location vector.
    pub fn mu(&self) -> &DVector<f64> {
        &self.mu
    }

    /// Scale matrix.
    pub fn sigma(&self) -> &SymmetricMatrix {
        &self.sigma
    }

    /// Generator family.
    pub fn generator(&self) -> Generator {
        self.generator
    }

    /// Convenience constructor: standard spec with `Sigma = I`.
    pub fn standard(dim: usize, generator: Generator) -> Self {
        EllipticalSpec::new(vec![0.0; dim], SymmetricMatrix::identity(dim), generator)
            .expect("identity scale is PD")
    }
}

/// An `n x d` data matrix, one observation per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    data: DMatrix<f64>,
}

impl Sample {
    /// Build from rows, validating finite entries and consistent lengths.
    /// `dim` makes the shape explicit so `n = 0` is representable.
    pub fn from_rows(dim: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadConfig("dimension must be positive".into()));
        }
        let n = rows.len();
        let mut data = DMatrix::zeros(n, dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            for (j, &e) in row.iter().enumerate() {
                if !e.is_finite() {
                    return Err(Error::BadConfig(format!("non-finite entry at row {i}, column {j}")));
                }
                data[(i, j)] = e;
            }
        }
        Ok(Sample { data })
    }

    /// Number of observations.
    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    /// Dimension `d`.
    pub fn dim(&self) -> usize {
        self.data.ncols()
    }

    /// The underlying matrix.
    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// Row `i` as a plain vector.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.data.row(i).iter().copied().collect()
    }

    /// All rows (for serialization).
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|i| self.row(i)).collect()
    }

    /// A sample containing the listed rows of `self`, in order.
    pub fn select_rows(&self, indices: &[usize]) -> Sample {
        let mut data = DMatrix::zeros(indices.len(), self.dim());
        for (r, &i) in indices.iter().enumerate() {
            data.row_mut(r).copy_from(&self.data.row(i));
        }
        Sample { data }
    }
}

/// Three-part mixture used in the comparison study: Gaussian, Cauchy, and a
/// symmetric two-center Gaussian, all shifted by a common scalar along the
/// all-ones vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    dim: usize,
    shift: f64,
    weights: [f64; 3],
}

impl MixtureSpec {
    /// Validate and build: nonnegative weights summing to 1 (within 1e-12).
    pub fn new(dim: usize, shift: f64, weights: [f64; 3]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadConfig("dimension must be positive".into()));
        }
        if !shift.is_finite() {
            return Err(Error::BadConfig("mixture shift must be finite".into()));
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::BadConfig("mixture weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadConfig(format!("mixture weights must sum to 1, got {total}")));
        }
        Ok(MixtureSpec { dim, shift, weights })
    }

    /// Dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common scalar shift `mu` applied along the all-ones direction.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Component weights `(alpha_1, alpha_2, alpha_3)`.
    pub fn weights(&self) -> [f64; 3] {
        self.weights
    }
}

// ---------------------------------------------------------------------------
// Factorization and sampling
// ---------------------------------------------------------------------------

/// Lower-triangular `L` with `L L' = Sigma`.
///
/// Strictly positive definite matrices use the standard Cholesky
/// factorization. Semi-definite ones fall back to an outer-product variant
/// that completes zero pivots with zero columns — valid because a PSD matrix
/// with a zero diagonal pivot has its whole residual row and column equal to
/// zero. Matrices with an eigenvalue below `-1e-10 * lambda_max` are
/// rejected as [`Error::NotPsd`].
pub fn cholesky_factor(sigma: &SymmetricMatrix) -> Result<DMatrix<f64>> {
    let eigs = sigma.eigenvalues();
    let d = sigma.dim();
    let lambda_min = eigs[0];
    let lambda_max = eigs[d - 1];
    if lambda_min < -EIG_RTOL * lambda_max.abs() || lambda_max < 0.0 {
        return Err(Error::NotPsd { min_eig: lambda_min });
    }
    let dense = sigma.to_dense();
    if lambda_min > EIG_RTOL * lambda_max {
        if let Some(chol) = nalgebra::Cholesky::new(dense.clone()) {
            return Ok(chol.l());
        }
        // Numerically borderline; fall through to the semi-definite path.
    }
    // Outer-product Cholesky with zero completion for semi-definite input.
    let mut l = DMatrix::zeros(d, d);
    let pivot_tol = EIG_RTOL * lambda_max.max(0.0);
    for j in 0..d {
        let mut s = dense[(j, j)];
        for k in 0..j {
            s -= l[(j, k)] * l[(j, k)];
        }
        if s <= pivot_tol {
            // Zero pivot: the PSD structure forces the rest of this column
            // to vanish; complete with zeros.
            continue;
        }
        let pivot = s.sqrt();
        l[(j, j)] = pivot;
        for i in (j + 1)..d {
            let mut v = dense[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = v / pivot;
        }
    }
    Ok(l)
}

/// Draw one standard normal vector of length `d`.
fn normal_vector<R: Rng>(rng: &mut R, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.sample(StandardNormal))
}

/// Chi-squared draw with `nu` degrees of freedom as a sum of `nu` squared
/// standard normals. Exact for the small `nu` used in the studies.
fn chi_squared<R: Rng>(rng: &mut R, nu: u32) -> f64 {
    let mut acc = 0.0;
    for _ in 0..nu {
        let g: f64 = rng.sample(StandardNormal);
        acc += g * g;
    }
    acc
}

/// Draw `n` i.i.d. observations from an elliptical spec.
///
/// Gaussian draws are `mu + L z` with `z` standard normal and `L` the
/// Cholesky factor of the scale matrix. Student-t draws divide the Gaussian
/// part by `sqrt(w / nu)` with `w` an independent chi-squared with `nu`
/// degrees of freedom. Output is fully determined by `(spec, n, seed)`.
pub fn sample_elliptical(spec: &EllipticalSpec, n: usize, seed: RngSeed) -> Result<Sample> {
    let d = spec.dim();
    let l = cholesky_factor(spec.sigma())?;
    let mut rng = seed.rng();
    let mut data = DMatrix::zeros(n, d);
    for i in 0..n {
        let z = normal_vector(&mut rng, d);
        let mut x = &l * z;
        if let Generator::StudentT(nu) = spec.generator() {
            let w = chi_squared(&mut rng, nu);
            let scale = (w / nu as f64).sqrt();
            x /= scale;
        }
        for j in 0..d {
            data[(i, j)] = spec.mu()[j] + x[j];
        }
    }
    Ok(Sample { data })
}

/// Draw `n` i.i.d. observations from the three-part mixture.
///
/// Each draw picks component `k` with probability `alpha_k`, then samples
/// from: (1) a Gaussian centered at `mu * ones`, (2) a Cauchy centered at
/// `mu * ones`, or (3) a fair-coin mixture of Gaussians centered at
/// `±(1 + mu) * ones`. All components have identity scale.
pub fn sample_mixture(spec: &MixtureSpec, n: usize, seed: RngSeed) -> Sample {
    let d = spec.dim();
    let [a1, a2, _] = spec.weights();
    let mu = spec.shift();
    let mut rng = seed.rng();
    let mut data = DMatrix::zeros(n, d);
    for i in 0..n {
        let u: f64 = rng.random();
        let z = normal_vector(&mut rng, d);
        let row: DVector<f64> = if u < a1 {
            z.add_scalar(mu)
        } else if u < a1 + a2 {
            // Cauchy = Student-t with one degree of freedom.
            let w = chi_squared(&mut rng, 1);
            (z / w.sqrt()).add_scalar(mu)
        } else {
            let coin: f64 = rng.random();
            let center = if coin < 0.5 { 1.0 + mu } else { -(1.0 + mu) };
            z.add_scalar(center)
        };
        for j in 0..d {
            data[(i, j)] = row[j];
        }
    }
    Sample { data }
}

/// Project every observation onto a direction: entry `i` is the inner
/// product of row `i` with `direction`. No normalization is applied.
pub fn project(sample: &Sample, direction: &[f64]) -> Result<Vec<f64>> {
    if direction.len() != sample.dim() {
        return Err(Error::DimensionMismatch { expected: sample.dim(), got: direction.len() });
    }
    if direction.iter().all(|&e| e == 0.0) {
        return Err(Error::ZeroDirection);
    }
    let dir = DVector::from_column_slice(direction);
    let projected = sample.data() * dir;
    Ok(projected.iter().copied().collect())
}

// ---------------------------------------------------------------------------
// Characteristic function and non-degeneracy
// ---------------------------------------------------------------------------

/// Closed-form characteristic function `e^{i mu . xi} psi(xi' Sigma xi)`.
///
/// Available for the Gaussian (`psi(t) = e^{-t/2}`) and Cauchy
/// (`psi(t) = e^{-sqrt(t)}`) generators; Student-t with `nu >= 2` has no
/// elementary closed form and is rejected.
pub fn characteristic_function(spec: &EllipticalSpec, xi: &[f64]) -> Result<Complex64> {
    if xi.len() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), got: xi.len() });
    }
    let xi_v = DVector::from_column_slice(xi);
    // Quadratic form is nonnegative for PSD scale; clamp roundoff.
    let t = spec.sigma().quadratic_form(&xi_v).max(0.0);
    let psi = match spec.generator() {
        Generator::Gaussian => (-t / 2.0).exp(),
        Generator::StudentT(1) => (-t.sqrt()).exp(),
        Generator::StudentT(nu) => {
            return Err(Error::UnsupportedGenerator(format!(
                "student_t({nu}) has no elementary closed-form characteristic function"
            )))
        }
    };
    let phase = spec.mu().dot(&xi_v);
    Ok(Complex64::from_polar(1.0, phase) * psi)
}

/// True when the distribution is non-degenerate: the scale matrix is
/// strictly positive definite (smallest eigenvalue above
/// `1e-10 * lambda_max`). Both implemented generator families are
/// non-constant, so the generator never disqualifies a spec.
pub fn is_nondegenerate(spec: &EllipticalSpec) -> bool {
    let eigs = spec.sigma().eigenvalues();
    let lambda_min = eigs[0];
    let lambda_max = eigs[eigs.len() - 1];
    lambda_max > 0.0 && lambda_min > EIG_RTOL * lambda_max
}

// ---------------------------------------------------------------------------
// Matched alternative
// ---------------------------------------------------------------------------

/// Largest safe perturbation step `eps = lambda_min(Sigma1) / (2 rho(A))`.
///
/// Guarantees `lambda_min(Sigma1 + eps A) >= lambda_min(Sigma1) / 2 > 0`, so
/// the perturbed scale stays strictly positive definite.
pub fn choose_epsilon(sigma1: &SymmetricMatrix, a: &SymmetricMatrix) -> Result<f64> {
    if a.dim() != sigma1.dim() {
        return Err(Error::DimensionMismatch { expected: sigma1.dim(), got: a.dim() });
    }
    if a.max_abs() == 0.0 {
        return Err(Error::ZeroWitness);
    }
    let eigs = sigma1.eigenvalues();
    let lambda_min = eigs[0];
    let lambda_max = eigs[eigs.len() - 1];
    if lambda_max <= 0.0 || lambda_min <= EIG_RTOL * lambda_max {
        return Err(Error::NotPd { min_eig: lambda_min });
    }
    let rho = linalg::spectral_radius_symmetric(&a.to_dense());
    Ok(0.5 * lambda_min / rho)
}

/// A distribution different from `spec` whose projections along every
/// direction of `s` coincide with those of `spec`.
///
/// Requires `spec` non-degenerate and `s` *not* an sm-uniqueness set. The
/// construction keeps the location and generator and perturbs the scale to
/// `Sigma2 = Sigma1 + eps A`, where `A` is the null witness of `s` and
/// `eps` is chosen by [`choose_epsilon`]. Because `x' A x = 0` on `s`, every
/// listed direction sees the same one-dimensional marginal, yet
/// `Sigma2 != Sigma1`.
pub fn matched_alternative(spec: &EllipticalSpec, s: &DirectionSet) -> Result<EllipticalSpec> {
    if s.dim() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), got: s.dim() });
    }
    if !is_nondegenerate(spec) {
        let eigs = spec.sigma().eigenvalues();
        return Err(Error::NotPd { min_eig: eigs[0] });
    }
    let witness = null_witness(s)?;
    let eps = choose_epsilon(spec.sigma(), &witness)?;
    let sigma2 = spec.sigma().add_scaled(eps, &witness)?;
    EllipticalSpec::new(
        spec.mu().iter().copied().collect(),
        sigma2,
        spec.generator(),
    )
}
