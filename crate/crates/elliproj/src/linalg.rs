//! Internal numerical linear-algebra helpers shared by several modules.
//!
//! Everything funnels through one rank tolerance so "is this matrix rank
//! deficient?" means the same thing everywhere in the crate: a singular
//! value sigma counts as zero when
//! `sigma <= 1e-9 * sigma_max * max(rows, cols)`.

use nalgebra::{DMatrix, DVector};

/// Relative factor of the rank tolerance rule.
pub(crate) const RANK_RTOL: f64 = 1e-9;

/// Singular-value cutoff for a matrix of the given shape.
fn rank_tol(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    RANK_RTOL * sigma_max * rows.max(cols) as f64
}

/// Numerical rank: number of singular values above the shared tolerance.
pub(crate) fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svals = m.clone().singular_values();
    let sigma_max = svals.max();
    if sigma_max <= 0.0 {
        return 0;
    }
    let tol = rank_tol(m.nrows(), m.ncols(), sigma_max);
    svals.iter().filter(|&&s| s > tol).count()
}

/// A unit vector in the nullspace of `m`, or `None` when `m` has full column
/// rank under the shared tolerance.
///
/// The smallest-singular-value right singular vector is returned. Matrices
/// with fewer rows than columns are padded with zero rows first: a thin SVD
/// of a wide matrix only produces `nrows` right singular vectors, which need
/// not include the nullspace directions.
pub(crate) fn nullspace_vector(m: &DMatrix<f64>) -> Option<DVector<f64>> {
    let cols = m.ncols();
    if cols == 0 {
        return None;
    }
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("SVD with v_t requested");
    // nalgebra sorts singular values in descending order; the last row of
    // V^T pairs with the smallest one.
    let sigma_min = svd.singular_values[cols - 1];
    let sigma_max = svd.singular_values[0];
    let tol = rank_tol(m.nrows().max(cols), cols, sigma_max);
    if sigma_max > 0.0 && sigma_min > tol {
        return None;
    }
    Some(v_t.row(cols - 1).transpose())
}

/// Eigenvalues of a symmetric matrix, ascending.
pub(crate) fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut eigs: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// Spectral radius (largest absolute eigenvalue) of a symmetric matrix.
pub(crate) fn spectral_radius_symmetric(m: &DMatrix<f64>) -> f64 {
    symmetric_eigenvalues(m)
        .iter()
        .fold(0.0f64, |acc, &e| acc.max(e.abs()))
}
