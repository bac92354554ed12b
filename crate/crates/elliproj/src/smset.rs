//! Symmetric-matrix uniqueness sets.
//!
//! A finite set `S` of directions in `R^d` is an *sm-uniqueness set* when the
//! only symmetric matrix `A` with `x' A x = 0` for every `x` in `S` is
//! `A = 0`. Such sets are exactly the direction sets along which projections
//! pin down an elliptical distribution, and the smallest ones have
//! `D = (d^2 + d) / 2` elements.
//!
//! The verification criterion is linear algebra: map each direction `x` to
//! its half-vectorization (the products `x_i * x_j` for `i <= j`) and check
//! whether those vectors span `R^D`. This module constructs standard
//! uniqueness sets, verifies candidates via numerical rank, and — for
//! deficient sets — produces an explicit nonzero witness matrix annihilated
//! by every quadratic form, which later seeds a matched pair of elliptical
//! distributions that agree along all of `S`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// An ordered list of nonzero direction vectors in `R^d`.
///
/// Each vector represents the line it spans; candidates for sm-uniqueness
/// sets and projection directions for the two-sample test are both carried
/// by this type.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    dim: usize,
    vectors: Vec<DVector<f64>>,
}

impl DirectionSet {
    /// Build a set from raw rows, validating that every vector has length
    /// `dim`, all entries are finite, and no vector is identically zero.
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadConfig("dimension must be positive".into()));
        }
        let mut out = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            if v.iter().any(|e| !e.is_finite()) {
                return Err(Error::BadConfig("direction entries must be finite".into()));
            }
            if v.iter().all(|&e| e == 0.0) {
                return Err(Error::ZeroDirection);
            }
            out.push(DVector::from_vec(v));
        }
        Ok(DirectionSet { dim, vectors: out })
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of directions.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// True when the set has no directions.
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The direction vectors, in order.
    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    /// A copy with the direction at `index` removed.
    pub fn without(&self, index: usize) -> Self {
        let mut vectors = self.vectors.clone();
        vectors.remove(index);
        DirectionSet { dim: self.dim, vectors }
    }

    /// Rows as plain vectors (for serialization).
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.vectors.iter().map(|v| v.iter().copied().collect()).collect()
    }
}

/// A symmetric `d x d` matrix stored as its upper triangle.
///
/// `packed` holds the entries `A[i][j]` for `i <= j` in row-major order —
/// the same layout as [`half_vectorize`] — so quadratic forms and the
/// uniqueness criterion share one indexing convention. Unpacking mirrors the
/// triangle, so the dense matrix is symmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    packed: Vec<f64>,
}

/// Packed length `D = (d^2 + d) / 2` of the upper triangle.
pub fn packed_len(dim: usize) -> usize {
    dim * (dim + 1) / 2
}

/// Position of entry `(i, j)`, `i <= j`, in the packed row-major layout.
pub fn packed_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < dim);
    i * dim - i * (i + 1) / 2 + j
}

impl SymmetricMatrix {
    /// Build from a packed upper triangle of length `(d^2 + d) / 2`.
    pub fn from_packed(dim: usize, packed: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadConfig("dimension must be positive".into()));
        }
        if packed.len() != packed_len(dim) {
            return Err(Error::DimensionMismatch { expected: packed_len(dim), got: packed.len() });
        }
        if packed.iter().any(|e| !e.is_finite()) {
            return Err(Error::BadConfig("matrix entries must be finite".into()));
        }
        Ok(SymmetricMatrix { dim, packed })
    }

    /// Build from dense rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::BadConfig("dimension must be positive".into()));
        }
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, other) in rows.iter().enumerate().skip(i + 1) {
                if row[j] != other[i] {
                    return Err(Error::BadConfig(format!(
                        "matrix is not symmetric at ({i}, {j}): {} vs {}",
                        row[j], other[i]
                    )));
                }
            }
        }
        let mut packed = Vec::with_capacity(packed_len(dim));
        for (i, row) in rows.iter().enumerate() {
            packed.extend_from_slice(&row[i..]);
        }
        SymmetricMatrix::from_packed(dim, packed)
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut packed = vec![0.0; packed_len(dim)];
        for i in 0..dim {
            packed[packed_index(dim, i, i)] = 1.0;
        }
        SymmetricMatrix { dim, packed }
    }

    /// Dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Packed upper triangle, row-major over `i <= j`.
    pub fn packed(&self) -> &[f64] {
        &self.packed
    }

    /// Entry `A[i][j]` (either triangle).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.packed[packed_index(self.dim, a, b)]
    }

    /// Dense symmetric matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    /// Dense rows (for serialization).
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Quadratic form `x' A x`, evaluated from the packed triangle as
    /// `sum_i x_i^2 A_ii + 2 sum_{i<j} x_i x_j A_ij`.
    pub fn quadratic_form(&self, x: &DVector<f64>) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let mut acc = 0.0;
        let mut idx = 0;
        for i in 0..self.dim {
            acc += x[i] * x[i] * self.packed[idx];
            idx += 1;
            for j in (i + 1)..self.dim {
                acc += 2.0 * x[i] * x[j] * self.packed[idx];
                idx += 1;
            }
        }
        acc
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.packed.iter().fold(0.0f64, |acc, e| acc.max(e.abs()))
    }

    /// Entrywise `self + scale * other`.
    pub fn add_scaled(&self, scale: f64, other: &SymmetricMatrix) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let packed = self
            .packed
            .iter()
            .zip(&other.packed)
            .map(|(a, b)| a + scale * b)
            .collect();
        SymmetricMatrix::from_packed(self.dim, packed)
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::symmetric_eigenvalues(&self.to_dense())
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Half-vectorization: the products `x_i * x_j` for `i <= j`, row-major.
///
/// The resulting length-`(d^2+d)/2` vector shares its layout with
/// [`SymmetricMatrix::packed`]; a direction set is an sm-uniqueness set
/// exactly when its half-vectorizations span the packed space. Products of
/// integer-valued inputs stay exact, which the integer oracle tests rely on.
pub fn half_vectorize(x: &[f64]) -> Vec<f64> {
    let d = x.len();
    let mut out = Vec::with_capacity(packed_len(d));
    for i in 0..d {
        for j in i..d {
            out.push(x[i] * x[j]);
        }
    }
    out
}

/// The standard minimal sm-uniqueness set: all vectors with either one or
/// two coordinates equal to 1 and the rest 0.
///
/// Returns exactly `(d^2 + d) / 2` vectors, ordered as the `d` standard
/// basis vectors `e_i` followed by the sums `e_i + e_j` for `i < j` in
/// lexicographic index order.
pub fn canonical_sm_set(dim: usize) -> DirectionSet {
    assert!(dim >= 1, "dimension must be positive");
    let mut vectors = Vec::with_capacity(packed_len(dim));
    for i in 0..dim {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        vectors.push(v);
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut v = vec![0.0; dim];
            v[i] = 1.0;
            v[j] = 1.0;
            vectors.push(v);
        }
    }
    DirectionSet::new(dim, vectors).expect("canonical set is always valid")
}

/// The pairwise-sum construction: given a basis `v_1, ..., v_d`, the set
/// `{v_j + v_k : j <= k}` (so diagonal entries are `2 v_j`) is an
/// sm-uniqueness set.
///
/// The input must consist of exactly `d` linearly independent vectors;
/// independence is checked by numerical rank.
pub fn sum_basis_sm_set(basis: &DirectionSet) -> Result<DirectionSet> {
    let d = basis.dim();
    if basis.len() != d {
        return Err(Error::BadConfig(format!(
            "need exactly {d} basis vectors in dimension {d}, got {}",
            basis.len()
        )));
    }
    let m = DMatrix::from_fn(d, d, |r, c| basis.vectors()[r][c]);
    let rank = linalg::numerical_rank(&m);
    if rank < d {
        return Err(Error::DependentBasis { rank, dim: d });
    }
    let mut vectors = Vec::with_capacity(packed_len(d));
    for j in 0..d {
        for k in j..d {
            let sum = &basis.vectors()[j] + &basis.vectors()[k];
            vectors.push(sum.iter().copied().collect());
        }
    }
    DirectionSet::new(d, vectors)
}

// ---------------------------------------------------------------------------
// Verification and refutation
// ---------------------------------------------------------------------------

/// The `|S| x D` matrix whose rows are the half-vectorizations of `S`.
fn half_vectorization_matrix(s: &DirectionSet) -> DMatrix<f64> {
    let d = s.dim();
    let cols = packed_len(d);
    let mut m = DMatrix::zeros(s.len(), cols);
    for (r, v) in s.vectors().iter().enumerate() {
        let hv = half_vectorize(v.as_slice());
        for (c, val) in hv.iter().enumerate() {
            m[(r, c)] = *val;
        }
    }
    m
}

/// True when `S` is an sm-uniqueness set: the half-vectorizations of its
/// directions have full rank `D = (d^2 + d) / 2`.
///
/// An empty set is never a uniqueness set. Sets with fewer than `D` elements
/// always fail (the rank cannot reach `D`).
pub fn is_sm_uniqueness_set(s: &DirectionSet) -> bool {
    let need = packed_len(s.dim());
    if s.len() < need {
        return false;
    }
    linalg::numerical_rank(&half_vectorization_matrix(s)) == need
}

/// True when the directions of `S` span `R^d`.
///
/// Every sm-uniqueness set spans; the converse fails for small sets.
pub fn spans_space(s: &DirectionSet) -> bool {
    let d = s.dim();
    if s.len() < d {
        return false;
    }
    let m = DMatrix::from_fn(s.len(), d, |r, c| s.vectors()[r][c]);
    linalg::numerical_rank(&m) == d
}

/// A nonzero symmetric `A` with `x' A x = 0` for every `x` in `S`, or
/// [`Error::NoWitness`] when `S` is an sm-uniqueness set.
///
/// Each direction contributes one linear constraint on the packed entries of
/// `A`: expanding the quadratic form gives coefficient `x_i^2` for diagonal
/// entries and `2 x_i x_j` for off-diagonal ones — note the factor 2, which
/// the spanning criterion's plain half-vectorization does not carry. A unit
/// nullspace vector of the constraint matrix, read back through the packed
/// layout, is the witness. The output is normalized so its largest absolute
/// entry is 1 and the first nonzero packed entry is positive, making the
/// witness deterministic.
pub fn null_witness(s: &DirectionSet) -> Result<SymmetricMatrix> {
    let d = s.dim();
    let cols = packed_len(d);
    let mut m = DMatrix::zeros(s.len(), cols);
    for (r, v) in s.vectors().iter().enumerate() {
        let mut c = 0;
        for i in 0..d {
            for j in i..d {
                m[(r, c)] = if i == j { v[i] * v[i] } else { 2.0 * v[i] * v[j] };
                c += 1;
            }
        }
    }
    let v = linalg::nullspace_vector(&m).ok_or(Error::NoWitness)?;
    let mut packed: Vec<f64> = v.iter().copied().collect();
    // Normalize: max-abs entry 1, first nonzero entry positive.
    let max_abs = packed.iter().fold(0.0f64, |acc, e| acc.max(e.abs()));
    if max_abs == 0.0 {
        // Cannot happen for a unit vector, but keep the invariant explicit.
        return Err(Error::NoWitness);
    }
    let first_nonzero = packed
        .iter()
        .copied()
        .find(|e| *e != 0.0)
        .expect("nonzero vector has a nonzero entry");
    let divisor = if first_nonzero < 0.0 { -max_abs } else { max_abs };
    for e in &mut packed {
        // Division (not multiplication by a reciprocal) makes the largest
        // entry exactly +/-1.
        *e /= divisor;
    }
    SymmetricMatrix::from_packed(d, packed)
}
