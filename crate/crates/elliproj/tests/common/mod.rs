//! Shared helpers for the integration tests.
#![allow(dead_code)]

/// Exact rank of an integer matrix by fraction-free (Bareiss) Gaussian
/// elimination with full pivoting. Every intermediate value is a minor of
/// the input up to sign, so the divisions are exact and the result is the
/// true rank — an independent check on the floating-point SVD criterion.
pub fn exact_rank_i128(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut prev = 1i128;
    while rank < rows.min(cols) {
        let mut pivot = None;
        'scan: for (i, row) in m.iter().enumerate().skip(rank) {
            for (j, &v) in row.iter().enumerate().skip(rank) {
                if v != 0 {
                    pivot = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(rank, pi);
        for row in &mut m {
            row.swap(rank, pj);
        }
        let p = m[rank][rank];
        for i in (rank + 1)..rows {
            for j in (rank + 1)..cols {
                let num = m[i][j]
                    .checked_mul(p)
                    .and_then(|v| v.checked_sub(m[i][rank].checked_mul(m[rank][j])?))
                    .expect("Bareiss intermediate overflowed i128");
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                m[i][j] = num / prev;
            }
            m[i][rank] = 0;
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// Integer half-vectorization `(x_i x_j)_{i <= j}` in row-major order —
/// the same layout the library uses, but in exact arithmetic.
pub fn half_vectorize_exact(x: &[i64]) -> Vec<i128> {
    let d = x.len();
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in i..d {
            out.push(x[i] as i128 * x[j] as i128);
        }
    }
    out
}

/// Exact-arithmetic verdict on whether integer directions determine
/// symmetric matrices: the half-vectorizations must span all
/// `(d^2 + d) / 2` packed coordinates.
pub fn exact_is_uniqueness(vectors: &[Vec<i64>], dim: usize) -> bool {
    let target = dim * (dim + 1) / 2;
    let rows: Vec<Vec<i128>> = vectors.iter().map(|v| half_vectorize_exact(v)).collect();
    exact_rank_i128(rows) == target
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_singular() {
        assert_eq!(exact_rank_i128(vec![vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(exact_rank_i128(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(exact_rank_i128(vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(exact_rank_i128(vec![]), 0);
    }

    #[test]
    fn wide_and_tall_shapes() {
        assert_eq!(exact_rank_i128(vec![vec![3, 1, 4, 1]]), 1);
        assert_eq!(exact_rank_i128(vec![vec![1], vec![2], vec![3]]), 1);
        assert_eq!(exact_rank_i128(vec![vec![2, 0, 1], vec![0, 5, 0], vec![2, 5, 1]]), 2);
    }
}
