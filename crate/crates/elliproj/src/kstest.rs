//! One-dimensional empirical CDFs and the exact two-sample
//! Kolmogorov–Smirnov statistic.
//!
//! The statistic is the exact supremum of `|F_n(t) - G_m(t)|` over all real
//! `t`, computed by a single merge scan of the two sorted samples. Ties
//! across samples are handled by evaluating the gap only after *all* values
//! equal to the current point have been consumed from both sides, matching
//! the right-continuous ECDF convention; the supremum of a pair of step
//! functions is attained at (the right side of) a pooled data point, so the
//! scan is exact, and its value is always an integer multiple of
//! `1 / lcm(n, m)`.

use crate::error::{Error, Result};

/// An empirical distribution function over a nonempty sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted_values: Vec<f64>,
}

impl EmpiricalCdf {
    /// Sort the sample and build its ECDF. Fails on empty input.
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        let mut sorted_values = values.to_vec();
        sorted_values.sort_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted_values })
    }

    /// `F(t) = #{values <= t} / n`: right-continuous, 0 below the minimum,
    /// 1 at and above the maximum.
    pub fn eval(&self, t: f64) -> f64 {
        let count = self.sorted_values.partition_point(|&v| v <= t);
        count as f64 / self.sorted_values.len() as f64
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.sorted_values.len()
    }

    /// True when the sample would be empty (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.sorted_values.is_empty()
    }

    /// The sorted observations.
    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted_values
    }
}

/// Exact two-sample Kolmogorov–Smirnov statistic
/// `sup_t |F_n(t) - G_m(t)|` in `[0, 1]`.
pub fn ks_two_sample(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    Ok(ks_sorted(&xs, &ys))
}

/// Merge scan over two already-sorted samples.
///
/// The counts are compared in integer arithmetic (`|i*m - j*n|` against the
/// running maximum) and divided only once at the end, so the result is exact
/// up to one final rounding.
fn ks_sorted(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    let m = ys.len();
    let (mut i, mut j) = (0usize, 0usize);
    let mut max_gap: u64 = 0;
    while i < n || j < m {
        // Next distinct pooled value.
        let t = match (xs.get(i), ys.get(j)) {
            (Some(&a), Some(&b)) => {
                if a.total_cmp(&b).is_le() {
                    a
                } else {
                    b
                }
            }
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!("loop condition guarantees a value"),
        };
        // Consume every copy of t from both samples before evaluating.
        while i < n && xs[i].total_cmp(&t).is_le() {
            i += 1;
        }
        while j < m && ys[j].total_cmp(&t).is_le() {
            j += 1;
        }
        let gap = (i as u64 * m as u64).abs_diff(j as u64 * n as u64);
        max_gap = max_gap.max(gap);
    }
    max_gap as f64 / (n as f64 * m as f64)
}
