//! Projection-weighted nearest-neighbor binary classification.
//!
//! The classifier projects training data onto a fixed direction set
//! (typically a minimal sm-uniqueness set, so the projections jointly
//! characterize elliptical class distributions) and runs an independent
//! one-dimensional k-NN vote along each direction. Directions are not
//! equally informative, so fitting splits the training sample: the first
//! `n1 = floor((1 - omega) * n)` rows (after a seeded shuffle) become the
//! k-NN reference, and the remaining rows are classified along each
//! direction separately to score it. The resulting per-direction weight
//! `w_j` is the fraction of held-out points classified correctly along
//! direction `j` alone.
//!
//! Prediction keeps only the directions whose weight ranks in the top
//! `(1 - delta)` fraction (ties resolved toward lower direction indices,
//! never fewer than one direction) and classifies a point as class 1 when
//! the weighted posterior vote satisfies
//! `sum_j w_j p_j >= sum_j w_j (1 - p_j)`.
//!
//! Tie conventions are fixed so results are reproducible: equal k-NN
//! distances prefer the earlier reference point, the per-direction scoring
//! pass uses the strict rule `p > 1/2 -> class 1`, and the final vote uses
//! the inclusive rule above (ties to class 1).

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::elliptical::{project, Sample};
use crate::error::{Error, Result};
use crate::rng::RngSeed;
use crate::smset::DirectionSet;

/// Candidate neighbor counts tried by cross-validation when `k` is not
/// supplied.
pub const K_GRID: [usize; 5] = [1, 3, 5, 9, 15];

/// Number of cross-validation folds used to choose `k`.
const CV_FOLDS: usize = 5;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Features with binary labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    features: Sample,
    labels: Vec<u8>,
}

impl LabeledSample {
    /// Validate that labels are 0/1 and match the feature rows.
    pub fn new(features: Sample, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != features.n() {
            return Err(Error::BadLabels(format!(
                "{} labels for {} rows",
                labels.len(),
                features.n()
            )));
        }
        if let Some(bad) = labels.iter().find(|&&l| l > 1) {
            return Err(Error::BadLabels(format!("labels must be 0 or 1, got {bad}")));
        }
        Ok(LabeledSample { features, labels })
    }

    /// Feature matrix.
    pub fn features(&self) -> &Sample {
        &self.features
    }

    /// Labels, aligned with feature rows.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Number of observations.
    pub fn n(&self) -> usize {
        self.features.n()
    }
}

/// One direction's sorted reference projections.
///
/// Entries are sorted by `(value, orig)` where `orig` is the position in
/// the reference subsample; `orig` drives the distance tie-break.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ReferenceAxis {
    pub(crate) values: Vec<f64>,
    pub(crate) labels: Vec<u8>,
    pub(crate) orig: Vec<u32>,
}

impl ReferenceAxis {
    pub(crate) fn new(mut entries: Vec<(f64, u8, u32)>) -> Self {
        entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        ReferenceAxis {
            values: entries.iter().map(|e| e.0).collect(),
            labels: entries.iter().map(|e| e.1).collect(),
            orig: entries.iter().map(|e| e.2).collect(),
        }
    }

    fn run_end(&self, start: usize) -> usize {
        let mut end = start + 1;
        while end < self.values.len() && self.values[end] == self.values[start] {
            end += 1;
        }
        end
    }

    fn run_start(&self, end_inclusive: usize) -> usize {
        let mut start = end_inclusive;
        while start > 0 && self.values[start - 1] == self.values[end_inclusive] {
            start -= 1;
        }
        start
    }

    /// Number of label-1 points among the `k` nearest reference projections
    /// to `z`. Neighbors are ordered by `(|z - value|, orig)`; equal-value
    /// runs are consumed respecting that order, so partial takes from a run
    /// pick the earliest reference points first.
    fn label1_among_knn(&self, z: f64, k: usize) -> usize {
        let len = self.values.len();
        debug_assert!(k >= 1 && k <= len);
        // values[..split] < z <= values[split..].
        let split = self.values.partition_point(|&v| v < z);
        let mut lo = split; // exclusive lower frontier (next left run ends at lo - 1)
        let mut hi = split; // inclusive upper frontier (next right run starts at hi)
        let mut remaining = k;
        let mut ones = 0usize;
        while remaining > 0 {
            let dl = if lo > 0 { z - self.values[lo - 1] } else { f64::INFINITY };
            let dr = if hi < len { self.values[hi] - z } else { f64::INFINITY };
            if dl < dr {
                let start = self.run_start(lo - 1);
                ones += self.take_run(start, lo, &mut remaining);
                lo = start;
            } else if dr < dl {
                let end = self.run_end(hi);
                ones += self.take_run(hi, end, &mut remaining);
                hi = end;
            } else {
                // Equal distances on both sides: merge the two runs by orig.
                let lstart = self.run_start(lo - 1);
                let rend = self.run_end(hi);
                ones += self.take_merged(lstart, lo, hi, rend, &mut remaining);
                lo = lstart;
                hi = rend;
            }
        }
        ones
    }

    /// Take up to `remaining` entries from a single equal-value run
    /// (ascending `orig` order by construction).
    fn take_run(&self, start: usize, end: usize, remaining: &mut usize) -> usize {
        let take = (end - start).min(*remaining);
        *remaining -= take;
        self.labels[start..start + take].iter().filter(|&&l| l == 1).count()
    }

    /// Take up to `remaining` entries from two equal-distance runs, merged
    /// into ascending `orig` order.
    fn take_merged(&self, ls: usize, le: usize, rs: usize, re: usize, remaining: &mut usize) -> usize {
        let (mut i, mut j) = (ls, rs);
        let mut ones = 0usize;
        while *remaining > 0 && (i < le || j < re) {
            let pick_left = match (i < le, j < re) {
                (true, true) => self.orig[i] < self.orig[j],
                (true, false) => true,
                (false, true) => false,
                (false, false) => unreachable!(),
            };
            let idx = if pick_left {
                i += 1;
                i - 1
            } else {
                j += 1;
                j - 1
            };
            if self.labels[idx] == 1 {
                ones += 1;
            }
            *remaining -= 1;
        }
        ones
    }
}

/// A fitted classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct RpClassifier {
    pub(crate) directions: DirectionSet,
    pub(crate) weights: Vec<f64>,
    pub(crate) retained: Vec<usize>,
    pub(crate) k: usize,
    pub(crate) axes: Vec<ReferenceAxis>,
}

impl RpClassifier {
    /// Projection directions the model was fitted with.
    pub fn directions(&self) -> &DirectionSet {
        &self.directions
    }

    /// Per-direction accuracy weights in `[0, 1]`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Indices of the directions kept for prediction, ascending.
    pub fn retained(&self) -> &[usize] {
        &self.retained
    }

    /// Neighbor count.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Rebuild a model from serialized parts, revalidating the invariants.
    pub(crate) fn from_parts(
        directions: DirectionSet,
        weights: Vec<f64>,
        retained: Vec<usize>,
        k: usize,
        axes: Vec<ReferenceAxis>,
    ) -> Result<Self> {
        let d = directions.len();
        if weights.len() != d || axes.len() != d {
            return Err(Error::BadConfig(format!(
                "model has {d} directions but {} weights and {} reference axes",
                weights.len(),
                axes.len()
            )));
        }
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::BadConfig("model weights must lie in [0, 1]".into()));
        }
        if retained.is_empty() {
            return Err(Error::BadConfig("model must retain at least one direction".into()));
        }
        if retained.iter().any(|&j| j >= d) {
            return Err(Error::BadConfig("retained index out of range".into()));
        }
        let ref_len = axes[0].values.len();
        if k == 0 || k > ref_len {
            return Err(Error::BadConfig(format!(
                "neighbor count {k} incompatible with reference size {ref_len}"
            )));
        }
        for axis in &axes {
            if axis.values.len() != ref_len
                || axis.labels.len() != ref_len
                || axis.orig.len() != ref_len
            {
                return Err(Error::BadConfig("reference axes have inconsistent sizes".into()));
            }
        }
        Ok(RpClassifier { directions, weights, retained, k, axes })
    }
}

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

/// Fit a classifier.
///
/// `omega` in (0, 1) is the fraction of training rows held out for
/// direction scoring; `delta` in (0, 1] is the weight-rank retention
/// threshold (`delta = 0.5` keeps roughly the better half). Pass
/// `k = None` to pick the neighbor count from [`K_GRID`] by
/// [`CV_FOLDS`]-fold cross-validation on the reference split (smallest `k`
/// wins ties). The split is preceded by a shuffle driven entirely by
/// `seed`, so identical inputs yield identical models.
pub fn fit(
    train: &LabeledSample,
    directions: &DirectionSet,
    k: Option<usize>,
    omega: f64,
    delta: f64,
    seed: RngSeed,
) -> Result<RpClassifier> {
    let n = train.n();
    let dim = train.features().dim();
    if directions.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: directions.dim() });
    }
    if directions.is_empty() {
        return Err(Error::BadConfig("direction set must be nonempty".into()));
    }
    if !(omega > 0.0 && omega < 1.0) {
        return Err(Error::BadConfig(format!("omega must lie in (0, 1), got {omega}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::BadConfig(format!("delta must lie in (0, 1], got {delta}")));
    }
    if n < 4 {
        return Err(Error::BadSplit(format!("need at least 4 training rows, got {n}")));
    }
    let n1 = ((1.0 - omega) * n as f64).floor() as usize;
    if n1 == 0 || n1 >= n {
        return Err(Error::BadSplit(format!(
            "reference split of {n1} rows out of {n} leaves no data on one side"
        )));
    }
    if let Some(kv) = k {
        if kv == 0 || kv > n1 {
            return Err(Error::BadSplit(format!(
                "k = {kv} incompatible with reference size {n1}"
            )));
        }
    }

    // Seeded shuffle, then positional split: reference first, scoring rest.
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut seed.substream(0).rng());
    let ref_rows = &order[..n1];
    let score_rows = &order[n1..];

    // Project once per direction; build the sorted reference axis and keep
    // the scoring-point projections in split order.
    let projections: Vec<(ReferenceAxis, Vec<f64>)> = directions
        .vectors()
        .par_iter()
        .map(|v| {
            let z = project(train.features(), v.as_slice()).expect("validated dimensions");
            let entries = ref_rows
                .iter()
                .enumerate()
                .map(|(pos, &row)| (z[row], train.labels()[row], pos as u32))
                .collect();
            let scoring = score_rows.iter().map(|&row| z[row]).collect();
            (ReferenceAxis::new(entries), scoring)
        })
        .collect();

    let chosen_k = match k {
        Some(kv) => kv,
        None => cross_validate_k(train, ref_rows, &projections)?,
    };

    // Score each direction on the held-out rows: strict-majority k-NN vote.
    let weights: Vec<f64> = projections
        .par_iter()
        .map(|(axis, scoring)| {
            let correct = scoring
                .iter()
                .zip(score_rows)
                .filter(|&(&z, &row)| {
                    let ones = axis.label1_among_knn(z, chosen_k);
                    let predicted = u8::from(2 * ones > chosen_k);
                    predicted == train.labels()[row]
                })
                .count();
            correct as f64 / score_rows.len() as f64
        })
        .collect();

    let retained = retained_directions(&weights, delta);
    let axes = projections.into_iter().map(|(axis, _)| axis).collect();
    RpClassifier::from_parts(directions.clone(), weights, retained, chosen_k, axes)
}

/// Ascending ranks over the weights (rank 1 = smallest) with ties giving
/// the lower direction index the higher rank; keep `{j : rank_j >= delta * D}`,
/// never empty.
fn retained_directions(weights: &[f64], delta: f64) -> Vec<usize> {
    let d = weights.len();
    let mut by_weight: Vec<usize> = (0..d).collect();
    // Equal weights: larger index first, so the lower index lands later and
    // earns the higher rank.
    by_weight.sort_by(|&a, &b| {
        weights[a].total_cmp(&weights[b]).then(b.cmp(&a))
    });
    let threshold = delta * d as f64;
    let mut retained: Vec<usize> = by_weight
        .iter()
        .enumerate()
        .filter(|(pos, _)| (pos + 1) as f64 >= threshold)
        .map(|(_, &j)| j)
        .collect();
    if retained.is_empty() {
        retained.push(*by_weight.last().expect("at least one direction"));
    }
    retained.sort_unstable();
    retained
}

/// Pick `k` by cross-validation on the reference split.
///
/// Folds are assigned by position modulo [`CV_FOLDS`]. Each candidate `k`
/// classifies every held-out reference point with a uniform-weight vote
/// over all directions (the per-direction weights are unavailable here —
/// they are computed after `k` is fixed) and the candidate with the most
/// correct predictions wins, smallest `k` on ties.
fn cross_validate_k(
    train: &LabeledSample,
    ref_rows: &[usize],
    projections: &[(ReferenceAxis, Vec<f64>)],
) -> Result<usize> {
    let n1 = ref_rows.len();
    let folds = CV_FOLDS.min(n1);
    // Largest training part is n1 - smallest fold; the binding constraint
    // for k is the smallest training part across folds.
    let largest_fold = n1.div_ceil(folds);
    let min_train = n1 - largest_fold;
    let candidates: Vec<usize> = K_GRID.iter().copied().filter(|&kv| kv <= min_train).collect();
    if candidates.is_empty() {
        return Err(Error::BadSplit(format!(
            "reference split of {n1} rows is too small to cross-validate k"
        )));
    }
    // Per-direction reference projections indexed by reference position, so
    // held-out points can be looked up without searching the sorted axis.
    let by_pos: Vec<Vec<f64>> = projections
        .iter()
        .map(|(axis, _)| {
            let mut v = vec![0.0; n1];
            for (i, &orig) in axis.orig.iter().enumerate() {
                v[orig as usize] = axis.values[i];
            }
            v
        })
        .collect();

    let mut correct = vec![0usize; candidates.len()];
    for fold in 0..folds {
        // Rebuild per-direction axes without the held-out positions. The
        // original reference positions stay as tie-break ids, so neighbor
        // order matches a direct fit on the kept rows.
        let fold_axes: Vec<ReferenceAxis> = projections
            .par_iter()
            .map(|(axis, _)| {
                let entries = axis
                    .values
                    .iter()
                    .zip(&axis.labels)
                    .zip(&axis.orig)
                    .filter(|&((_, _), &orig)| orig as usize % folds != fold)
                    .map(|((&v, &l), &orig)| (v, l, orig))
                    .collect();
                ReferenceAxis::new(entries)
            })
            .collect();
        let d = fold_axes.len() as f64;
        for pos in (0..n1).filter(|p| p % folds == fold) {
            let label = train.labels()[ref_rows[pos]];
            for (ci, &kv) in candidates.iter().enumerate() {
                let vote_one: f64 = fold_axes
                    .iter()
                    .enumerate()
                    .map(|(j, axis)| {
                        axis.label1_among_knn(by_pos[j][pos], kv) as f64 / kv as f64
                    })
                    .sum();
                let predicted = u8::from(vote_one >= d - vote_one);
                if predicted == label {
                    correct[ci] += 1;
                }
            }
        }
    }

    // Most correct predictions wins; candidates ascend, so strict comparison
    // keeps the smallest k on ties.
    let mut best = candidates[0];
    let mut best_correct = correct[0];
    for (ci, &kv) in candidates.iter().enumerate().skip(1) {
        if correct[ci] > best_correct {
            best = kv;
            best_correct = correct[ci];
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

/// Fraction of label-1 points among the `k` reference projections nearest
/// to `z` along direction `j`.
pub fn knn_posterior(model: &RpClassifier, j: usize, z: f64) -> Result<f64> {
    if j >= model.directions.len() {
        return Err(Error::UnknownDirection(j, model.directions.len()));
    }
    let ones = model.axes[j].label1_among_knn(z, model.k);
    Ok(ones as f64 / model.k as f64)
}

/// Predict the label of one point: class 1 iff
/// `sum_j w_j p_j >= sum_j w_j (1 - p_j)` over the retained directions.
pub fn predict(model: &RpClassifier, x: &[f64]) -> Result<u8> {
    if x.len() != model.directions.dim() {
        return Err(Error::DimensionMismatch { expected: model.directions.dim(), got: x.len() });
    }
    let (mut for_one, mut for_zero) = (0.0, 0.0);
    for &j in &model.retained {
        let v = &model.directions.vectors()[j];
        let z: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
        let p = knn_posterior(model, j, z)?;
        let w = model.weights[j];
        for_one += w * p;
        for_zero += w * (1.0 - p);
    }
    Ok(u8::from(for_one >= for_zero))
}

/// Predict a batch of rows.
pub fn predict_batch(model: &RpClassifier, xs: &Sample) -> Result<Vec<u8>> {
    (0..xs.n()).map(|i| predict(model, &xs.row(i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smset::canonical_sm_set;

    fn axis(entries: Vec<(f64, u8, u32)>) -> ReferenceAxis {
        ReferenceAxis::new(entries)
    }

    fn separable_training() -> (LabeledSample, DirectionSet) {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..40 {
            let t = i as f64 * 0.07;
            rows.push(vec![-5.0 + 0.5 * t.sin(), 0.5 * t.cos()]);
            labels.push(0);
            rows.push(vec![5.0 + 0.5 * (t + 1.0).sin(), 0.5 * (t + 2.0).cos()]);
            labels.push(1);
        }
        let features = Sample::from_rows(2, rows).unwrap();
        let train = LabeledSample::new(features, labels).unwrap();
        (train, canonical_sm_set(2))
    }

    #[test]
    fn knn_counts_along_a_line() {
        let a = axis(vec![(0.0, 0, 0), (1.0, 0, 1), (2.0, 1, 2), (3.0, 1, 3), (4.0, 1, 4)]);
        assert_eq!(a.label1_among_knn(3.9, 1), 1);
        assert_eq!(a.label1_among_knn(3.9, 3), 3);
        assert_eq!(a.label1_among_knn(0.1, 3), 1);
        assert_eq!(a.label1_among_knn(-10.0, 5), 3);
    }

    #[test]
    fn distance_ties_prefer_earlier_reference_point() {
        // z = 0 is equidistant from both points; the smaller orig id wins.
        let a = axis(vec![(-1.0, 0, 0), (1.0, 1, 1)]);
        assert_eq!(a.label1_among_knn(0.0, 1), 0);
        let b = axis(vec![(-1.0, 0, 1), (1.0, 1, 0)]);
        assert_eq!(b.label1_among_knn(0.0, 1), 1);
    }

    #[test]
    fn equal_value_run_takes_earliest_reference_points_first() {
        let a = axis(vec![(1.0, 0, 0), (1.0, 1, 1), (1.0, 1, 2)]);
        assert_eq!(a.label1_among_knn(1.0, 2), 1);
        assert_eq!(a.label1_among_knn(1.0, 3), 2);
    }

    #[test]
    fn labels_must_be_binary_and_match_rows() {
        let features = Sample::from_rows(1, vec![vec![0.0], vec![1.0]]).unwrap();
        assert!(matches!(
            LabeledSample::new(features.clone(), vec![0, 2]),
            Err(Error::BadLabels(_))
        ));
        assert!(matches!(
            LabeledSample::new(features, vec![0]),
            Err(Error::BadLabels(_))
        ));
    }

    #[test]
    fn fit_rejects_bad_parameters() {
        let (train, dirs) = separable_training();
        let seed = RngSeed::new(1);
        assert!(matches!(
            fit(&train, &dirs, None, 1.0, 0.5, seed),
            Err(Error::BadConfig(_))
        ));
        assert!(matches!(
            fit(&train, &dirs, None, 0.25, 0.0, seed),
            Err(Error::BadConfig(_))
        ));
        assert!(matches!(
            fit(&train, &dirs, Some(1000), 0.25, 0.5, seed),
            Err(Error::BadSplit(_))
        ));
        let mismatched = canonical_sm_set(3);
        assert!(matches!(
            fit(&train, &mismatched, None, 0.25, 0.5, seed),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn separable_clusters_are_classified_perfectly() {
        let (train, dirs) = separable_training();
        let model = fit(&train, &dirs, Some(3), 0.25, 0.5, RngSeed::new(7)).unwrap();
        // Directions e1 and e1 + e2 separate the clusters; e2 does not.
        assert_eq!(model.weights()[0], 1.0);
        assert_eq!(model.weights()[2], 1.0);
        assert!(model.weights()[1] < 0.9);
        assert!(model.retained().contains(&0));
        assert!(!model.retained().contains(&1));
        assert_eq!(predict(&model, &[-5.0, 0.0]).unwrap(), 0);
        assert_eq!(predict(&model, &[5.0, 0.0]).unwrap(), 1);
        let batch = predict_batch(&model, train.features()).unwrap();
        assert_eq!(batch, train.labels());
    }

    #[test]
    fn cross_validated_k_comes_from_the_grid_and_is_deterministic() {
        let (train, dirs) = separable_training();
        let a = fit(&train, &dirs, None, 0.25, 0.5, RngSeed::new(3)).unwrap();
        let b = fit(&train, &dirs, None, 0.25, 0.5, RngSeed::new(3)).unwrap();
        assert!(K_GRID.contains(&a.k()));
        assert_eq!(a, b);
        let c = fit(&train, &dirs, None, 0.25, 0.5, RngSeed::new(4)).unwrap();
        assert!(K_GRID.contains(&c.k()));
    }

    #[test]
    fn retention_keeps_top_ranks_and_breaks_ties_toward_lower_indices() {
        // Distinct weights: ranks 1..3 ascend with weight.
        assert_eq!(retained_directions(&[0.1, 0.9, 0.5], 0.5), vec![1, 2]);
        // All equal: lower indices earn the higher ranks.
        assert_eq!(retained_directions(&[0.5; 4], 0.5), vec![0, 1, 2]);
        assert_eq!(retained_directions(&[0.5; 4], 1.0), vec![0]);
        // A tiny threshold keeps everything.
        assert_eq!(retained_directions(&[0.3, 0.2, 0.7], 0.01), vec![0, 1, 2]);
    }

    #[test]
    fn posterior_checks_direction_index() {
        let (train, dirs) = separable_training();
        let model = fit(&train, &dirs, Some(3), 0.25, 0.5, RngSeed::new(7)).unwrap();
        assert!(matches!(
            knn_posterior(&model, 99, 0.0),
            Err(Error::UnknownDirection(99, 3))
        ));
        let p = knn_posterior(&model, 0, 5.0).unwrap();
        assert_eq!(p, 1.0);
    }

    #[test]
    fn predict_checks_dimension() {
        let (train, dirs) = separable_training();
        let model = fit(&train, &dirs, Some(3), 0.25, 0.5, RngSeed::new(7)).unwrap();
        assert!(matches!(
            predict(&model, &[1.0, 2.0, 3.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn model_reconstruction_validates_shapes() {
        let (train, dirs) = separable_training();
        let m = fit(&train, &dirs, Some(3), 0.25, 0.5, RngSeed::new(7)).unwrap();
        let rebuilt = RpClassifier::from_parts(
            m.directions.clone(),
            m.weights.clone(),
            m.retained.clone(),
            m.k,
            m.axes.clone(),
        )
        .unwrap();
        assert_eq!(rebuilt, m);
        assert!(RpClassifier::from_parts(
            m.directions.clone(),
            vec![0.5],
            m.retained.clone(),
            m.k,
            m.axes.clone(),
        )
        .is_err());
        assert!(RpClassifier::from_parts(
            m.directions.clone(),
            m.weights.clone(),
            vec![],
            m.k,
            m.axes.clone(),
        )
        .is_err());
        assert!(RpClassifier::from_parts(
            m.directions.clone(),
            m.weights.clone(),
            m.retained.clone(),
            10_000,
            m.axes,
        )
        .is_err());
    }
}
