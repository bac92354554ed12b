//! On-disk formats: headerless CSV for numeric tables, JSON for
//! configuration and fitted models.
//!
//! CSV tables carry one row per record with comma-separated fields and no
//! header; a leading header row is tolerated on read (any first row with a
//! non-numeric field is skipped). Values are written with Rust's `f64`
//! `Display`, which produces the shortest decimal string that parses back
//! to the identical bit pattern, so a write/read round trip is lossless.
//!
//! JSON documents reject unknown fields so typos in hand-written
//! configuration fail loudly instead of being ignored.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::classify::{LabeledSample, ReferenceAxis, RpClassifier};
use crate::elliptical::{EllipticalSpec, Generator, Sample};
use crate::error::{Error, Result};
use crate::smset::{DirectionSet, SymmetricMatrix};

// ---------------------------------------------------------------------------
// CSV reading
// ---------------------------------------------------------------------------

/// Read raw CSV records, trimming whitespace and dropping blank lines.
fn read_csv_records<R: Read>(reader: R) -> Result<Vec<Vec<String>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push(record.iter().map(str::to_owned).collect());
    }
    Ok(rows)
}

/// Parse records into a rectangular numeric table. A non-numeric first row
/// is treated as a header and skipped; a non-numeric field anywhere else is
/// an error, as is a ragged table.
fn parse_numeric_table<R: Read>(reader: R) -> Result<Vec<Vec<f64>>> {
    let records = read_csv_records(reader)?;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(records.len());
    for (idx, record) in records.iter().enumerate() {
        match record.iter().map(|f| f.parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>() {
            Ok(row) => table.push(row),
            Err(_) if idx == 0 => continue, // header row
            Err(_) => {
                return Err(Error::MalformedCsv(format!(
                    "record {} contains a non-numeric field",
                    idx + 1
                )))
            }
        }
    }
    if let Some(width) = table.first().map(Vec::len) {
        if let Some(bad) = table.iter().position(|r| r.len() != width) {
            return Err(Error::MalformedCsv(format!(
                "record {} has {} fields, expected {width}",
                bad + 1,
                table[bad].len()
            )));
        }
    }
    Ok(table)
}

/// Read a direction set: one direction per row.
pub fn read_direction_set<R: Read>(reader: R) -> Result<DirectionSet> {
    let table = parse_numeric_table(reader)?;
    let dim = table
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::MalformedCsv("no direction rows found".into()))?;
    DirectionSet::new(dim, table)
}

/// Read a sample: one observation per row.
pub fn read_sample<R: Read>(reader: R) -> Result<Sample> {
    let table = parse_numeric_table(reader)?;
    let dim = table.first().map(Vec::len).ok_or(Error::EmptySample)?;
    Sample::from_rows(dim, table)
}

/// Read a labeled sample: features followed by a trailing 0/1 label column.
pub fn read_labeled_sample<R: Read>(reader: R) -> Result<LabeledSample> {
    let table = parse_numeric_table(reader)?;
    let width = table.first().map(Vec::len).ok_or(Error::EmptySample)?;
    if width < 2 {
        return Err(Error::MalformedCsv(
            "labeled data needs at least one feature column plus a label column".into(),
        ));
    }
    let mut rows = Vec::with_capacity(table.len());
    let mut labels = Vec::with_capacity(table.len());
    for mut row in table {
        let raw = row.pop().expect("width >= 2");
        let label = if raw == 0.0 {
            0
        } else if raw == 1.0 {
            1
        } else {
            return Err(Error::BadLabels(format!("label column must be 0 or 1, got {raw}")));
        };
        rows.push(row);
        labels.push(label);
    }
    LabeledSample::new(Sample::from_rows(width - 1, rows)?, labels)
}

// ---------------------------------------------------------------------------
// CSV writing
// ---------------------------------------------------------------------------

fn write_csv_rows<W: Write>(writer: W, rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    for row in rows {
        w.write_record(row.iter().map(f64::to_string))?;
    }
    w.flush()?;
    Ok(())
}

/// Write a sample, one observation per row.
pub fn write_sample<W: Write>(writer: W, sample: &Sample) -> Result<()> {
    write_csv_rows(writer, sample.rows())
}

/// Write a direction set, one direction per row.
pub fn write_direction_set<W: Write>(writer: W, set: &DirectionSet) -> Result<()> {
    write_csv_rows(writer, set.rows())
}

/// Write labels, one per row.
pub fn write_labels<W: Write>(writer: W, labels: &[u8]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    for &l in labels {
        w.write_record([l.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

/// Deserialize any JSON document.
pub fn read_json<T: DeserializeOwned, R: Read>(reader: R) -> Result<T> {
    Ok(serde_json::from_reader(reader)?)
}

/// Serialize with two-space indentation and a trailing newline.
pub fn write_json_pretty<T: Serialize, W: Write>(mut writer: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, value)?;
    writeln!(writer)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Elliptical distribution configs
// ---------------------------------------------------------------------------

/// JSON form of an elliptical distribution: location vector, full (dense,
/// exactly symmetric) scale matrix, and generator tag.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticalSpecConfig {
    pub mu: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
    pub generator: Generator,
}

impl EllipticalSpecConfig {
    /// Validate and convert into a usable spec.
    pub fn into_spec(self) -> Result<EllipticalSpec> {
        let sigma = SymmetricMatrix::from_rows(&self.sigma)?;
        EllipticalSpec::new(self.mu, sigma, self.generator)
    }

    /// Snapshot of a spec in serializable form.
    pub fn from_spec(spec: &EllipticalSpec) -> Self {
        EllipticalSpecConfig {
            mu: spec.mu().iter().copied().collect(),
            sigma: spec.sigma().to_rows(),
            generator: spec.generator(),
        }
    }
}

/// Read an elliptical spec from JSON.
pub fn read_elliptical_spec<R: Read>(reader: R) -> Result<EllipticalSpec> {
    read_json::<EllipticalSpecConfig, _>(reader)?.into_spec()
}

/// Write an elliptical spec as JSON.
pub fn write_elliptical_spec<W: Write>(writer: W, spec: &EllipticalSpec) -> Result<()> {
    write_json_pretty(writer, &EllipticalSpecConfig::from_spec(spec))
}

// ---------------------------------------------------------------------------
// Classifier models
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AxisFile {
    values: Vec<f64>,
    labels: Vec<u8>,
    orig: Vec<u32>,
}

/// Serialized fitted classifier: directions, per-direction weights,
/// retained indices, neighbor count, and the reference projections
/// (with their tie-break ids) needed to reproduce predictions exactly.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    dim: usize,
    directions: Vec<Vec<f64>>,
    weights: Vec<f64>,
    retained: Vec<usize>,
    k: usize,
    reference: Vec<AxisFile>,
}

/// Write a fitted classifier as JSON.
pub fn write_classifier<W: Write>(writer: W, model: &RpClassifier) -> Result<()> {
    let file = ModelFile {
        dim: model.directions().dim(),
        directions: model.directions().rows(),
        weights: model.weights().to_vec(),
        retained: model.retained().to_vec(),
        k: model.k(),
        reference: model
            .axes
            .iter()
            .map(|a| AxisFile {
                values: a.values.clone(),
                labels: a.labels.clone(),
                orig: a.orig.clone(),
            })
            .collect(),
    };
    write_json_pretty(writer, &file)
}

/// Read a fitted classifier from JSON, revalidating its invariants.
pub fn read_classifier<R: Read>(reader: R) -> Result<RpClassifier> {
    let file: ModelFile = read_json(reader)?;
    let directions = DirectionSet::new(file.dim, file.directions)?;
    let mut axes = Vec::with_capacity(file.reference.len());
    for axis in file.reference {
        if axis.values.len() != axis.labels.len() || axis.values.len() != axis.orig.len() {
            return Err(Error::BadConfig("reference axis arrays have unequal lengths".into()));
        }
        if axis.labels.iter().any(|&l| l > 1) {
            return Err(Error::BadLabels("reference labels must be 0 or 1".into()));
        }
        if axis.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadConfig("reference projections must be finite".into()));
        }
        // Rebuild through the sorting constructor so the neighbor order
        // invariant holds even if the file was edited by hand.
        let entries = axis
            .values
            .into_iter()
            .zip(axis.labels)
            .zip(axis.orig)
            .map(|((v, l), o)| (v, l, o))
            .collect();
        axes.push(ReferenceAxis::new(entries));
    }
    RpClassifier::from_parts(directions, file.weights, file.retained, file.k, axes)
}

// ---------------------------------------------------------------------------
// Path conveniences
// ---------------------------------------------------------------------------

macro_rules! path_reader {
    ($(#[$doc:meta])* $name:ident, $inner:ident, $out:ty) => {
        $(#[$doc])*
        pub fn $name(path: impl AsRef<Path>) -> Result<$out> {
            $inner(BufReader::new(File::open(path)?))
        }
    };
}

macro_rules! path_writer {
    ($(#[$doc:meta])* $name:ident, $inner:ident, $val:ty) => {
        $(#[$doc])*
        pub fn $name(path: impl AsRef<Path>, value: $val) -> Result<()> {
            $inner(BufWriter::new(File::create(path)?), value)
        }
    };
}

path_reader!(
    /// Read a direction set from a CSV file.
    read_direction_set_path, read_direction_set, DirectionSet);
path_reader!(
    /// Read a sample from a CSV file.
    read_sample_path, read_sample, Sample);
path_reader!(
    /// Read a labeled sample from a CSV file.
    read_labeled_sample_path, read_labeled_sample, LabeledSample);
path_reader!(
    /// Read an elliptical spec from a JSON file.
    read_elliptical_spec_path, read_elliptical_spec, EllipticalSpec);
path_reader!(
    /// Read a fitted classifier from a JSON file.
    read_classifier_path, read_classifier, RpClassifier);

path_writer!(
    /// Write a direction set to a CSV file.
    write_direction_set_path, write_direction_set, &DirectionSet);
path_writer!(
    /// Write a sample to a CSV file.
    write_sample_path, write_sample, &Sample);
path_writer!(
    /// Write an elliptical spec to a JSON file.
    write_elliptical_spec_path, write_elliptical_spec, &EllipticalSpec);
path_writer!(
    /// Write a fitted classifier to a JSON file.
    write_classifier_path, write_classifier, &RpClassifier);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{fit, predict};
    use crate::rng::RngSeed;
    use crate::smset::canonical_sm_set;

    #[test]
    fn sample_csv_round_trip_is_lossless() {
        let sample = Sample::from_rows(
            3,
            vec![
                vec![0.1, -2.5e-8, 1.0 / 3.0],
                vec![1e16, -0.0, 42.0],
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_sample(&mut buf, &sample).unwrap();
        let back = read_sample(buf.as_slice()).unwrap();
        assert_eq!(back, sample);
    }

    #[test]
    fn header_rows_are_skipped() {
        let text = "x,y\n1.0,2.0\n3,4\n";
        let s = read_sample(text.as_bytes()).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.row(1), vec![3.0, 4.0]);
    }

    #[test]
    fn blank_lines_are_ignored() {
        let text = "1.0,2.0\n\n3.0,4.0\n";
        let s = read_sample(text.as_bytes()).unwrap();
        assert_eq!(s.n(), 2);
    }

    #[test]
    fn non_numeric_data_and_ragged_rows_are_rejected() {
        assert!(matches!(
            read_sample("1.0,2.0\n3.0,oops\n".as_bytes()),
            Err(Error::MalformedCsv(_))
        ));
        assert!(matches!(
            read_sample("1.0,2.0\n3.0\n".as_bytes()),
            Err(Error::MalformedCsv(_))
        ));
    }

    #[test]
    fn empty_input_is_reported() {
        assert!(matches!(read_sample("".as_bytes()), Err(Error::EmptySample)));
        assert!(matches!(
            read_direction_set("".as_bytes()),
            Err(Error::MalformedCsv(_))
        ));
    }

    #[test]
    fn direction_set_round_trip_and_zero_row_rejection() {
        let set = canonical_sm_set(3);
        let mut buf = Vec::new();
        write_direction_set(&mut buf, &set).unwrap();
        let back = read_direction_set(buf.as_slice()).unwrap();
        assert_eq!(back, set);
        assert!(matches!(
            read_direction_set("1,0\n0,0\n".as_bytes()),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn labeled_sample_parses_trailing_label_column() {
        let text = "0.5,1.25,0\n0.75,0.125,1\n";
        let ls = read_labeled_sample(text.as_bytes()).unwrap();
        assert_eq!(ls.labels(), &[0, 1]);
        assert_eq!(ls.features().dim(), 2);
        assert!(matches!(
            read_labeled_sample("0.5,2\n".as_bytes()),
            Err(Error::BadLabels(_))
        ));
        assert!(matches!(
            read_labeled_sample("1\n0\n".as_bytes()),
            Err(Error::MalformedCsv(_))
        ));
    }

    #[test]
    fn elliptical_spec_json_round_trip() {
        let sigma = SymmetricMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let spec = EllipticalSpec::new(vec![1.0, -1.0], sigma, Generator::StudentT(2)).unwrap();
        let mut buf = Vec::new();
        write_elliptical_spec(&mut buf, &spec).unwrap();
        let back = read_elliptical_spec(buf.as_slice()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn elliptical_spec_json_rejects_asymmetry_and_unknown_fields() {
        let asym = r#"{"mu":[0,0],"sigma":[[1,0.5],[0.4,1]],"generator":"gaussian"}"#;
        assert!(matches!(
            read_elliptical_spec(asym.as_bytes()),
            Err(Error::BadConfig(_))
        ));
        let unknown = r#"{"mu":[0],"sigma":[[1]],"generator":"gaussian","extra":1}"#;
        assert!(matches!(
            read_elliptical_spec(unknown.as_bytes()),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn classifier_model_round_trip_preserves_predictions() {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..30 {
            let t = i as f64 * 0.37;
            rows.push(vec![-3.0 + t.sin(), t.cos()]);
            labels.push(0);
            rows.push(vec![3.0 + t.cos(), t.sin()]);
            labels.push(1);
        }
        let train =
            LabeledSample::new(Sample::from_rows(2, rows).unwrap(), labels).unwrap();
        let dirs = canonical_sm_set(2);
        let model = fit(&train, &dirs, Some(3), 0.25, 0.5, RngSeed::new(11)).unwrap();

        let mut buf = Vec::new();
        write_classifier(&mut buf, &model).unwrap();
        let back = read_classifier(buf.as_slice()).unwrap();
        assert_eq!(back, model);
        for x in [[-3.0, 0.2], [3.0, -0.4], [0.31, 0.7]] {
            assert_eq!(predict(&back, &x).unwrap(), predict(&model, &x).unwrap());
        }
    }

    #[test]
    fn classifier_model_rejects_inconsistent_files() {
        let bad = r#"{"dim":2,"directions":[[1,0]],"weights":[0.5,0.5],"retained":[0],"k":1,"reference":[{"values":[0.0],"labels":[0],"orig":[0]}]}"#;
        assert!(read_classifier(bad.as_bytes()).is_err());
        let bad_label = r#"{"dim":1,"directions":[[1]],"weights":[0.5],"retained":[0],"k":1,"reference":[{"values":[0.0],"labels":[7],"orig":[0]}]}"#;
        assert!(matches!(
            read_classifier(bad_label.as_bytes()),
            Err(Error::BadLabels(_))
        ));
    }
}
