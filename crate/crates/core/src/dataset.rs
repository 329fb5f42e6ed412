//! JSON Lines datasets of labeled subgraphs.
//!
//! An export writes `<prefix>.train.jsonl` and `<prefix>.val.jsonl`, one
//! [`DatasetRecord`] per line, plus `<prefix>.meta.json` describing the run.
//! Edges are stored once with `u < v`; consumers symmetrize. Floats carry 9
//! significant digits.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::featurize::{FeaturizedSet, LabeledSubgraph, Preparation};
use crate::motif::MotifTemplate;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub h: usize,
    pub seed: u64,
    pub strategy_tag: String,
    pub graph_name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub id: u64,
    pub label: u8,
    pub k: usize,
    pub motif: String,
    pub inner: Vec<usize>,
    pub num_nodes: usize,
    pub edges: Vec<[usize; 2]>,
    pub features: Vec<Vec<f64>>,
    pub meta: RecordMeta,
}

const RECORD_FIELDS: &[&str] = &["id", "label", "k", "motif", "inner", "num_nodes", "edges", "features", "meta"];
const META_FIELDS: &[&str] = &["h", "seed", "strategy_tag", "graph_name"];

/// Rounds to 9 significant digits.
pub fn round_sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

impl DatasetRecord {
    pub fn from_labeled(id: u64, ls: &LabeledSubgraph, template: &MotifTemplate, graph_name: &str) -> DatasetRecord {
        let features = ls
            .features()
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(round_sig9).collect())
            .collect();
        DatasetRecord {
            id,
            label: u8::from(ls.label.is_positive()),
            k: ls.k(),
            motif: template.kind().tag().to_string(),
            inner: (0..ls.k()).collect(),
            num_nodes: ls.s(),
            edges: ls.subgraph.graph.edges().map(|(u, v)| [u, v]).collect(),
            features,
            meta: RecordMeta {
                h: ls.subgraph.h,
                seed: ls.sample_seed,
                strategy_tag: ls.strategy.tag().to_string(),
                graph_name: graph_name.to_string(),
            },
        }
    }

    pub fn feature_dim(&self) -> Option<usize> {
        self.features.first().map(Vec::len)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.label > 1 {
            return Err(format!("label must be 0 or 1, got {}", self.label));
        }
        if self.k == 0 || self.k > self.num_nodes {
            return Err(format!("k = {} with {} nodes", self.k, self.num_nodes));
        }
        if self.inner.len() != self.k || self.inner.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(format!("inner must be 0..{}", self.k));
        }
        let mut seen = BTreeSet::new();
        for &[u, v] in &self.edges {
            if u >= v || v >= self.num_nodes {
                return Err(format!("edge [{u}, {v}] needs u < v < num_nodes"));
            }
            if !seen.insert((u, v)) {
                return Err(format!("edge [{u}, {v}] repeated"));
            }
        }
        if self.features.len() != self.num_nodes {
            return Err(format!("{} feature rows for {} nodes", self.features.len(), self.num_nodes));
        }
        let dim = self.feature_dim().unwrap_or(0);
        if self.features.iter().any(|r| r.len() != dim) {
            return Err("feature rows differ in length".into());
        }
        if self.features.iter().flatten().any(|x| !x.is_finite()) {
            return Err("non-finite feature value".into());
        }
        Ok(())
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

pub fn train_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".train.jsonl")
}

pub fn val_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".val.jsonl")
}

pub fn meta_path(prefix: &Path) -> PathBuf {
    with_suffix(prefix, ".meta.json")
}

/// Run-level description written next to the record files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub graph_name: String,
    pub motif: String,
    pub k: usize,
    pub h: usize,
    pub feature_dim: usize,
    pub input_dim: usize,
    pub embedding_dim: usize,
    pub labels: bool,
    pub train_records: usize,
    pub val_records: usize,
    pub size_cap: usize,
    /// Subgraphs that hit the size cap.
    pub capped_subgraphs: usize,
    /// Positives that had no motif edge to mask.
    pub unmasked_positives: usize,
    /// Negative motif-edge count histogram used for masking.
    pub negative_edge_histogram: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportCounts {
    pub train: usize,
    pub validation: usize,
}

pub fn write_records<W: Write>(writer: W, records: &[DatasetRecord]) -> Result<()> {
    let mut w = BufWriter::new(writer);
    for r in records {
        r.validate().map_err(|message| Error::InvalidRecord { id: r.id, message })?;
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Converts a featurized set to records; train ids come first.
pub fn to_records(set: &FeaturizedSet, template: &MotifTemplate, graph_name: &str) -> (Vec<DatasetRecord>, Vec<DatasetRecord>) {
    let train: Vec<DatasetRecord> = set
        .train
        .iter()
        .enumerate()
        .map(|(i, ls)| DatasetRecord::from_labeled(i as u64, ls, template, graph_name))
        .collect();
    let offset = train.len() as u64;
    let val = set
        .validation
        .iter()
        .enumerate()
        .map(|(i, ls)| DatasetRecord::from_labeled(offset + i as u64, ls, template, graph_name))
        .collect();
    (train, val)
}

pub struct ExportOptions<'a> {
    pub graph_name: &'a str,
    pub h: usize,
    pub input_dim: usize,
    pub embedding_dim: usize,
    pub labels: bool,
    pub size_cap: usize,
}

/// Writes the train, validation and metadata files for `set`.
pub fn export_dataset(set: &FeaturizedSet, template: &MotifTemplate, opts: &ExportOptions<'_>, prefix: &Path) -> Result<ExportCounts> {
    let (train, val) = to_records(set, template, opts.graph_name);
    if let Some(parent) = prefix.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    write_records(File::create(train_path(prefix))?, &train)?;
    write_records(File::create(val_path(prefix))?, &val)?;
    let all = || set.train.iter().chain(&set.validation);
    let k = template.k();
    let meta = DatasetMeta {
        graph_name: opts.graph_name.to_string(),
        motif: template.kind().tag().to_string(),
        k,
        h: opts.h,
        feature_dim: opts.input_dim + opts.embedding_dim + if opts.labels { 2 * k } else { 0 },
        input_dim: opts.input_dim,
        embedding_dim: opts.embedding_dim,
        labels: opts.labels,
        train_records: train.len(),
        val_records: val.len(),
        size_cap: opts.size_cap,
        capped_subgraphs: all().filter(|ls| ls.subgraph.dropped > 0).count(),
        unmasked_positives: all().filter(|ls| ls.preparation == Preparation::NothingToMask).count(),
        negative_edge_histogram: set.histogram.counts().to_vec(),
    };
    let mut w = BufWriter::new(File::create(meta_path(prefix))?);
    serde_json::to_writer_pretty(&mut w, &meta)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(ExportCounts {
        train: train.len(),
        validation: val.len(),
    })
}

fn warn_unknown(value: &serde_json::Value, line: usize) {
    let Some(obj) = value.as_object() else { return };
    for key in obj.keys().filter(|k| !RECORD_FIELDS.contains(&k.as_str())) {
        log::warn!("line {line}: ignoring unknown field {key:?}");
    }
    if let Some(meta) = obj.get("meta").and_then(|m| m.as_object()) {
        for key in meta.keys().filter(|k| !META_FIELDS.contains(&k.as_str())) {
            log::warn!("line {line}: ignoring unknown meta field {key:?}");
        }
    }
}

/// Parses and validates records in file order. Unknown fields are logged
/// and ignored; any other problem fails with its line number.
pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<DatasetRecord>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        let parse_err = |message: String| Error::Parse { line: lineno, message };
        let value: serde_json::Value = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        warn_unknown(&value, lineno);
        let record: DatasetRecord = serde_json::from_value(value).map_err(|e| parse_err(e.to_string()))?;
        record.validate().map_err(parse_err)?;
        out.push(record);
    }
    Ok(out)
}

pub fn read_records_file(path: &Path) -> Result<Vec<DatasetRecord>> {
    read_records(BufReader::new(File::open(path)?))
}

/// Reads `<prefix>.train.jsonl` and `<prefix>.val.jsonl`.
pub fn import_dataset(prefix: &Path) -> Result<(Vec<DatasetRecord>, Vec<DatasetRecord>)> {
    Ok((read_records_file(&train_path(prefix))?, read_records_file(&val_path(prefix))?))
}

pub fn read_meta(prefix: &Path) -> Result<DatasetMeta> {
    Ok(serde_json::from_reader(BufReader::new(File::open(meta_path(prefix))?))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> DatasetRecord {
        DatasetRecord {
            id: 3,
            label: 1,
            k: 2,
            motif: "k_clique".into(),
            inner: vec![0, 1],
            num_nodes: 3,
            edges: vec![[0, 2], [1, 2]],
            features: vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 1.0]],
            meta: RecordMeta {
                h: 1,
                seed: 42,
                strategy_tag: "positive".into(),
                graph_name: "toy".into(),
            },
        }
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(round_sig9(1.0 / 3.0), 0.333333333);
        assert_eq!(round_sig9(123456789.87), 123456790.0);
        assert_eq!(round_sig9(-2.5e-12), -2.5e-12);
        assert_eq!(round_sig9(0.0), 0.0);
        let x = round_sig9(std::f64::consts::PI);
        assert_eq!(serde_json::to_string(&x).unwrap(), "3.14159265");
    }

    #[test]
    fn round_trip() {
        let r = record();
        let mut buf = Vec::new();
        write_records(&mut buf, &[r.clone()]).unwrap();
        assert_eq!(read_records(&buf[..]).unwrap(), vec![r]);
    }

    #[test]
    fn empty_file_reads_empty() {
        assert!(read_records(&b""[..]).unwrap().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let mut buf = Vec::new();
        write_records(&mut buf, &[record()]).unwrap();
        buf.extend_from_slice(b"{\"id\": 1}\n");
        match read_records(&buf[..]) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        let mut bad = record();
        bad.edges.push([2, 1]);
        let line = serde_json::to_string(&bad).unwrap();
        assert!(matches!(read_records(line.as_bytes()), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn unknown_fields_are_ignored() {
        let mut v = serde_json::to_value(record()).unwrap();
        v["extra"] = serde_json::json!(5);
        v["meta"]["note"] = serde_json::json!("x");
        let line = v.to_string();
        assert_eq!(read_records(line.as_bytes()).unwrap(), vec![record()]);
    }

    #[test]
    fn writer_rejects_invalid_records() {
        let mut r = record();
        r.features.pop();
        let err = write_records(Vec::new(), &[r]).unwrap_err();
        assert!(matches!(err, Error::InvalidRecord { id: 3, .. }));
    }

    #[test]
    fn field_names_are_exact() {
        let v = serde_json::to_value(record()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        let mut expected = RECORD_FIELDS.to_vec();
        expected.sort_unstable();
        assert_eq!(keys, expected);
    }
}
