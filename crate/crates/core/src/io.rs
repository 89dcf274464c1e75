//! Reading and writing the on-disk formats.
//!
//! * measurement CSV: header `id,value`, one row per measurement; objects keep
//!   the order in which their ids first appear
//! * measurement JSON: `{"objects": [{"id": "t0", "values": [...]}, ...]}`
//! * edge-list JSON: `{"ids": [...], "better": [["t0", "t1"], ...]}`
//! * event-log CSV: header `case,activity,timestamp`
//!
//! The `load_*` functions attach the file path to every error.

use std::collections::HashMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::dfg::{parse_sequences, EventLog, VariantSequence};
use crate::error::{Error, Result};
use crate::model::{ComparisonMatrix, Dataset, EdgeList, MeasurementSet};

#[derive(Deserialize)]
struct CsvRow {
    id: String,
    value: f64,
}

pub fn measurements_from_csv<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut order: Vec<String> = Vec::new();
    let mut values: HashMap<String, Vec<f64>> = HashMap::new();
    for row in rdr.deserialize() {
        let row: CsvRow = row?;
        values
            .entry(row.id.clone())
            .or_insert_with(|| {
                order.push(row.id.clone());
                Vec::new()
            })
            .push(row.value);
    }
    if order.is_empty() {
        return Err(Error::InvalidMeasurements("no measurements".into()));
    }
    let sets = order
        .into_iter()
        .map(|id| {
            let v = values.remove(&id).unwrap_or_default();
            MeasurementSet::new(id, v)
        })
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(sets)
}

pub fn measurements_to_csv(ds: &Dataset) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "value"])?;
    for m in ds.objects() {
        for v in m.values() {
            w.write_record([m.id(), &v.to_string()])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input { .. } => e,
        other => Error::Input {
            path: path.to_path_buf(),
            message: other.to_string(),
        },
    })
}

/// Reads a whole file, rejecting empty or blank files.
pub fn read_text(path: &Path) -> Result<String> {
    let text = with_path(path, fs::read_to_string(path).map_err(Error::from))?;
    if text.trim().is_empty() {
        return Err(Error::Input {
            path: path.to_path_buf(),
            message: "file is empty".into(),
        });
    }
    Ok(text)
}

/// Reads and parses a JSON file.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    with_path(path, serde_json::from_str(&text).map_err(Error::from))
}

pub fn load_measurements_csv(path: &Path) -> Result<Dataset> {
    let text = read_text(path)?;
    with_path(path, measurements_from_csv(text.as_bytes()))
}

pub fn load_measurements_json(path: &Path) -> Result<Dataset> {
    load_json(path)
}

pub fn load_edge_list(path: &Path) -> Result<ComparisonMatrix> {
    let list: EdgeList = load_json(path)?;
    with_path(path, ComparisonMatrix::from_edge_list(&list))
}

pub fn load_event_log(path: &Path) -> Result<EventLog> {
    let text = read_text(path)?;
    with_path(path, EventLog::from_csv(text.as_bytes()))
}

pub fn load_sequences(path: &Path) -> Result<Vec<VariantSequence>> {
    let text = read_text(path)?;
    with_path(path, parse_sequences(&text))
}

/// Writes `text`, creating parent directories as needed.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let r = (|| {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, text)
    })();
    with_path(path, r.map_err(Error::from))
}
