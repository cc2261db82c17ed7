//! Output documents.
//!
//! Floats are always written as `{:.16e}` (17 significant digits) so that
//! identical runs produce identical bytes; non-finite values become `null`
//! in JSON and empty cells in CSV.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i128),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Serialize for Json {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Json::Null => s.serialize_unit(),
            Json::Bool(b) => s.serialize_bool(*b),
            Json::Int(i) => s.serialize_i128(*i),
            Json::Float(x) if x.is_finite() => {
                let raw =
                    RawValue::from_string(format_float(*x)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Json::Float(_) => s.serialize_unit(),
            Json::Str(t) => s.serialize_str(t),
            Json::Array(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for item in items {
                    seq.serialize_element(item)?;
                }
                seq.end()
            }
            Json::Object(fields) => {
                let mut map = s.serialize_map(Some(fields.len()))?;
                for (k, v) in fields {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
    }
}

impl From<f64> for Json {
    fn from(x: f64) -> Self {
        Json::Float(x)
    }
}

impl From<usize> for Json {
    fn from(x: usize) -> Self {
        Json::Int(x as i128)
    }
}

impl From<u64> for Json {
    fn from(x: u64) -> Self {
        Json::Int(x as i128)
    }
}

impl From<&str> for Json {
    fn from(x: &str) -> Self {
        Json::Str(x.to_string())
    }
}

impl From<String> for Json {
    fn from(x: String) -> Self {
        Json::Str(x)
    }
}

impl<T: Into<Json>> From<Vec<T>> for Json {
    fn from(v: Vec<T>) -> Self {
        Json::Array(v.into_iter().map(Into::into).collect())
    }
}

/// One cell of a result table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn to_json(&self) -> Json {
        match self {
            Cell::Int(i) => Json::Int(*i as i128),
            Cell::Float(x) => Json::Float(*x),
            Cell::Text(t) => Json::Str(t.clone()),
            Cell::Empty => Json::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => format_float(*x),
            Cell::Float(_) | Cell::Empty => String::new(),
            Cell::Text(t) => t.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// A command result: scalar metadata plus one table.
///
/// JSON renders as an object holding `schema_version`, `command`, the
/// metadata fields and the table rows (as objects) under `table_name`. CSV
/// renders the table alone, with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub command: String,
    pub metadata: Vec<(String, Json)>,
    pub table_name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Document {
    pub fn new(command: &str, table_name: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            metadata: Vec::new(),
            table_name: table_name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Json>) -> Self {
        self.metadata.push((key.to_string(), value.into()));
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[idx]).collect())
    }

    pub fn to_json_value(&self) -> Json {
        let mut fields = vec![
            (
                "schema_version".to_string(),
                Json::Int(SCHEMA_VERSION as i128),
            ),
            ("command".to_string(), Json::Str(self.command.clone())),
        ];
        fields.extend(self.metadata.iter().cloned());
        let rows = self
            .rows
            .iter()
            .map(|row| {
                Json::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        fields.push((self.table_name.clone(), Json::Array(rows)));
        Json::Object(fields)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(&self.to_json_value())
            .map_err(|e| Error::Io(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> Document {
        let mut d = Document::new("demo", "rows", &["n", "value"]).meta("seed", 7u64);
        d.push_row(vec![Cell::from(1usize), Cell::from(0.1)]);
        d.push_row(vec![Cell::from(2usize), Cell::from(f64::NAN)]);
        d
    }

    #[test]
    fn json_has_fixed_precision_and_reparses() {
        let text = doc().to_json().unwrap();
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"][0]["value"].as_f64(), Some(0.1));
        assert!(v["rows"][1]["value"].is_null());
    }

    #[test]
    fn csv_layout() {
        let text = doc().to_csv().unwrap();
        assert_eq!(text, "n,value\n1,1.0000000000000001e-1\n2,\n");
    }

    #[test]
    fn large_seed_is_exact() {
        let text = serde_json::to_string(&Json::from(u64::MAX)).unwrap();
        assert_eq!(text, "18446744073709551615");
    }
}
