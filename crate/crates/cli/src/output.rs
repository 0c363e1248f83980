use std::io::Write;

use clap::ValueEnum;
use kgibbs::gibbs::DecimalValue;
use kgibbs::BigRational;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Bare values, one per line.
    Plain,
    /// Exact rationals as `num/den`.
    Exact,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Field {
    Int(i64),
    Exact(BigRational),
    Decimal(DecimalValue),
    Text(String),
    Bool(bool),
}

/// One output row; fields keep insertion order in both renderings.
#[derive(Clone, Debug, Default)]
pub struct Record {
    fields: Vec<(&'static str, Field)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, field: Field) -> Self {
        self.fields.push((key, field));
        self
    }

    fn header(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (key, field) in &self.fields {
            match field {
                Field::Exact(_) => {
                    out.push(format!("{key}_num"));
                    out.push(format!("{key}_den"));
                }
                _ => out.push(key.to_string()),
            }
        }
        out
    }

    fn csv_cells(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (_, field) in &self.fields {
            match field {
                Field::Int(v) => out.push(v.to_string()),
                Field::Exact(r) => {
                    out.push(r.numer().to_string());
                    out.push(r.denom().to_string());
                }
                Field::Decimal(d) => out.push(d.to_string()),
                Field::Text(s) => out.push(s.clone()),
                Field::Bool(b) => out.push(b.to_string()),
            }
        }
        out
    }

    fn json(&self) -> Value {
        let mut map = Map::new();
        for (key, field) in &self.fields {
            let v = match field {
                Field::Int(v) => json!(v),
                Field::Exact(r) => json!({
                    "num": r.numer().to_string(),
                    "den": r.denom().to_string(),
                }),
                Field::Decimal(d) => json!(d.to_string()),
                Field::Text(s) => json!(s),
                Field::Bool(b) => json!(b),
            };
            map.insert(key.to_string(), v);
        }
        Value::Object(map)
    }
}

pub fn exact_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Writes `rows` in a table format. Plain and exact fall back to CSV for
/// multi-column data.
pub fn write_rows<W: Write>(out: W, rows: &[Record], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(out, rows),
        _ => write_csv(out, rows),
    }
}

fn write_csv<W: Write>(out: W, rows: &[Record]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = rows.first() {
        w.write_record(first.header())?;
    }
    for row in rows {
        w.write_record(row.csv_cells())?;
    }
    w.flush()
}

fn write_json<W: Write>(mut out: W, rows: &[Record]) -> std::io::Result<()> {
    let doc = json!({ "rows": rows.iter().map(Record::json).collect::<Vec<_>>() });
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)
}
