//! Tabular results with CSV and JSON renderings.
//!
//! CSV starts with the schema line `# egregium-csv v1`, then a header and
//! one line per row; numbers carry 17 significant digits. Summary entries
//! follow as `# summary key=value` comment lines. JSON holds the same
//! content as `{"rows": [...], "summary": {...}}`.

use serde_json::{Map, Number, Value};

pub const CSV_SCHEMA: &str = "# egregium-csv v1";

#[derive(Debug, Clone, PartialEq)]
pub enum SummaryValue {
    Num(f64),
    Text(String),
}

impl From<f64> for SummaryValue {
    fn from(x: f64) -> Self {
        SummaryValue::Num(x)
    }
}

impl From<&str> for SummaryValue {
    fn from(s: &str) -> Self {
        SummaryValue::Text(s.to_string())
    }
}

impl From<String> for SummaryValue {
    fn from(s: String) -> Self {
        SummaryValue::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub summary: Vec<(String, SummaryValue)>,
}

fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_number(x: f64) -> Value {
    // Non-finite values have no JSON spelling.
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Table {
        Table { columns: columns.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<SummaryValue>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_SCHEMA);
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| csv_number(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            let v = match v {
                SummaryValue::Num(x) => csv_number(*x),
                SummaryValue::Text(s) => s.clone(),
            };
            out.push_str(&format!("# summary {k}={v}\n"));
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(|&x| json_number(x))).collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    SummaryValue::Num(x) => json_number(*x),
                    SummaryValue::Text(s) => Value::String(s.clone()),
                };
                (k.clone(), v)
            })
            .collect();
        let mut top = Map::new();
        top.insert("rows".into(), Value::Array(rows));
        top.insert("summary".into(), Value::Object(summary));
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        render_json(&self.to_json_value())
    }
}

/// Canonical JSON rendering used for all output.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
