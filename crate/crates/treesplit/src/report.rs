//! Result tables and their CSV and JSON renderings.

use serde_json::{json, Map, Value};

use crate::stats::ScalingFit;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// An exact nonnegative integer, kept as decimal digits.
    Count(String),
    Real(f64),
    Text(String),
    Flag(bool),
    Empty,
}

impl Cell {
    pub fn count(v: impl ToString) -> Cell {
        Cell::Count(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Cell {
        Cell::Text(v.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Count(s) => s.parse().ok(),
            Cell::Real(x) => Some(*x),
            _ => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Count(s) | Cell::Text(s) => s.clone(),
            Cell::Real(x) => format!("{x}"),
            Cell::Flag(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Count(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Real(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// One experiment's output: a table with fixed columns plus fits and
/// summary notes.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    /// Effective configuration, echoed into the output.
    pub config: Vec<(&'static str, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub fits: Vec<(String, ScalingFit)>,
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, columns: Vec<&'static str>) -> Self {
        Report {
            command,
            seed,
            config: Vec::new(),
            columns,
            rows: Vec::new(),
            fits: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width does not match the header"
        );
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    /// Cell `column` of row `row`. Panics on an unknown column.
    pub fn get(&self, row: usize, column: &str) -> &Cell {
        let c = self
            .columns
            .iter()
            .position(|&h| h == column)
            .unwrap_or_else(|| panic!("no column {column}"));
        &self.rows[row][c]
    }

    pub fn fit(&self, label: &str) -> Option<&ScalingFit> {
        self.fits.iter().find(|(l, _)| l == label).map(|(_, f)| f)
    }

    /// CSV with `#` comment lines: configuration first, then the header and
    /// rows, then fits and notes.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# command={}\n# seed={}\n", self.command, self.seed);
        for (k, v) in &self.config {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))
                .expect("in-memory write");
        }
        out.push_str(
            &String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 fields"),
        );
        for (label, f) in &self.fits {
            out.push_str(&format!(
                "# fit {label}: slope={} intercept={} residual={} points={}\n",
                f.slope,
                f.intercept,
                f.residual,
                f.points.len()
            ));
        }
        for (k, v) in &self.notes {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let fits: Vec<Value> = self
            .fits
            .iter()
            .map(|(label, f)| {
                json!({
                    "label": label,
                    "slope": f.slope,
                    "intercept": f.intercept,
                    "residual": f.residual,
                    "points": f.points.iter().map(|p| json!([p.0, p.1])).collect::<Vec<_>>(),
                })
            })
            .collect();
        let notes: Map<String, Value> = self
            .notes
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let doc = json!({
            "command": self.command,
            "seed": self.seed.to_string(),
            "config": config,
            "columns": self.columns,
            "rows": rows,
            "fits": fits,
            "notes": notes,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_shapes() {
        let mut r = Report::new("demo", 7, vec!["N", "weight", "ratio", "min"]);
        r.config.push(("k", "2".into()));
        r.push(vec![
            Cell::count(8),
            Cell::count("18446744073709551616000"),
            Cell::Real(0.25),
            Cell::Flag(true),
        ]);
        r.note("argmin", 4);
        let csv = r.to_csv();
        assert!(csv.starts_with("# command=demo\n# seed=7\n# k=2\nN,weight,ratio,min\n8,18446744073709551616000,0.25,true\n"));
        assert!(csv.ends_with("# argmin: 4\n"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["rows"][0]["weight"], "18446744073709551616000");
        assert_eq!(v["rows"][0]["ratio"], 0.25);
        assert_eq!(v["seed"], "7");
    }
}
