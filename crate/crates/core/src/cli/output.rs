//! Tables written as CSV with a `#` header block, or as JSON.

use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Bool(bool),
    /// Not applicable for this row.
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(x) if x.is_finite() => s.serialize_f64(*x),
            Cell::Num(x) => s.serialize_str(&format!("{x}")),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Empty => s.serialize_none(),
        }
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        // -0.0 prints as 0
        Cell::Num(x) => format!("{:.16e}", x + 0.0),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub command: String,
    pub version: String,
    pub scenario_sha256: String,
    pub units: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# hyperdecay {}", self.version);
        let _ = writeln!(out, "# command: {}", self.command);
        let _ = writeln!(out, "# scenario-sha256: {}", self.scenario_sha256);
        let _ = writeln!(out, "# units: {}", self.units);
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        Table {
            command: "survival".into(),
            version: "0.1.0".into(),
            scenario_sha256: "ab".into(),
            units: "natural".into(),
            columns: vec!["tau".into(), "ok".into(), "x".into()],
            rows: vec![vec![0.1.into(), true.into(), Cell::Empty]],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = table().to_csv();
        assert_eq!(
            csv,
            "# hyperdecay 0.1.0\n# command: survival\n# scenario-sha256: ab\n# units: natural\ntau,ok,x\n1.0000000000000001e-1,true,\n"
        );
    }

    #[test]
    fn json_layout() {
        let v: serde_json::Value = serde_json::from_str(&table().to_json()).unwrap();
        assert_eq!(v["rows"][0][0], 0.1);
        assert_eq!(v["rows"][0][2], serde_json::Value::Null);
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert!(keys.contains(&"scenario_sha256".to_string()));
    }
}
