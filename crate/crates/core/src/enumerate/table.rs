//! Sparse count tables with CSV and JSON export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::series::Integer;

/// Counts keyed by a tuple of named indices such as `(n, p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    columns: Vec<&'static str>,
    cells: BTreeMap<Vec<usize>, Integer>,
}

impl CountTable {
    pub fn new(columns: &[&'static str]) -> Self {
        CountTable { columns: columns.to_vec(), cells: BTreeMap::new() }
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn insert(&mut self, key: &[usize], value: Integer) {
        assert_eq!(key.len(), self.columns.len(), "key arity");
        self.cells.insert(key.to_vec(), value);
    }

    /// Stored value, or `None` when the cell was never computed.
    pub fn get(&self, key: &[usize]) -> Option<&Integer> {
        self.cells.get(key)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &Integer)> {
        self.cells.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Header `columns…,count`, one row per cell in key order.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push_str(",count\n");
        for (key, v) in &self.cells {
            for k in key {
                write!(out, "{k},").unwrap();
            }
            writeln!(out, "{v}").unwrap();
        }
        out
    }

    /// `{"columns": [...], "rows": [{"n": 2, "count": "1"}, ...]}`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .cells
            .iter()
            .map(|(key, v)| {
                let mut row = Map::new();
                for (c, k) in self.columns.iter().zip(key) {
                    row.insert((*c).to_string(), json!(k));
                }
                row.insert("count".into(), json!(v.to_string()));
                Value::Object(row)
            })
            .collect();
        json!({ "columns": self.columns, "rows": rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports() {
        let mut t = CountTable::new(&["n"]);
        t.insert(&[3], Integer::from(2));
        t.insert(&[2], Integer::from(1));
        assert_eq!(t.to_csv(), "n,count\n2,1\n3,2\n");
        assert_eq!(
            t.to_json().to_string(),
            r#"{"columns":["n"],"rows":[{"count":"1","n":2},{"count":"2","n":3}]}"#
        );
    }
}
