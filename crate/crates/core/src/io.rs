//! File formats: set files, search results, and tables.
//!
//! A set file is JSON:
//!
//! ```json
//! {
//!   "lattice": {"kind": "chain_product", "lengths": [2, 2, 2, 2]},
//!   "points": [
//!     [0, 1, 0, 1],
//!     [0, 1, 1, 0]
//!   ],
//!   "subsets": [[2, 4], [2, 3]]
//! }
//! ```
//!
//! Points are written in canonical order. `subsets` (1-indexed elements) is
//! written for Boolean lattices and optional on input; when both fields are
//! present and disagree, `points` wins.
//!
//! Floats in every output are rounded to 9 significant digits.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{ChainProduct, Point, PointSet};
use crate::search::{SearchMode, SearchResult};
use crate::verifier::Property;

const LATTICE_KIND: &str = "chain_product";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSetFile {
    lattice: RawLattice,
    #[serde(default)]
    points: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    subsets: Option<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
struct RawLattice {
    kind: String,
    lengths: Vec<u32>,
}

/// A parsed set file plus any warnings raised while reading it.
#[derive(Debug)]
pub struct LoadedSet {
    pub set: PointSet,
    pub warnings: Vec<String>,
}

pub fn parse_set(text: &str) -> Result<LoadedSet> {
    let raw: RawSetFile = serde_json::from_str(text)?;
    if raw.lattice.kind != LATTICE_KIND {
        return Err(Error::Format(format!(
            "lattice kind {:?}, expected {LATTICE_KIND:?}",
            raw.lattice.kind
        )));
    }
    let lattice = ChainProduct::new(raw.lattice.lengths)?;
    let mut warnings = Vec::new();
    let set = match (raw.points, raw.subsets) {
        (Some(points), subsets) => {
            let set = PointSet::new(lattice, points.into_iter().map(Point::new).collect())?;
            if let Some(subsets) = subsets {
                let agrees = set.lattice().is_boolean()
                    && PointSet::from_subsets(set.lattice().clone(), &subsets).ok().as_ref() == Some(&set);
                if !agrees {
                    warnings.push("\"subsets\" disagrees with \"points\"; using \"points\"".to_string());
                }
            }
            set
        }
        (None, Some(subsets)) => PointSet::from_subsets(lattice, &subsets)?,
        (None, None) => return Err(Error::Format("neither \"points\" nor \"subsets\" given".into())),
    };
    Ok(LoadedSet { set, warnings })
}

pub fn read_set(path: &std::path::Path) -> Result<LoadedSet> {
    parse_set(&std::fs::read_to_string(path)?)
}

pub fn format_set(set: &PointSet) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!(
        "  \"lattice\": {{\"kind\": \"{LATTICE_KIND}\", \"lengths\": {}}},\n",
        json_list(set.lattice().lengths())
    ));
    out.push_str("  \"points\": [");
    for (i, p) in set.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&json_list(p.coords()));
    }
    out.push_str(if set.is_empty() { "]" } else { "\n  ]" });
    if let Ok(subsets) = set.subsets() {
        let rendered: Vec<String> = subsets.iter().map(|s| json_list(s)).collect();
        out.push_str(&format!(",\n  \"subsets\": [{}]", rendered.join(", ")));
    }
    out.push_str("\n}\n");
    out
}

pub fn write_set(path: &std::path::Path, set: &PointSet) -> Result<()> {
    std::fs::write(path, format_set(set))?;
    Ok(())
}

fn json_list<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Rounds to 9 significant digits.
pub fn round_sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Decimal rendering with 9 significant digits, trailing zeros removed.
pub fn format_sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = round_sig9(x);
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn serialize_sig9<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig9(*x))
}

pub fn serialize_sig9_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig9(*v)),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SearchResultJson<'a> {
    lattice: String,
    property: Property,
    mode: SearchMode,
    best_size: usize,
    proven_optimal: bool,
    nodes_explored: u64,
    best_set: &'a [Point],
}

pub fn search_result_json(result: &SearchResult, property: Property, mode: SearchMode) -> String {
    let view = SearchResultJson {
        lattice: result.best_set.lattice().to_string(),
        property,
        mode,
        best_size: result.best_size,
        proven_optimal: result.proven_optimal,
        nodes_explored: result.nodes_explored,
        best_set: result.best_set.points(),
    };
    serde_json::to_string(&view).expect("search result serializes")
}

/// A table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_sig9(*v),
            Cell::Bool(true) => "yes".into(),
            Cell::Bool(false) => "no".into(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => (*v).into(),
            Cell::Float(v) => round_sig9(*v).into(),
            Cell::Bool(b) => (*b).into(),
            Cell::Text(s) => s.clone().into(),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::text).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// One JSON object per row.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string(&rows).expect("table serializes");
        s.push('\n');
        s
    }

    /// Space-aligned columns.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.columns[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: &[String]| -> String {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.columns);
        for r in &cells {
            out.push_str(&line(r));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{block_construction, diagonal_construction};
    use proptest::prelude::*;

    #[test]
    fn set_file_layout() {
        let text = format_set(&block_construction(4).unwrap());
        let expected = "{\n  \"lattice\": {\"kind\": \"chain_product\", \"lengths\": [2, 2, 2, 2]},\n  \"points\": [\n    [0, 1, 0, 1],\n    [0, 1, 1, 0],\n    [1, 0, 0, 1],\n    [1, 0, 1, 0]\n  ],\n  \"subsets\": [[2, 4], [2, 3], [1, 4], [1, 3]]\n}\n";
        assert_eq!(text, expected);
        let diag = format_set(&diagonal_construction(3, 3).unwrap());
        assert!(!diag.contains("subsets"));
    }

    #[test]
    fn subsets_only_and_conflicts() {
        let text = r#"{"lattice": {"kind": "chain_product", "lengths": [2,2,2]}, "subsets": [[1], [2,3]]}"#;
        let loaded = parse_set(text).unwrap();
        assert_eq!(loaded.set.len(), 2);
        assert!(loaded.warnings.is_empty());

        let text = r#"{"lattice": {"kind": "chain_product", "lengths": [2,2]}, "points": [[1,0]], "subsets": [[2]]}"#;
        let loaded = parse_set(text).unwrap();
        assert_eq!(loaded.set.points(), &[Point::new(vec![1, 0])]);
        assert_eq!(loaded.warnings.len(), 1);
    }

    #[test]
    fn malformed_files() {
        assert!(parse_set("{").is_err());
        assert!(parse_set(r#"{"lattice": {"kind": "poset", "lengths": [2]}, "points": []}"#).is_err());
        assert!(parse_set(r#"{"lattice": {"kind": "chain_product", "lengths": [2]}}"#).is_err());
        assert!(parse_set(r#"{"lattice": {"kind": "chain_product", "lengths": [2]}, "points": [[2]]}"#).is_err());
        assert!(parse_set(r#"{"lattice": {"kind": "chain_product", "lengths": [2]}, "points": [[1],[1]]}"#).is_err());
        assert!(parse_set(r#"{"lattice": {"kind": "chain_product", "lengths": [2]}, "points": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn empty_set_round_trip() {
        let empty = PointSet::empty(ChainProduct::new(vec![3, 2]).unwrap());
        assert_eq!(parse_set(&format_set(&empty)).unwrap().set, empty);
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(36.365065011471), "36.365065");
        assert_eq!(format_sig9(41.0), "41");
        assert_eq!(format_sig9(0.0), "0");
        assert_eq!(format_sig9(1.7564780510181497), "1.75647805");
        assert_eq!(format_sig9(0.000123456789123), "0.000123456789");
        assert_eq!(round_sig9(1.7320508075688772), 1.73205081);
    }

    #[test]
    fn table_rendering() {
        let mut t = Table::new(&["n", "bound", "tight"]);
        t.push(vec![Cell::Int(4), Cell::Float(4.0), Cell::Bool(true)]);
        t.push(vec![Cell::Int(10), Cell::Empty, Cell::Bool(false)]);
        assert_eq!(t.to_csv(), "n,bound,tight\n4,4,yes\n10,,no\n");
        assert_eq!(
            t.to_json(),
            "[{\"n\":4,\"bound\":4.0,\"tight\":true},{\"n\":10,\"bound\":null,\"tight\":false}]\n"
        );
        assert_eq!(t.to_text(), "n   bound  tight\n4   4      yes\n10         no\n");
        assert_eq!(Table::new(&["n"]).to_csv(), "n\n");
    }

    fn random_set() -> impl Strategy<Value = PointSet> {
        prop::collection::vec(1u32..4, 1..5).prop_flat_map(|lengths| {
            let coord = lengths.iter().map(|&l| 0..l).collect::<Vec<_>>();
            prop::collection::btree_set(coord, 0..10).prop_map(move |pts| {
                let lattice = ChainProduct::new(lengths.clone()).unwrap();
                PointSet::new(lattice, pts.into_iter().map(Point::new).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn set_files_round_trip(s in random_set()) {
            let text = format_set(&s);
            let loaded = parse_set(&text)?;
            prop_assert!(loaded.warnings.is_empty());
            prop_assert_eq!(&loaded.set, &s);
            prop_assert_eq!(format_set(&loaded.set), text);
        }
    }
}
