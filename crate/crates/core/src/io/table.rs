//! The weight-one homology tables, recomputed cell by cell.

use super::Store;
use crate::enumerate::ComplexSpec;
use crate::graph::{Parity, Side, Variant};
use crate::rep::{decompose, equivariant_euler, Group, HighestWeight};
use crate::verify::tables;
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    /// Genus the cell was computed at.
    pub g: u8,
    /// `(E, dimension)` for each stratum with homology.
    pub homology: Vec<(i64, usize)>,
    /// Irreducible constituents, as `(highest weight, multiplicity)`.
    pub irreps: Vec<(String, i64)>,
    pub text: String,
}

/// Genus columns: the lower ends of the tabulated ranges, the last one open.
pub fn weight1_columns(p: Parity) -> Vec<(u8, String)> {
    let mut lows: BTreeSet<u8> = tables().weight_one.iter().filter(|r| r.parity == p.name()).map(|r| r.genus.0).collect();
    lows.insert(0);
    let top = *lows.iter().max().unwrap();
    lows.into_iter().map(|g| (g, if g == top { format!("g≥{g}") } else { format!("g={g}") })).collect()
}

fn shift_text(shift: i64) -> String {
    match shift {
        0 => "[m]".into(),
        s if s > 0 => format!("[m+{s}]"),
        s => format!("[m{s}]"),
    }
}

fn irreps_text(list: &[(HighestWeight, i64)]) -> String {
    let parts: Vec<String> = list.iter().map(|(w, k)| if *k == 1 { format!("V({w})") } else { format!("{k}V({w})") }).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join("⊕"))
    }
}

fn weight1_cell(store: &Store, v: Variant, p: Parity, g: u8) -> Result<Cell, Error> {
    let spec = ComplexSpec::new(v, Side::Connected, g, p, 1);
    let homology = store.cohomology(spec)?.nonzero_homology();
    if homology.is_empty() {
        return Ok(Cell { g, homology, irreps: vec![], text: "0".into() });
    }
    let chi = equivariant_euler(&store.basis(spec)?);
    let group = Group::for_parity(p);
    let mut irreps = vec![];
    let mut text = vec![];
    // Concentration in a single stratum makes the signed Euler character the
    // character of the homology there.
    for &(e, _) in &homology {
        let sign = if e % 2 == 0 { 1 } else { -1 };
        let parts = decompose(&chi.scale(sign), group)?;
        text.push(format!("{}{}", irreps_text(&parts), shift_text(-1 - e)));
        irreps.extend(parts.iter().map(|(w, k)| (w.to_string(), *k)));
    }
    Ok(Cell { g, homology, irreps, text: text.join(" ⊕ ") })
}

/// The weight-one table for one parity: a row per variant, a column per
/// genus range.
pub fn weight1_table(store: &Store, p: Parity) -> Result<Table, Error> {
    let cols = weight1_columns(p);
    let mut rows = vec![];
    for v in Variant::ALL {
        let cells = cols.iter().map(|(g, _)| weight1_cell(store, v, p, *g)).collect::<Result<_, _>>()?;
        rows.push(TableRow { label: format!("gr1 H({})", v.name()), cells });
    }
    Ok(Table {
        title: format!("weight-1 homology, m {}, as {}-representations", p.name(), Group::for_parity(p).name()),
        columns: cols.into_iter().map(|c| c.1).collect(),
        rows,
    })
}

impl Table {
    pub fn to_markdown(&self) -> String {
        let mut out = format!("| | {} |\n|---|{}\n", self.columns.join(" | "), "---|".repeat(self.columns.len()));
        for r in &self.rows {
            let cells: Vec<&str> = r.cells.iter().map(|c| c.text.as_str()).collect();
            out.push_str(&format!("| {} | {} |\n", r.label, cells.join(" | ")));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let quote = |s: &str| if s.contains([',', '"']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.to_string() };
        let mut out = format!(",{}\n", self.columns.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(|c| quote(&c.text)).collect();
            out.push_str(&format!("{},{}\n", quote(&r.label), cells.join(",")));
        }
        out
    }
}
