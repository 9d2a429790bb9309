//! Expected decompositions, loaded from `data/decompositions.json`.

use crate::graph::{Parity, Variant};
use crate::rep::{parse_weight, Group, HighestWeight};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;

const RAW: &str = include_str!("../../data/decompositions.json");

#[derive(Clone, Debug, Deserialize)]
pub struct WeightOneRow {
    pub variant: String,
    pub parity: String,
    /// Inclusive genus range; an open upper end covers every larger genus.
    pub genus: (u8, Option<u8>),
    /// The homology is `V[m + shift]`, i.e. it sits in degree `-m - shift`.
    pub shift: i64,
    pub irreps: Vec<(String, i64)>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Expected {
    pub irreps: Vec<(String, i64)>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Tables {
    pub weight_one: Vec<WeightOneRow>,
    pub weight_two: BTreeMap<String, Vec<(String, i64)>>,
    pub generator_squares: BTreeMap<String, Expected>,
    pub relations: BTreeMap<String, Expected>,
}

pub fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| serde_json::from_str(RAW).expect("bundled decomposition tables parse"))
}

pub fn key(v: Variant, p: Parity) -> String {
    format!("{}/{}", v.name(), p.name())
}

/// Sorted `(weight, multiplicity)` list as produced by `decompose`.
pub fn to_weights(list: &[(String, i64)], group: Group) -> Vec<(HighestWeight, i64)> {
    let mut out: Vec<(HighestWeight, i64)> =
        list.iter().map(|(s, k)| (parse_weight(group, s).unwrap_or_else(|| panic!("bad weight {s} in tables")), *k)).collect();
    out.sort();
    out
}

impl Tables {
    /// `(shift, irreps)` for one cell of the weight-one tables; `None` when the
    /// homology vanishes.
    pub fn weight_one(&self, v: Variant, p: Parity, g: u8) -> Option<(i64, Vec<(HighestWeight, i64)>)> {
        self.weight_one
            .iter()
            .find(|r| r.variant == v.name() && r.parity == p.name() && r.genus.0 <= g && r.genus.1.is_none_or(|hi| g <= hi))
            .map(|r| (r.shift, to_weights(&r.irreps, Group::for_parity(p))))
    }
}
