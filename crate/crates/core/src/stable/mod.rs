//! Two-colored graphs computing the invariant parts of the CE complexes in
//! the stable range.
//!
//! A solid edge is an ordinary edge. A dashed edge between two vertices is
//! a copy of the reduced diagonal `Δ_1` inserted at its endpoints; it is
//! stored as two `Half` items sharing a block id. A leg `L` is a fixed vector
//! `u_L` sitting at a vertex, standing for the `L`-th external tensor factor,
//! and two legs joined directly are recorded as a leg pair.
//!
//! The orientation word is `[solid edges][items]`. Halves and legs have the
//! parity of `m`, crosses are odd and `ω` is even. Since `Δ_1` is
//! Koszul-symmetric, moving one half past its own partner costs nothing;
//! [`koszul_excl`] implements that rule.

mod canon;
mod differential;
mod enumerate;

pub use canon::{stable_canonical, StableClass};
pub use differential::{assemble_stable, d_stable, stable_terms};
pub use enumerate::{enumerate_stable_basis, StableBasis};

use crate::graph::{Parity, Variant};
use serde::{Deserialize, Serialize};

/// Which decorated complex the two-colored graphs come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// From the variant with tadpoles.
    JTp,
    J,
    /// From the extended variant: adds `ω` and crossed vertices.
    K,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::JTp, Family::J, Family::K];

    pub fn variant(self) -> Variant {
        match self {
            Family::JTp => Variant::Gc1Tp,
            Family::J => Variant::Gc1,
            Family::K => Variant::GcEx,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::JTp => "JTP",
            Family::J => "J",
            Family::K => "K",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_uppercase().as_str() {
            "JTP" => Some(Family::JTp),
            "J" => Some(Family::J),
            "K" => Some(Family::K),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StableSpec {
    pub family: Family,
    pub parity: Parity,
    /// Number of external legs.
    pub m: usize,
    pub w: i64,
    /// Only enters through the scalar `2g(-1)^m`; must satisfy `2g ≥ 3W + M`.
    pub g: u8,
}

impl StableSpec {
    pub fn new(family: Family, parity: Parity, m: usize, w: i64) -> Self {
        let g = ((3 * w.max(0) as usize + m + 1) / 2).max(1) as u8;
        StableSpec { family, parity, m, w, g }
    }

    pub fn with_g(self, g: u8) -> Self {
        StableSpec { g, ..self }
    }

    pub fn label(&self) -> String {
        format!("{}/{}/M={}/W={}/g={}", self.family.name(), self.parity.name(), self.m, self.w, self.g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Item {
    Cross,
    Omega,
    Half(u16),
    Leg(u8),
}

impl Item {
    pub fn parity(self, p: Parity) -> u8 {
        match self {
            Item::Cross => 1,
            Item::Omega => 0,
            Item::Half(_) | Item::Leg(_) => p.bit(),
        }
    }

    pub fn is_slot(self) -> bool {
        matches!(self, Item::Half(_) | Item::Leg(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StableGraph {
    pub n: usize,
    /// Solid edges, odd and ordered.
    pub edges: Vec<(usize, usize)>,
    pub items: Vec<(usize, Item)>,
    /// Legs joined to each other, `(a, b)` with `a < b`.
    pub leg_pairs: Vec<(u8, u8)>,
    pub parity: Parity,
}

#[derive(Debug, thiserror::Error)]
pub enum StableError {
    #[error("malformed stable encoding: {0}")]
    Encoding(String),
    #[error("unknown family {0}")]
    Family(String),
    #[error("term {0} is missing from the target basis")]
    MissingTarget(String),
}

/// Sign of the permutation `perm` of `items`, ignoring swaps of the two
/// halves of one block.
pub fn koszul_excl(perm: &[usize], items: &[(usize, Item)], p: Parity) -> i64 {
    let par: Vec<u8> = items.iter().map(|x| x.1.parity(p)).collect();
    let mut odd = 0u8;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && par[i] & par[j] == 1 && !same_block(items[i].1, items[j].1) {
                odd ^= 1;
            }
        }
    }
    if odd == 1 {
        -1
    } else {
        1
    }
}

fn same_block(a: Item, b: Item) -> bool {
    matches!((a, b), (Item::Half(x), Item::Half(y)) if x == y)
}

impl StableGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, items: Vec<(usize, Item)>, leg_pairs: Vec<(u8, u8)>, parity: Parity) -> Self {
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        let leg_pairs = leg_pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        StableGraph { n, edges, items, leg_pairs, parity }
    }

    pub fn is_crossed(&self, v: usize) -> bool {
        self.items.iter().any(|&(u, it)| u == v && it == Item::Cross)
    }

    pub fn crossed_count(&self) -> usize {
        self.items.iter().filter(|x| x.1 == Item::Cross).count()
    }

    /// Solid half-edges at `v`, a tadpole counting twice.
    pub fn half_edges(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    /// Solid half-edges plus slots and `ω` decorations.
    pub fn valence(&self, v: usize) -> usize {
        self.half_edges(v) + self.items.iter().filter(|&&(u, it)| u == v && it != Item::Cross).count()
    }

    pub fn items_at(&self, v: usize) -> Vec<usize> {
        (0..self.items.len()).filter(|&i| self.items[i].0 == v).collect()
    }

    /// Index of the other half of the block at `i`.
    pub fn partner(&self, i: usize) -> Option<usize> {
        partner_in(&self.items, i)
    }

    pub fn weight(&self) -> i64 {
        let v = (0..self.n).filter(|&v| !self.is_crossed(v)).count() as i64;
        let d: i64 = self
            .items
            .iter()
            .map(|x| match x.1 {
                Item::Cross => 0,
                Item::Omega => 2,
                _ => 1,
            })
            .sum();
        2 * (self.edges.len() as i64 - v) + d
    }

    /// Solid edges minus crossed vertices.
    pub fn e_number(&self) -> i64 {
        self.edges.len() as i64 - self.crossed_count() as i64
    }

    pub fn legs(&self) -> usize {
        self.items.iter().filter(|x| matches!(x.1, Item::Leg(_))).count() + 2 * self.leg_pairs.len()
    }

    pub fn next_block(&self) -> u16 {
        self.items.iter().filter_map(|x| if let Item::Half(b) = x.1 { Some(b + 1) } else { None }).max().unwrap_or(0)
    }
}

pub(crate) fn partner_in(items: &[(usize, Item)], i: usize) -> Option<usize> {
    let Item::Half(b) = items[i].1 else { return None };
    (0..items.len()).find(|&j| j != i && items[j].1 == Item::Half(b))
}

/// Whether `g` is a basis graph of `family`: internal vertices at least
/// trivalent, crossed vertices carrying exactly one slot and nothing else.
pub fn is_admissible_stable(g: &StableGraph, family: Family) -> bool {
    let k = family == Family::K;
    for v in 0..g.n {
        if g.is_crossed(v) {
            if !k || g.half_edges(v) != 0 {
                return false;
            }
            let at = g.items_at(v);
            let slots = at.iter().filter(|&&i| g.items[i].1.is_slot()).count();
            if at.len() != 2 || slots != 1 {
                return false;
            }
        } else if g.valence(v) < 3 {
            return false;
        }
    }
    if !k && g.items.iter().any(|x| x.1 == Item::Omega) {
        return false;
    }
    if family != Family::JTp && g.edges.iter().any(|&(a, b)| a == b) {
        return false;
    }
    true
}

/// `s1;n;edges;crossed;omegas;blocks;legs;legpairs`, lists comma separated,
/// pairs `a-b`, legs `L@v`.
pub fn encode_stable(g: &StableGraph) -> String {
    let pairs = |xs: &[(usize, usize)]| xs.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",");
    let mut crossed = vec![];
    let mut omegas = vec![];
    let mut blocks = vec![];
    let mut legs = vec![];
    for (i, &(v, it)) in g.items.iter().enumerate() {
        match it {
            Item::Cross => crossed.push(v.to_string()),
            Item::Omega => omegas.push(v.to_string()),
            Item::Half(_) => {
                let j = g.partner(i).expect("unpaired half");
                if i < j {
                    blocks.push((v, g.items[j].0));
                }
            }
            Item::Leg(l) => legs.push(format!("{l}@{v}")),
        }
    }
    let lp: Vec<String> = g.leg_pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    format!(
        "s1;{};{};{};{};{};{};{}",
        g.n,
        pairs(&g.edges),
        crossed.join(","),
        omegas.join(","),
        pairs(&blocks),
        legs.join(","),
        lp.join(",")
    )
}

/// Inverse of [`encode_stable`]; the word is laid out in the canonical
/// arrangement `[crosses][ω][blocks][legs]`.
pub fn decode_stable(enc: &str, parity: Parity) -> Result<StableGraph, StableError> {
    let bad = || StableError::Encoding(enc.to_string());
    let parts: Vec<&str> = enc.split(';').collect();
    if parts.len() != 8 || parts[0] != "s1" {
        return Err(bad());
    }
    let n: usize = parts[1].parse().map_err(|_| bad())?;
    let list = |s: &str| -> Vec<String> {
        if s.is_empty() {
            vec![]
        } else {
            s.split(',').map(str::to_string).collect()
        }
    };
    let pair = |s: &str| -> Result<(usize, usize), StableError> {
        let (a, b) = s.split_once('-').ok_or_else(bad)?;
        Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
    };
    let num = |s: &str| -> Result<usize, StableError> { s.parse().map_err(|_| bad()) };
    let edges = list(parts[2]).iter().map(|s| pair(s)).collect::<Result<Vec<_>, _>>()?;
    let mut items = vec![];
    for s in list(parts[3]) {
        items.push((num(&s)?, Item::Cross));
    }
    for s in list(parts[4]) {
        items.push((num(&s)?, Item::Omega));
    }
    for (k, s) in list(parts[5]).iter().enumerate() {
        let (a, b) = pair(s)?;
        items.push((a, Item::Half(k as u16)));
        items.push((b, Item::Half(k as u16)));
    }
    for s in list(parts[6]) {
        let (l, v) = s.split_once('@').ok_or_else(bad)?;
        items.push((num(v)?, Item::Leg(num(l)? as u8)));
    }
    let mut leg_pairs = vec![];
    for s in list(parts[7]) {
        let (a, b) = pair(&s)?;
        leg_pairs.push((a as u8, b as u8));
    }
    if items.iter().any(|x| x.0 >= n) || edges.iter().any(|&(a, b)| a >= n || b >= n) {
        return Err(bad());
    }
    Ok(StableGraph::new(n, edges, items, leg_pairs, parity))
}

#[cfg(test)]
mod tests;
