//! Canonical bases of the decorated complexes, stratified by E-number.

use crate::graph::{canonical_form, is_admissible, Deco, DecoratedGraph, Parity, Side, Variant};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

mod cgamma;

pub use cgamma::{build_cgamma, CGamma, CoreGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub variant: Variant,
    pub side: Side,
    pub g: u8,
    pub parity: Parity,
    pub w: i64,
}

impl ComplexSpec {
    pub fn new(variant: Variant, side: Side, g: u8, parity: Parity, w: i64) -> Self {
        ComplexSpec { variant, side, g, parity, w }
    }

    pub fn connected(self) -> Self {
        ComplexSpec { side: Side::Connected, ..self }
    }

    pub fn with_w(self, w: i64) -> Self {
        ComplexSpec { w, ..self }
    }

    pub fn label(&self) -> String {
        format!("{}/{}/g={}/{}/W={}", self.variant.name(), self.side.name(), self.g, self.parity.name(), self.w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBasis {
    pub spec: ComplexSpec,
    /// E-number to sorted canonical encodings.
    pub strata: BTreeMap<i64, Vec<String>>,
}

impl ChainBasis {
    pub fn dim(&self, e: i64) -> usize {
        self.strata.get(&e).map_or(0, Vec::len)
    }

    pub fn total(&self) -> usize {
        self.strata.values().map(Vec::len).sum()
    }

    pub fn graphs(&self, e: i64) -> Vec<DecoratedGraph> {
        self.strata
            .get(&e)
            .map(|v| v.iter().map(|s| DecoratedGraph::from_encoding(s, self.spec.parity).expect("stored encoding")).collect())
            .unwrap_or_default()
    }

    pub fn index(&self, e: i64) -> HashMap<&str, usize> {
        self.strata.get(&e).map(|v| v.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()).unwrap_or_default()
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.strata.iter().map(|(e, v)| format!("E={e}: {}", v.len())).collect();
        parts.join(", ")
    }

    fn from_sets(spec: ComplexSpec, sets: BTreeMap<i64, BTreeSet<String>>) -> Self {
        let strata = sets.into_iter().filter(|(_, s)| !s.is_empty()).map(|(e, s)| (e, s.into_iter().collect())).collect();
        ChainBasis { spec, strata }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Limits {
    pub max_stratum: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_stratum: 3_000_000, max_vertices: 10, max_edges: 16 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EnumError {
    #[error("resource limit exceeded ({what}); partial counts so far: {partial:?}")]
    Limit { what: String, partial: BTreeMap<i64, usize> },
}

/// Distinct letter multisets (sets when letters are odd) of the given size.
fn letter_choices(g: u8, parity: Parity, size: usize) -> Vec<Vec<Deco>> {
    let letters = Deco::letters(g);
    let mut out = vec![];
    fn go(letters: &[Deco], start: usize, rep: bool, size: usize, cur: &mut Vec<Deco>, out: &mut Vec<Vec<Deco>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..letters.len() {
            cur.push(letters[i]);
            go(letters, if rep { i } else { i + 1 }, rep, size, cur, out);
            cur.pop();
        }
    }
    go(&letters, 0, parity == Parity::Even, size, &mut vec![], &mut out);
    out
}

/// Decoration words for one vertex with decoration count `d` and at least
/// `need` entries.
fn vertex_options(g: u8, parity: Parity, omega: bool, d: usize, need: usize) -> Vec<Vec<Deco>> {
    let mut out = vec![];
    let max_w = if omega { d / 2 } else { 0 };
    for w in 0..=max_w {
        let l = d - 2 * w;
        if l + w < need {
            continue;
        }
        for mut letters in letter_choices(g, parity, l) {
            letters.extend(std::iter::repeat(Deco::Omega).take(w));
            out.push(letters);
        }
    }
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Connected simple graphs on `v` vertices with `e` edges, at most one
/// tadpole per vertex when `tadpoles`, up to isomorphism.
pub fn underlying_graphs(v: usize, e: usize, tadpoles: bool) -> Vec<DecoratedGraph> {
    skeletons(v, e, tadpoles, true)
}

/// As [`underlying_graphs`], optionally keeping disconnected graphs.
pub fn skeletons(v: usize, e: usize, tadpoles: bool, connected: bool) -> Vec<DecoratedGraph> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let loops = if tadpoles { v } else { 0 };
    let mut seen = BTreeMap::new();
    let total = pairs.len() + loops;
    if e > total {
        return vec![];
    }
    let mut choose = vec![];
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    subsets(total, e, 0, &mut vec![], &mut choose);
    for s in choose {
        let edges: Vec<(usize, usize)> =
            s.iter().map(|&i| if i < pairs.len() { pairs[i] } else { (i - pairs.len(), i - pairs.len()) }).collect();
        let gr = DecoratedGraph::new(v, edges, vec![], Parity::Even);
        if connected && !gr.is_connected() {
            continue;
        }
        let c = canonical_form(&gr);
        seen.entry(c.encoding).or_insert(c.graph);
    }
    seen.into_values().collect()
}

/// Connected basis (the `side` of `spec` is ignored).
pub fn enumerate_connected(spec: ComplexSpec, limits: &Limits) -> Result<ChainBasis, EnumError> {
    let spec = spec.connected();
    let (g, parity, w) = (spec.g, spec.parity, spec.w);
    let mut sets: BTreeMap<i64, BTreeSet<String>> = BTreeMap::new();
    if w < 1 {
        return Ok(ChainBasis::from_sets(spec, sets));
    }
    if spec.variant == Variant::GcEx && w == 1 {
        for l in Deco::letters(g) {
            let c = canonical_form(&DecoratedGraph::crossed_letter(l, parity));
            sets.entry(-1).or_default().insert(c.encoding);
        }
    }
    let wu = w as usize;
    let mut cells = vec![];
    for v in 1..=wu.min(limits.max_vertices) {
        for e in v - 1..=(v + wu / 2).min(limits.max_edges) {
            let d = w + 2 * v as i64 - 2 * e as i64;
            if d < 0 {
                continue;
            }
            for ug in underlying_graphs(v, e, spec.variant.tadpoles()) {
                for dist in compositions(d as usize, v) {
                    cells.push((ug.clone(), dist));
                }
            }
        }
    }
    let omega = spec.variant.omega();
    let found: Vec<(i64, Vec<String>)> = cells
        .par_iter()
        .map(|(ug, dist)| {
            let mut options = vec![];
            for (vx, &dv) in dist.iter().enumerate() {
                let need = 3usize.saturating_sub(ug.valence(vx));
                let o = vertex_options(g, parity, omega, dv, need);
                if o.is_empty() {
                    return (0, vec![]);
                }
                options.push(o);
            }
            let mut out = vec![];
            let mut idx = vec![0usize; options.len()];
            loop {
                let mut decos = vec![];
                for (vx, &i) in idx.iter().enumerate() {
                    decos.extend(options[vx][i].iter().map(|&d| (vx, d)));
                }
                let gr = DecoratedGraph::new(ug.n, ug.edges.clone(), decos, parity);
                let c = canonical_form(&gr);
                if !c.is_zero() {
                    debug_assert!(is_admissible(&c.graph, spec.variant, Side::Connected));
                    out.push(c.encoding);
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return (ug.edges.len() as i64, out);
                    }
                    idx[k] += 1;
                    if idx[k] < options[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        })
        .collect();
    for (e, encs) in found {
        let set = sets.entry(e).or_default();
        set.extend(encs);
        if set.len() > limits.max_stratum {
            let partial = sets.iter().map(|(k, s)| (*k, s.len())).collect();
            return Err(EnumError::Limit { what: format!("stratum size at {}", spec.label()), partial });
        }
    }
    Ok(ChainBasis::from_sets(spec, sets))
}

/// One connected class usable as a component of a disconnected graph.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: DecoratedGraph,
    pub w: i64,
    pub e: i64,
}

/// All connected classes of weight `1..=w`.
pub fn components_upto(spec: ComplexSpec, limits: &Limits) -> Result<Vec<Component>, EnumError> {
    let mut comps = vec![];
    for wi in 1..=spec.w {
        let b = enumerate_connected(spec.with_w(wi), limits)?;
        for (&e, _) in &b.strata {
            for gr in b.graphs(e) {
                comps.push(Component { graph: gr, w: wi, e });
            }
        }
    }
    Ok(comps)
}

/// Chevalley–Eilenberg basis: multisets of connected classes of total weight W.
pub fn enumerate_ce(spec: ComplexSpec, limits: &Limits) -> Result<ChainBasis, EnumError> {
    let spec = ComplexSpec { side: Side::Ce, ..spec };
    let comps = components_upto(spec, limits)?;
    let mut multisets: Vec<Vec<usize>> = vec![];
    fn go(comps: &[Component], start: usize, left: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..comps.len() {
            if comps[i].w <= left {
                cur.push(i);
                go(comps, i, left - comps[i].w, cur, out);
                cur.pop();
            }
        }
    }
    go(&comps, 0, spec.w, &mut vec![], &mut multisets);
    let found: Vec<Option<(i64, String)>> = multisets
        .par_iter()
        .map(|ms| {
            let mut gr = comps[ms[0]].graph.clone();
            let mut e = comps[ms[0]].e;
            for &i in &ms[1..] {
                gr = gr.disjoint_union(&comps[i].graph).0;
                e += comps[i].e;
            }
            let c = canonical_form(&gr);
            (!c.is_zero()).then_some((e, c.encoding))
        })
        .collect();
    let mut sets: BTreeMap<i64, BTreeSet<String>> = BTreeMap::new();
    for (e, enc) in found.into_iter().flatten() {
        sets.entry(e).or_default().insert(enc);
    }
    for (e, s) in &sets {
        if s.len() > limits.max_stratum {
            let partial = sets.iter().map(|(k, s)| (*k, s.len())).collect();
            return Err(EnumError::Limit { what: format!("stratum E={e} of {}", spec.label()), partial });
        }
    }
    Ok(ChainBasis::from_sets(spec, sets))
}

pub fn enumerate_basis(spec: ComplexSpec, limits: &Limits) -> Result<ChainBasis, EnumError> {
    match spec.side {
        Side::Connected => enumerate_connected(spec, limits),
        Side::Ce => enumerate_ce(spec, limits),
    }
}

/// Per-(W, E) dimensions of the connected complex together with the Koszul
/// parity `mW - E`, enough to count the CE complex without listing it.
pub fn connected_counts(spec: ComplexSpec, limits: &Limits) -> Result<Vec<(i64, i64, usize)>, EnumError> {
    let mut out = vec![];
    for wi in 1..=spec.w {
        let b = enumerate_connected(spec.with_w(wi), limits)?;
        for (&e, v) in &b.strata {
            out.push((wi, e, v.len()));
        }
    }
    Ok(out)
}

/// Stratum sizes of the CE complex from connected counts: a graded symmetric
/// algebra, exterior on odd generators and polynomial on even ones.
pub fn ce_counts_from_connected(counts: &[(i64, i64, usize)], m_parity: Parity, w: i64) -> BTreeMap<i64, u128> {
    fn binom(n: u128, k: u128) -> u128 {
        if k > n {
            return 0;
        }
        let mut r = 1u128;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }
    let mut poly: BTreeMap<(i64, i64), u128> = BTreeMap::new();
    poly.insert((0, 0), 1);
    for &(wi, e, n) in counts {
        let odd = (m_parity.bit() as i64 * wi - e).rem_euclid(2) == 1;
        let mut next: BTreeMap<(i64, i64), u128> = BTreeMap::new();
        for (&(a, b), &c) in &poly {
            let mut k = 0i64;
            while a + k * wi <= w {
                let ways = if k == 0 {
                    1
                } else if odd {
                    binom(n as u128, k as u128)
                } else {
                    binom(n as u128 + k as u128 - 1, k as u128)
                };
                if ways == 0 {
                    break;
                }
                *next.entry((a + k * wi, b + k * e)).or_insert(0) += c * ways;
                k += 1;
            }
        }
        poly = next;
    }
    poly.into_iter().filter(|&((a, _), c)| a == w && c > 0).map(|((_, b), c)| (b, c)).collect()
}

#[cfg(test)]
mod tests;
