use super::{decode_stable, is_admissible_stable, stable_canonical, Family, Item, StableGraph, StableSpec};
use crate::enumerate::{skeletons, EnumError, Limits};
use crate::graph::DecoratedGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableBasis {
    pub spec: StableSpec,
    pub strata: BTreeMap<i64, Vec<String>>,
}

impl StableBasis {
    pub fn dim(&self, e: i64) -> usize {
        self.strata.get(&e).map_or(0, Vec::len)
    }

    pub fn total(&self) -> usize {
        self.strata.values().map(Vec::len).sum()
    }

    pub fn graphs(&self, e: i64) -> Vec<StableGraph> {
        self.strata
            .get(&e)
            .map(|v| v.iter().map(|s| decode_stable(s, self.spec.parity).expect("stored encoding")).collect())
            .unwrap_or_default()
    }

    pub fn index(&self, e: i64) -> HashMap<&str, usize> {
        self.strata.get(&e).map(|v| v.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()).unwrap_or_default()
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.strata.iter().map(|(e, v)| format!("E={e}: {}", v.len())).collect();
        parts.join(", ")
    }
}

/// Multisets of size `total` over `parts` slots, as count vectors.
fn distributions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in 0..=total {
        for mut rest in distributions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One cell of the search: a solid skeleton with per-vertex `ω` and slot
/// counts, plus `c` crossed vertices.
struct Cell {
    skel: DecoratedGraph,
    c: usize,
    omegas: Vec<usize>,
    stubs: Vec<usize>,
}

struct Fill<'a> {
    cell: &'a Cell,
    m: usize,
    spec: StableSpec,
    out: Vec<String>,
}

impl Fill<'_> {
    fn emit(&mut self, legs: &[Option<Target>], blocks: &[(usize, usize)]) {
        let v = self.cell.skel.n;
        let n = v + self.cell.c;
        let mut items = vec![];
        for x in 0..self.cell.c {
            items.push((v + x, Item::Cross));
        }
        for (x, &k) in self.cell.omegas.iter().enumerate() {
            items.extend(std::iter::repeat((x, Item::Omega)).take(k));
        }
        for (k, &(a, b)) in blocks.iter().enumerate() {
            items.push((a, Item::Half(k as u16)));
            items.push((b, Item::Half(k as u16)));
        }
        let mut pairs = vec![];
        for (l, t) in legs.iter().enumerate() {
            match t.expect("all legs placed") {
                Target::Vertex(x) => items.push((x, Item::Leg(l as u8 + 1))),
                Target::Leg(o) => {
                    if l < o {
                        pairs.push((l as u8 + 1, o as u8 + 1));
                    }
                }
            }
        }
        let g = StableGraph::new(n, self.cell.skel.edges.clone(), items, pairs, self.spec.parity);
        if !is_admissible_stable(&g, self.spec.family) {
            return;
        }
        let cf = stable_canonical(&g);
        if !cf.is_zero() {
            self.out.push(cf.encoding);
        }
    }

    /// Places legs in label order, then crossed slots, then internal blocks.
    fn legs(&mut self, l: usize, legs: &mut Vec<Option<Target>>, free: &mut Vec<usize>, next_cross: usize) {
        if l == self.m {
            self.crossed(next_cross, 0, legs, free, &mut vec![]);
            return;
        }
        if legs[l].is_some() {
            self.legs(l + 1, legs, free, next_cross);
            return;
        }
        for o in l + 1..self.m {
            if legs[o].is_none() {
                legs[l] = Some(Target::Leg(o));
                legs[o] = Some(Target::Leg(l));
                self.legs(l + 1, legs, free, next_cross);
                legs[o] = None;
            }
        }
        let v = self.cell.skel.n;
        if next_cross < self.cell.c {
            legs[l] = Some(Target::Vertex(v + next_cross));
            self.legs(l + 1, legs, free, next_cross + 1);
        }
        for x in 0..v {
            if free[x] > 0 {
                free[x] -= 1;
                legs[l] = Some(Target::Vertex(x));
                self.legs(l + 1, legs, free, next_cross);
                free[x] += 1;
            }
        }
        legs[l] = None;
    }

    /// Remaining crossed vertices are interchangeable, so their partners are
    /// chosen in nondecreasing order.
    fn crossed(&mut self, x: usize, min: usize, legs: &[Option<Target>], free: &mut Vec<usize>, blocks: &mut Vec<(usize, usize)>) {
        let v = self.cell.skel.n;
        if x == self.cell.c {
            self.blocks(0, 0, legs, free, blocks);
            return;
        }
        for t in min..v {
            if free[t] > 0 {
                free[t] -= 1;
                blocks.push((t, v + x));
                self.crossed(x + 1, t, legs, free, blocks);
                blocks.pop();
                free[t] += 1;
            }
        }
    }

    /// Multigraphs, loops allowed, realizing the remaining stub counts.
    fn blocks(&mut self, a: usize, min_b: usize, legs: &[Option<Target>], free: &mut Vec<usize>, blocks: &mut Vec<(usize, usize)>) {
        let v = self.cell.skel.n;
        let Some(a2) = (a..v).find(|&x| free[x] > 0) else {
            self.emit(legs, blocks);
            return;
        };
        let lo = if a2 == a { min_b.max(a2) } else { a2 };
        for b in lo..v {
            let ok = if b == a2 { free[a2] >= 2 } else { free[b] > 0 };
            if !ok {
                continue;
            }
            free[a2] -= 1;
            free[b] -= 1;
            blocks.push((a2, b));
            self.blocks(a2, b, legs, free, blocks);
            blocks.pop();
            free[a2] += 1;
            free[b] += 1;
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Target {
    Vertex(usize),
    Leg(usize),
}

/// Canonical basis of a stable two-colored complex, by E-number.
pub fn enumerate_stable_basis(spec: StableSpec, limits: &Limits) -> Result<StableBasis, EnumError> {
    let w = spec.w;
    let mut sets: BTreeMap<i64, BTreeSet<String>> = BTreeMap::new();
    let k = spec.family == Family::K;
    let mut cells = vec![];
    if w >= 1 {
        let wu = w as usize;
        for v in 0..=wu.min(limits.max_vertices) {
            for e in 0..=(v + wu / 2).min(limits.max_edges) {
                let r = w + 2 * v as i64 - 2 * e as i64;
                if r < 0 {
                    continue;
                }
                let r = r as usize;
                for skel in skeletons(v, e, spec.family == Family::JTp, false) {
                    let max_c = if k { r } else { 0 };
                    for c in 0..=max_c {
                        let max_o = if k && v > 0 { (r - c) / 2 } else { 0 };
                        for o in 0..=max_o {
                            let s_int = r - c - 2 * o;
                            for omegas in distributions(o, v) {
                                for stubs in distributions(s_int, v) {
                                    let ok = (0..v).all(|x| skel.valence(x) + omegas[x] + stubs[x] >= 3);
                                    if ok {
                                        cells.push(Cell { skel: skel.clone(), c, omegas: omegas.clone(), stubs });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let found: Vec<(i64, Vec<String>)> = cells
        .par_iter()
        .map(|cell| {
            let mut f = Fill { cell, m: spec.m, spec, out: vec![] };
            let mut free = cell.stubs.clone();
            f.legs(0, &mut vec![None; spec.m], &mut free, 0);
            (cell.skel.edges.len() as i64 - cell.c as i64, f.out)
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
    let strata = sets.into_iter().filter(|(_, s)| !s.is_empty()).map(|(e, s)| (e, s.into_iter().collect())).collect();
    Ok(StableBasis { spec, strata })
}
