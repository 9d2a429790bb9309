//! Chain-side differentials on decorated graphs and their matrices.
//!
//! Every piece works on the orientation word `[edges][decorations]`. An
//! operation first moves the items it consumes to the front, paying the
//! Koszul sign, then rewrites them there; the result is canonicalized.
//! The total differential is `-d_contract + d_cut + d_mul + d_cross`.

use crate::enumerate::{ChainBasis, ComplexSpec};
use crate::graph::{canonical_form, diag_terms, is_admissible, koszul_sign, pairing, Deco, DecoratedGraph, Side, Variant};
use crate::linalg::SparseIntMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A linear combination of canonical classes, keyed by encoding.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSum {
    pub terms: BTreeMap<String, i64>,
}

impl FormalSum {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, enc: &str) -> i64 {
        self.terms.get(enc).copied().unwrap_or(0)
    }

    pub fn add(&mut self, enc: String, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.coeff(&enc) + c;
        if v == 0 {
            self.terms.remove(&enc);
        } else {
            self.terms.insert(enc, v);
        }
    }

    pub fn merge(&mut self, other: &FormalSum, scale: i64) {
        for (k, &v) in &other.terms {
            self.add(k.clone(), v * scale);
        }
    }

    /// Canonicalizes raw terms, dropping those rejected by `keep` and
    /// classes that vanish by symmetry.
    pub fn collect(raw: Vec<(DecoratedGraph, i64)>, keep: impl Fn(&DecoratedGraph) -> bool) -> FormalSum {
        let mut acc: BTreeMap<String, i64> = BTreeMap::new();
        for (g, c) in raw {
            if c == 0 || !keep(&g) {
                continue;
            }
            let cf = canonical_form(&g);
            if cf.is_zero() {
                continue;
            }
            *acc.entry(cf.encoding).or_insert(0) += c * cf.sign as i64;
        }
        acc.retain(|_, v| *v != 0);
        FormalSum { terms: acc }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DiffError {
    #[error("the crossed differential only exists for the extended variant")]
    NotExtended,
    #[error("term {0} is missing from the target basis")]
    MissingTarget(String),
}

fn sgn(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Drops vertex `v`; `merge_into` redirects its incidences first.
fn drop_vertex(
    n: usize,
    edges: Vec<(usize, usize)>,
    decos: Vec<(usize, Deco)>,
    v: usize,
    merge_into: usize,
) -> (usize, Vec<(usize, usize)>, Vec<(usize, Deco)>) {
    let f = |x: usize| {
        let x = if x == v { merge_into } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    let edges = edges.into_iter().map(|(a, b)| (f(a), f(b))).collect();
    let decos = decos.into_iter().map(|(a, d)| (f(a), d)).collect();
    (n - 1, edges, decos)
}

fn without<T: Clone>(xs: &[T], skip: &[usize]) -> Vec<T> {
    xs.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, x)| x.clone()).collect()
}

/// Sign of moving the decorations at `sel` (in that order) to the front.
fn front_sign(g: &DecoratedGraph, sel: &[usize]) -> i64 {
    let len = g.decos.len();
    let mut perm = vec![0; len];
    for (k, &i) in sel.iter().enumerate() {
        perm[i] = k;
    }
    let mut next = sel.len();
    for i in 0..len {
        if !sel.contains(&i) {
            perm[i] = next;
            next += 1;
        }
    }
    let par: Vec<u8> = g.decos.iter().map(|&(_, d)| d.parity(g.parity)).collect();
    koszul_sign(&perm, &par)
}

/// Contraction of each non-tadpole edge, with the edge moved to the front.
pub fn contract_terms(g: &DecoratedGraph) -> Vec<(DecoratedGraph, i64)> {
    let mut out = vec![];
    for (k, &(u, v)) in g.edges.iter().enumerate() {
        if u == v {
            continue;
        }
        let (n, edges, decos) = drop_vertex(g.n, without(&g.edges, &[k]), g.decos.clone(), v, u);
        out.push((DecoratedGraph::new(n, edges, decos, g.parity), sgn(k)));
    }
    out
}

/// Each edge replaced by the diagonal at its endpoints; the `ω` terms only
/// when `omega`.
pub fn cut_terms(g: &DecoratedGraph, genus: u8, omega: bool) -> Vec<(DecoratedGraph, i64)> {
    let mut out = vec![];
    let p = g.parity;
    for (k, &(u, v)) in g.edges.iter().enumerate() {
        let edges = without(&g.edges, &[k]);
        let s = sgn(k);
        for (x, y, c) in diag_terms(genus, p) {
            let mut decos = vec![(u, x), (v, y)];
            decos.extend(g.decos.iter().copied());
            out.push((DecoratedGraph::new(g.n, edges.clone(), decos, p), s * c));
        }
        if omega {
            for w in [v, u] {
                let mut decos = vec![(w, Deco::Omega)];
                decos.extend(g.decos.iter().copied());
                out.push((DecoratedGraph::new(g.n, edges.clone(), decos, p), s));
            }
        }
    }
    out
}

/// A univalent vertex with exactly two letters: multiply them to `⟨α,β⟩ω`
/// and contract its edge.
pub fn mul_terms(g: &DecoratedGraph) -> Vec<(DecoratedGraph, i64)> {
    let mut out = vec![];
    for v in 0..g.n {
        if g.half_edges(v) != 1 || g.is_crossed(v) {
            continue;
        }
        let k = g.edges.iter().position(|&(a, b)| a == v || b == v).unwrap();
        let (a, b) = g.edges[k];
        let w = if a == v { b } else { a };
        let at: Vec<usize> = (0..g.decos.len()).filter(|&i| g.decos[i].0 == v).collect();
        if at.len() != 2 || !at.iter().all(|&i| g.decos[i].1.is_letter()) {
            continue;
        }
        let (pa, pb) = (at[0], at[1]);
        let c = pairing(g.decos[pa].1, g.decos[pb].1, g.parity);
        if c == 0 {
            continue;
        }
        let sign = sgn(k) * front_sign(g, &[pa, pb]);
        let mut decos = vec![(w, Deco::Omega)];
        decos.extend(without(&g.decos, &[pa, pb]));
        let (n, edges, decos) = drop_vertex(g.n, without(&g.edges, &[k]), decos, v, w);
        out.push((DecoratedGraph::new(n, edges, decos, g.parity), sign * c));
    }
    out
}

/// Terms creating a crossed vertex: a letter detached from a vertex, an `ω`
/// split through the diagonal, and an isolated three-letter vertex paired
/// down to one letter.
pub fn cross_terms(g: &DecoratedGraph, genus: u8) -> Vec<(DecoratedGraph, i64)> {
    let mut out = vec![];
    let p = g.parity;
    let base = sgn(g.edges.len());
    let nn = g.n;
    for (i, &(v, d)) in g.decos.iter().enumerate() {
        if g.is_crossed(v) {
            continue;
        }
        if d.is_letter() {
            let mut decos = vec![(nn, Deco::Cross), (nn, d)];
            decos.extend(without(&g.decos, &[i]));
            let sign = base * front_sign(g, &[i]);
            out.push((DecoratedGraph::new(g.n + 1, g.edges.clone(), decos, p), sign));
        } else if d == Deco::Omega {
            for (x, y, c) in diag_terms(genus, p) {
                let mut decos = vec![(nn, Deco::Cross), (nn, x), (v, y)];
                decos.extend(without(&g.decos, &[i]));
                // opposite sign to the detaching term; forced by d^2 = 0
                out.push((DecoratedGraph::new(g.n + 1, g.edges.clone(), decos, p), -base * c));
            }
        }
    }
    for v in 0..g.n {
        if g.half_edges(v) != 0 || g.is_crossed(v) {
            continue;
        }
        let at: Vec<usize> = (0..g.decos.len()).filter(|&i| g.decos[i].0 == v).collect();
        if at.len() != 3 || !at.iter().all(|&i| g.decos[i].1.is_letter()) {
            continue;
        }
        let eps = base * front_sign(g, &at);
        let l: Vec<Deco> = at.iter().map(|&i| g.decos[i].1).collect();
        for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let c = pairing(l[x], l[y], p);
            if c == 0 {
                continue;
            }
            let mut decos = vec![(v, Deco::Cross), (v, l[z])];
            decos.extend(without(&g.decos, &at));
            out.push((DecoratedGraph::new(g.n, g.edges.clone(), decos, p), eps * c));
        }
    }
    out
}

/// Which graphs survive in the target complex.
pub fn keeper(variant: Variant, side: Side) -> impl Fn(&DecoratedGraph) -> bool {
    move |h: &DecoratedGraph| is_admissible(h, variant, side)
}

/// Plain contraction `d_c'`, entering the total differential with sign `-1`.
pub fn d_contract(g: &DecoratedGraph, spec: &ComplexSpec) -> FormalSum {
    FormalSum::collect(contract_terms(g), keeper(spec.variant, spec.side))
}

pub fn d_cut(g: &DecoratedGraph, spec: &ComplexSpec) -> FormalSum {
    FormalSum::collect(cut_terms(g, spec.g, spec.variant.omega()), keeper(spec.variant, spec.side))
}

pub fn d_mul(g: &DecoratedGraph, spec: &ComplexSpec) -> FormalSum {
    if !spec.variant.omega() {
        return FormalSum::default();
    }
    FormalSum::collect(mul_terms(g), keeper(spec.variant, spec.side))
}

pub fn d_cross(g: &DecoratedGraph, spec: &ComplexSpec) -> Result<FormalSum, DiffError> {
    if spec.variant != Variant::GcEx {
        return Err(DiffError::NotExtended);
    }
    Ok(FormalSum::collect(cross_terms(g, spec.g), keeper(spec.variant, spec.side)))
}

/// Raw terms of the total differential, before canonicalization.
pub fn total_terms(g: &DecoratedGraph, spec: &ComplexSpec) -> Vec<(DecoratedGraph, i64)> {
    let mut raw: Vec<(DecoratedGraph, i64)> = contract_terms(g).into_iter().map(|(h, c)| (h, -c)).collect();
    raw.extend(cut_terms(g, spec.g, spec.variant.omega()));
    if spec.variant == Variant::GcEx {
        raw.extend(mul_terms(g));
        raw.extend(cross_terms(g, spec.g));
    }
    raw
}

pub fn differential(g: &DecoratedGraph, spec: &ComplexSpec) -> FormalSum {
    FormalSum::collect(total_terms(g, spec), keeper(spec.variant, spec.side))
}

/// Matrix of `d: C_E -> C_{E-1}`; column `j` expands basis element `j`.
pub fn assemble(basis: &ChainBasis, e: i64) -> Result<SparseIntMatrix, DiffError> {
    let spec = basis.spec;
    let sources = basis.graphs(e);
    let targets = basis.index(e - 1);
    let cols: Vec<Result<Vec<(usize, usize, i64)>, DiffError>> = sources
        .par_iter()
        .enumerate()
        .map(|(j, gr)| {
            let d = differential(gr, &spec);
            let mut col = vec![];
            for (enc, c) in d.terms {
                let &i = targets.get(enc.as_str()).ok_or(DiffError::MissingTarget(enc.clone()))?;
                col.push((i, j, c));
            }
            Ok(col)
        })
        .collect();
    let mut entries = vec![];
    for c in cols {
        entries.extend(c?);
    }
    Ok(SparseIntMatrix::new(targets.len(), sources.len(), entries))
}

#[cfg(test)]
mod tests;
