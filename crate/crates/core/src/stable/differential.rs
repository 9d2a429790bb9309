//! The differential on two-colored graphs, obtained from the decorated one
//! by evaluating pairings of halves and legs against `Δ_1`.
//!
//! With `G` the matrix of `Δ_1` and `P` that of the pairing, `GP = PG = 1`
//! and `GᵀPG = (-1)^m G`. Hence pairing two halves of distinct blocks fuses
//! their partners into one block, pairing a half with a leg moves the leg to
//! the partner's vertex, pairing the halves of one block gives `2g(-1)^m`,
//! and pairing legs `L < L'` gives `(-1)^m` times the leg pair.

use super::{
    is_admissible_stable, koszul_excl, partner_in, same_block, stable_canonical, Family, Item, StableBasis, StableError, StableGraph,
    StableSpec,
};
use crate::differential::FormalSum;
use crate::graph::Parity;
use crate::linalg::SparseIntMatrix;
use rayon::prelude::*;
use std::collections::BTreeMap;

type Word = Vec<(usize, Item)>;

fn sgn(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Reorders `items` so that `sel` comes first, in that order.
fn to_front(items: &[(usize, Item)], sel: &[usize], p: Parity) -> (i64, Word) {
    let len = items.len();
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
    let sign = koszul_excl(&perm, items, p);
    let mut out = items.to_vec();
    for i in 0..len {
        out[perm[i]] = items[i];
    }
    (sign, out)
}

/// Moves the item at `from` leftwards to `to`.
fn move_left(items: &mut Word, from: usize, to: usize, p: Parity) -> i64 {
    let it = items[from].1;
    let mut s = 1;
    for k in to..from {
        let o = items[k].1;
        if it.parity(p) & o.parity(p) == 1 && !same_block(it, o) {
            s = -s;
        }
    }
    let x = items.remove(from);
    items.insert(to, x);
    s
}

/// Applies the pairing to the first two items of the word.
fn pair_front(mut w: Word, mut lp: Vec<(u8, u8)>, genus: u8, p: Parity) -> Option<(i64, Word, Vec<(u8, u8)>)> {
    let s = p.s();
    match (w[0].1, w[1].1) {
        (Item::Half(x), Item::Half(y)) if x == y => {
            w.drain(0..2);
            Some((2 * genus as i64 * s, w, lp))
        }
        (Item::Half(_), Item::Half(y)) => {
            let i = partner_in(&w, 0)?;
            let mut c = move_left(&mut w, i, 0, p);
            // now [x h1 h2 ...]
            let j = partner_in(&w, 2)?;
            c *= move_left(&mut w, j, 3, p);
            let Item::Half(x) = w[0].1 else { unreachable!() };
            w.drain(1..3);
            debug_assert_eq!(w[1].1, Item::Half(y));
            w[1].1 = Item::Half(x);
            Some((c, w, lp))
        }
        (Item::Half(_), Item::Leg(l)) => {
            let i = partner_in(&w, 0)?;
            let c = move_left(&mut w, i, 0, p);
            w.drain(1..3);
            w[0].1 = Item::Leg(l);
            Some((c, w, lp))
        }
        (Item::Leg(l), Item::Half(_)) => {
            let j = partner_in(&w, 1)?;
            let c = move_left(&mut w, j, 2, p);
            w.drain(0..2);
            w[0].1 = Item::Leg(l);
            Some((c, w, lp))
        }
        (Item::Leg(a), Item::Leg(b)) => {
            w.drain(0..2);
            lp.push((a.min(b), a.max(b)));
            Some((if a < b { s } else { 1 }, w, lp))
        }
        _ => None,
    }
}

fn drop_vertex(n: usize, edges: Vec<(usize, usize)>, items: Word, v: usize, into: usize) -> (usize, Vec<(usize, usize)>, Word) {
    let f = |x: usize| {
        let x = if x == v { into } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    let edges = edges.into_iter().map(|(a, b)| (f(a), f(b))).collect();
    let items = items.into_iter().map(|(a, it)| (f(a), it)).collect();
    (n - 1, edges, items)
}

fn without<T: Clone>(xs: &[T], skip: &[usize]) -> Vec<T> {
    xs.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, x)| x.clone()).collect()
}

fn contract_terms(g: &StableGraph) -> Vec<(StableGraph, i64)> {
    let mut out = vec![];
    for (k, &(u, v)) in g.edges.iter().enumerate() {
        if u == v {
            continue;
        }
        let (n, edges, items) = drop_vertex(g.n, without(&g.edges, &[k]), g.items.clone(), v, u);
        out.push((StableGraph::new(n, edges, items, g.leg_pairs.clone(), g.parity), sgn(k)));
    }
    out
}

fn cut_terms(g: &StableGraph, omega: bool) -> Vec<(StableGraph, i64)> {
    let mut out = vec![];
    let nb = g.next_block();
    for (k, &(u, v)) in g.edges.iter().enumerate() {
        let edges = without(&g.edges, &[k]);
        let mut items = vec![(u, Item::Half(nb)), (v, Item::Half(nb))];
        items.extend(g.items.iter().copied());
        out.push((StableGraph::new(g.n, edges.clone(), items, g.leg_pairs.clone(), g.parity), sgn(k)));
        if omega {
            for x in [v, u] {
                let mut items = vec![(x, Item::Omega)];
                items.extend(g.items.iter().copied());
                out.push((StableGraph::new(g.n, edges.clone(), items, g.leg_pairs.clone(), g.parity), sgn(k)));
            }
        }
    }
    out
}

fn mul_terms(g: &StableGraph, genus: u8) -> Vec<(StableGraph, i64)> {
    let mut out = vec![];
    for v in 0..g.n {
        if g.half_edges(v) != 1 || g.is_crossed(v) {
            continue;
        }
        let k = g.edges.iter().position(|&(a, b)| a == v || b == v).unwrap();
        let (a, b) = g.edges[k];
        let w = if a == v { b } else { a };
        let at = g.items_at(v);
        if at.len() != 2 || !at.iter().all(|&i| g.items[i].1.is_slot()) {
            continue;
        }
        let (s0, word) = to_front(&g.items, &at, g.parity);
        let Some((c, rest, lp)) = pair_front(word, g.leg_pairs.clone(), genus, g.parity) else { continue };
        let mut items = vec![(w, Item::Omega)];
        items.extend(rest);
        let (n, edges, items) = drop_vertex(g.n, without(&g.edges, &[k]), items, v, w);
        out.push((StableGraph::new(n, edges, items, lp, g.parity), sgn(k) * s0 * c));
    }
    out
}

fn cross_terms(g: &StableGraph, genus: u8) -> Vec<(StableGraph, i64)> {
    let mut out = vec![];
    let p = g.parity;
    let base = sgn(g.edges.len());
    let nn = g.n;
    let nb = g.next_block();
    for (i, &(v, it)) in g.items.iter().enumerate() {
        if g.is_crossed(v) {
            continue;
        }
        if it.is_slot() {
            let (s0, word) = to_front(&g.items, &[i], p);
            let mut items = vec![(nn, Item::Cross), (nn, it)];
            items.extend(word.into_iter().skip(1));
            out.push((StableGraph::new(g.n + 1, g.edges.clone(), items, g.leg_pairs.clone(), p), base * s0));
        } else if it == Item::Omega {
            let mut items = vec![(nn, Item::Cross), (nn, Item::Half(nb)), (v, Item::Half(nb))];
            items.extend(without(&g.items, &[i]));
            out.push((StableGraph::new(g.n + 1, g.edges.clone(), items, g.leg_pairs.clone(), p), -base));
        }
    }
    for v in 0..g.n {
        if g.half_edges(v) != 0 || g.is_crossed(v) {
            continue;
        }
        let at = g.items_at(v);
        if at.len() != 3 || !at.iter().all(|&i| g.items[i].1.is_slot()) {
            continue;
        }
        let (eps, word) = to_front(&g.items, &at, p);
        for rot in [[0, 1, 2], [1, 2, 0], [2, 0, 1]] {
            let (r, word) = to_front(&word, &rot, p);
            let Some((c, rest, lp)) = pair_front(word, g.leg_pairs.clone(), genus, p) else { continue };
            let left: Vec<usize> = (0..rest.len()).filter(|&j| rest[j].0 == v).collect();
            debug_assert_eq!(left.len(), 1);
            let (s1, rest) = to_front(&rest, &left, p);
            let mut items = vec![(v, Item::Cross)];
            items.extend(rest);
            out.push((StableGraph::new(g.n, g.edges.clone(), items, lp, p), base * eps * r * c * s1));
        }
    }
    out
}

/// Raw terms of the total differential `-d_c + d_cut (+ d_mul + d_×)`.
pub fn stable_terms(g: &StableGraph, spec: &StableSpec) -> Vec<(StableGraph, i64)> {
    let k = spec.family == Family::K;
    let mut raw: Vec<(StableGraph, i64)> = contract_terms(g).into_iter().map(|(h, c)| (h, -c)).collect();
    raw.extend(cut_terms(g, k));
    if k {
        raw.extend(mul_terms(g, spec.g));
        raw.extend(cross_terms(g, spec.g));
    }
    raw
}

pub fn d_stable(g: &StableGraph, spec: &StableSpec) -> FormalSum {
    let mut acc: BTreeMap<String, i64> = BTreeMap::new();
    for (h, c) in stable_terms(g, spec) {
        if c == 0 || !is_admissible_stable(&h, spec.family) {
            continue;
        }
        let cf = stable_canonical(&h);
        if cf.is_zero() {
            continue;
        }
        *acc.entry(cf.encoding).or_insert(0) += c * cf.sign as i64;
    }
    acc.retain(|_, v| *v != 0);
    FormalSum { terms: acc }
}

/// Matrix of `d: E -> E-1` on a stable basis.
pub fn assemble_stable(basis: &StableBasis, e: i64) -> Result<SparseIntMatrix, StableError> {
    let spec = basis.spec;
    let sources = basis.graphs(e);
    let targets = basis.index(e - 1);
    let cols: Vec<Result<Vec<(usize, usize, i64)>, StableError>> = sources
        .par_iter()
        .enumerate()
        .map(|(j, gr)| {
            let mut col = vec![];
            for (enc, c) in d_stable(gr, &spec).terms {
                let &i = targets.get(enc.as_str()).ok_or(StableError::MissingTarget(enc.clone()))?;
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
