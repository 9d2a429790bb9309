//! Canonical labeling by color refinement plus exhaustive individualization.
//!
//! Every leaf of the search tree is a vertex ordering. The set of leaves is
//! invariant under isomorphism, so the least encoding over all leaves is a
//! canonical form, and two leaves with that encoding differ by an
//! automorphism.

use super::{encode, Deco, DecoratedGraph};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClass {
    pub encoding: String,
    /// `+1` or `-1` relating input to representative; `0` when the class vanishes.
    pub sign: i8,
    /// The canonical representative, in sorted word order.
    pub graph: DecoratedGraph,
}

impl CanonicalClass {
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

fn rank(sigs: &[Vec<u32>]) -> Vec<u32> {
    let mut sorted: Vec<&Vec<u32>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(&s).unwrap() as u32).collect()
}

fn count_distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn refine(colors: &mut Vec<u32>, adj: &[Vec<(usize, u32)>]) {
    let mut classes = count_distinct(colors);
    loop {
        let sigs: Vec<Vec<u32>> = (0..colors.len())
            .map(|v| {
                let mut nb: Vec<(u32, u32)> = adj[v].iter().map(|&(w, l)| (colors[w], l)).collect();
                nb.sort_unstable();
                let mut s = Vec::with_capacity(1 + 2 * nb.len());
                s.push(colors[v]);
                for (c, l) in nb {
                    s.push(c);
                    s.push(l);
                }
                s
            })
            .collect();
        let next = rank(&sigs);
        let k = count_distinct(&next);
        *colors = next;
        if k == classes {
            break;
        }
        classes = k;
    }
}

fn search(colors: Vec<u32>, adj: &[Vec<(usize, u32)>], out: &mut Vec<Vec<usize>>) {
    let n = colors.len();
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
    match target {
        None => {
            let mut order = vec![0; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c as usize] = v;
            }
            out.push(order);
        }
        Some(cell) => {
            for v in 0..n {
                if colors[v] as usize != cell {
                    continue;
                }
                let sigs: Vec<Vec<u32>> = (0..n).map(|w| vec![colors[w], (w != v) as u32]).collect();
                let mut c = rank(&sigs);
                refine(&mut c, adj);
                search(c, adj, out);
            }
        }
    }
}

/// All leaves of the individualization-refinement tree. `init` holds an
/// isomorphism-invariant key per vertex; `adj` lists labeled neighbors.
/// Each leaf is returned as `order[position] = vertex`.
pub fn leaves(init: &[Vec<u32>], adj: &[Vec<(usize, u32)>]) -> Vec<Vec<usize>> {
    if init.is_empty() {
        return vec![vec![]];
    }
    let mut colors = rank(init);
    refine(&mut colors, adj);
    let mut out = vec![];
    search(colors, adj, &mut out);
    out
}

type Key = (Vec<(usize, usize)>, Vec<(usize, u16)>);

/// Relabel by `pos`, sort the word, and return the key with its Koszul sign
/// (`0` if two identical odd items collide).
fn leaf_key(g: &DecoratedGraph, pos: &[usize]) -> (Key, i8) {
    let mut sign = 1i8;
    let mut edges: Vec<((usize, usize), usize)> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let (a, b) = (pos[u], pos[v]);
            ((a.min(b), a.max(b)), i)
        })
        .collect();
    edges.sort();
    for i in 0..edges.len() {
        if i + 1 < edges.len() && edges[i].0 == edges[i + 1].0 {
            sign = 0;
        }
        for j in i + 1..edges.len() {
            if edges[i].1 > edges[j].1 {
                sign = -sign;
            }
        }
    }
    let p = g.parity;
    let mut decos: Vec<((usize, u16), usize, u8)> =
        g.decos.iter().enumerate().map(|(i, &(v, d))| ((pos[v], d.code()), i, d.parity(p))).collect();
    decos.sort();
    for i in 0..decos.len() {
        if i + 1 < decos.len() && decos[i].0 == decos[i + 1].0 && decos[i].2 == 1 {
            sign = 0;
        }
        for j in i + 1..decos.len() {
            if decos[i].1 > decos[j].1 && decos[i].2 & decos[j].2 == 1 {
                sign = -sign;
            }
        }
    }
    ((edges.into_iter().map(|x| x.0).collect(), decos.into_iter().map(|x| x.0).collect()), sign)
}

pub(crate) fn vertex_invariants(g: &DecoratedGraph) -> (Vec<Vec<u32>>, Vec<Vec<(usize, u32)>>) {
    let mut init: Vec<Vec<u32>> = vec![vec![0, 0, 0]; g.n];
    let mut adj: Vec<Vec<(usize, u32)>> = vec![vec![]; g.n];
    for &(u, v) in &g.edges {
        if u == v {
            init[u][1] += 1;
        } else {
            init[u][2] += 1;
            init[v][2] += 1;
            adj[u].push((v, 0));
            adj[v].push((u, 0));
        }
    }
    let mut codes: Vec<Vec<u32>> = vec![vec![]; g.n];
    for &(v, d) in &g.decos {
        if d == Deco::Cross {
            init[v][0] = 1;
        }
        codes[v].push(d.code() as u32);
    }
    for v in 0..g.n {
        codes[v].sort_unstable();
        init[v].push(codes[v].len() as u32);
        init[v].extend(codes[v].iter().copied());
    }
    (init, adj)
}

/// Canonical class of a decorated graph.
pub fn canonical_form(g: &DecoratedGraph) -> CanonicalClass {
    let (init, adj) = vertex_invariants(g);
    let mut best: Option<(Key, i8)> = None;
    let mut zero = false;
    let mut clash = false;
    for order in leaves(&init, &adj) {
        let mut pos = vec![0; g.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let (key, sign) = leaf_key(g, &pos);
        if sign == 0 {
            zero = true;
        }
        match &best {
            None => best = Some((key, sign)),
            Some((bk, bs)) => {
                if key < *bk {
                    best = Some((key, sign));
                    clash = false;
                } else if key == *bk && sign != *bs {
                    clash = true;
                }
            }
        }
    }
    let ((edges, decos), sign) = best.expect("at least one leaf");
    let graph = DecoratedGraph::new(g.n, edges, decos.into_iter().map(|(v, c)| (v, Deco::from_code(c))).collect(), g.parity);
    CanonicalClass { encoding: encode(&graph), sign: if zero || clash { 0 } else { sign }, graph }
}
