use super::{encode_stable, koszul_excl, Item, StableGraph};
use crate::graph::leaves;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableClass {
    pub encoding: String,
    /// `+1` or `-1` relating input to representative; `0` when the class vanishes.
    pub sign: i8,
    pub graph: StableGraph,
}

impl StableClass {
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    edges: Vec<(usize, usize)>,
    crossed: Vec<usize>,
    omegas: Vec<usize>,
    blocks: Vec<(usize, usize)>,
    legs: Vec<(u8, usize)>,
}

fn invariants(g: &StableGraph) -> (Vec<Vec<u32>>, Vec<Vec<(usize, u32)>>) {
    let mut init: Vec<Vec<u32>> = vec![vec![0; 7]; g.n];
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
    let mut legs: Vec<Vec<u32>> = vec![vec![]; g.n];
    for (i, &(v, it)) in g.items.iter().enumerate() {
        match it {
            Item::Cross => init[v][0] = 1,
            Item::Omega => init[v][5] += 1,
            Item::Leg(l) => legs[v].push(l as u32),
            Item::Half(_) => {
                let j = g.partner(i).expect("unpaired half");
                let w = g.items[j].0;
                if w == v {
                    if i < j {
                        init[v][3] += 1;
                    }
                } else {
                    init[v][4] += 1;
                    adj[v].push((w, 1));
                }
            }
        }
    }
    for v in 0..g.n {
        legs[v].sort_unstable();
        init[v][6] = legs[v].len() as u32;
        init[v].extend(legs[v].iter().copied());
    }
    (init, adj)
}

fn leaf(g: &StableGraph, pos: &[usize]) -> (Key, i8) {
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
    // Target order: crosses, omegas, blocks (halves adjacent), legs by label.
    let mut keyed: Vec<((u8, usize, usize, usize), usize)> = vec![];
    for (i, &(v, it)) in g.items.iter().enumerate() {
        let k = match it {
            Item::Cross => (0, pos[v], 0, i),
            Item::Omega => (1, pos[v], 0, i),
            Item::Half(_) => {
                let j = g.partner(i).expect("unpaired half");
                let (a, b) = (pos[v], pos[g.items[j].0]);
                (2, a.min(b), a.max(b), i.min(j))
            }
            Item::Leg(l) => (3, l as usize, pos[v], i),
        };
        keyed.push((k, i));
    }
    keyed.sort();
    let mut perm = vec![0; g.items.len()];
    for (t, &(_, i)) in keyed.iter().enumerate() {
        perm[i] = t;
    }
    sign *= koszul_excl(&perm, &g.items, g.parity) as i8;
    let mut key = Key { edges: edges.into_iter().map(|x| x.0).collect(), crossed: vec![], omegas: vec![], blocks: vec![], legs: vec![] };
    let mut last_block = None;
    for ((kind, a, b, first), _) in keyed {
        match kind {
            0 => key.crossed.push(a),
            1 => key.omegas.push(a),
            2 => {
                if last_block != Some(first) {
                    key.blocks.push((a, b));
                    last_block = Some(first);
                }
            }
            _ => key.legs.push((a as u8, b)),
        }
    }
    (key, sign)
}

/// Canonical class of a two-colored graph.
pub fn stable_canonical(g: &StableGraph) -> StableClass {
    let (init, adj) = invariants(g);
    let mut best: Option<(Key, i8)> = None;
    let mut zero = false;
    let mut clash = false;
    for order in leaves(&init, &adj) {
        let mut pos = vec![0; g.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let (key, sign) = leaf(g, &pos);
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
    let (key, sign) = best.expect("at least one leaf");
    let mut items = vec![];
    items.extend(key.crossed.iter().map(|&v| (v, Item::Cross)));
    items.extend(key.omegas.iter().map(|&v| (v, Item::Omega)));
    for (k, &(a, b)) in key.blocks.iter().enumerate() {
        items.push((a, Item::Half(k as u16)));
        items.push((b, Item::Half(k as u16)));
    }
    items.extend(key.legs.iter().map(|&(l, v)| (v, Item::Leg(l))));
    let mut leg_pairs = g.leg_pairs.clone();
    leg_pairs.sort_unstable();
    let graph = StableGraph::new(g.n, key.edges, items, leg_pairs, g.parity);
    StableClass { encoding: encode_stable(&graph), sign: if zero || clash { 0 } else { sign }, graph }
}
