//! Reference canonicalization by trying every vertex permutation. Slow,
//! and kept only to check [`canonical_form`](super::canonical_form).

use super::{encode, koszul_sign, Deco, DecoratedGraph};

pub fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in perms(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Sorted edges and `(vertex, letter code)` pairs of a relabeled graph.
pub type BKey = (Vec<(usize, usize)>, Vec<(usize, u16)>);

/// Relabel by `sigma` and sort, matching equal items in order of appearance.
/// Returns (key, encoding, sign of the sort, identical odd items present).
fn brute_relabel(g: &DecoratedGraph, sigma: &[usize]) -> (BKey, String, i64, bool) {
    let mut edges: Vec<((usize, usize), usize)> =
        g.edges.iter().enumerate().map(|(i, &(u, v))| ((sigma[u].min(sigma[v]), sigma[u].max(sigma[v])), i)).collect();
    edges.sort();
    let mut eperm = vec![0; edges.len()];
    for (new, &(_, old)) in edges.iter().enumerate() {
        eperm[old] = new;
    }
    let mut decos: Vec<((usize, u16), usize)> = g.decos.iter().enumerate().map(|(i, &(v, d))| ((sigma[v], d.code()), i)).collect();
    decos.sort();
    let mut dperm = vec![0; decos.len()];
    for (new, &(_, old)) in decos.iter().enumerate() {
        dperm[old] = new;
    }
    let dpar: Vec<u8> = g.decos.iter().map(|&(_, d)| d.parity(g.parity)).collect();
    let sign = koszul_sign(&eperm, &vec![1; eperm.len()]) * koszul_sign(&dperm, &dpar);
    let dup_edge = edges.windows(2).any(|w| w[0].0 == w[1].0);
    let dup_deco = decos.windows(2).any(|w| w[0].0 == w[1].0 && Deco::from_code(w[0].0 .1).parity(g.parity) == 1);
    let h = DecoratedGraph::new(
        g.n,
        edges.iter().map(|x| x.0).collect(),
        decos.iter().map(|x| (x.0 .0, Deco::from_code(x.0 .1))).collect(),
        g.parity,
    );
    let key = (edges.iter().map(|x| x.0).collect(), decos.iter().map(|x| x.0).collect());
    (key, encode(&h), sign, dup_edge || dup_deco)
}

/// Oracle for a proposed representative: among all vertex permutations that
/// relabel `g` onto `target`, the common sign (0 on disagreement or identical
/// odd items); `None` when `target` is not a relabeling of `g`.
pub fn brute_sign_at(g: &DecoratedGraph, target: &str) -> Option<i8> {
    let mut found: Option<i64> = None;
    let mut zero = false;
    for sigma in perms(g.n) {
        let (_, enc, sign, dup) = brute_relabel(g, &sigma);
        zero |= dup;
        if enc == target {
            match found {
                None => found = Some(sign),
                Some(s) if s != sign => zero = true,
                _ => {}
            }
        }
    }
    found.map(|s| if zero { 0 } else { s as i8 })
}

/// Oracle: least encoding over all vertex permutations; zero iff an identical
/// odd pair exists or two minimal permutations disagree in sign.
pub fn brute_canonical(g: &DecoratedGraph) -> (String, i8) {
    let mut best: Option<(BKey, String, i64)> = None;
    let mut zero = false;
    let mut clash = false;
    for sigma in perms(g.n) {
        let (key, enc, sign, dup) = brute_relabel(g, &sigma);
        zero |= dup;
        match &best {
            None => best = Some((key, enc, sign)),
            Some((b, _, s)) => {
                if key < *b {
                    best = Some((key, enc, sign));
                    clash = false;
                } else if key == *b && sign != *s {
                    clash = true;
                }
            }
        }
    }
    let (_, enc, s) = best.unwrap();
    (enc, if zero || clash { 0 } else { s as i8 })
}
