//! Decorated graphs, gradings, admissibility and orientation signs.
//!
//! A graph is stored as an ordered edge list followed by an ordered decoration
//! list. Together they form the orientation word: edges are odd, a letter
//! `a_i`/`b_i` has the parity of `m`, `ω` is even, and the cross mark of a
//! crossed vertex is odd. Vertices carry no sign and edge directions are
//! normalized to `u <= v`.

mod canon;
pub mod oracle;

pub use canon::{canonical_form, leaves, CanonicalClass};

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_m(m: i64) -> Parity {
        if m.rem_euclid(2) == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `(-1)^m`.
    pub fn s(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            other => Err(format!("unknown parity `{other}`")),
        }
    }
}

/// A decoration. Indices of `A` and `B` are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Deco {
    Cross,
    A(u8),
    B(u8),
    Omega,
}

impl Deco {
    /// Sort key inside a vertex: cross mark first, then a1 < b1 < a2 < ..., then ω.
    pub fn code(self) -> u16 {
        match self {
            Deco::Cross => 0,
            Deco::A(i) => 2 * i as u16,
            Deco::B(i) => 2 * i as u16 + 1,
            Deco::Omega => u16::MAX,
        }
    }

    pub fn from_code(c: u16) -> Deco {
        match c {
            0 => Deco::Cross,
            u16::MAX => Deco::Omega,
            c if c % 2 == 0 => Deco::A((c / 2) as u8),
            c => Deco::B((c / 2) as u8),
        }
    }

    pub fn is_letter(self) -> bool {
        matches!(self, Deco::A(_) | Deco::B(_))
    }

    /// Koszul parity in the orientation word.
    pub fn parity(self, p: Parity) -> u8 {
        match self {
            Deco::Cross => 1,
            Deco::A(_) | Deco::B(_) => p.bit(),
            Deco::Omega => 0,
        }
    }

    /// Contribution to the decoration count `D`.
    pub fn degree_count(self) -> i64 {
        match self {
            Deco::Cross => 0,
            Deco::A(_) | Deco::B(_) => 1,
            Deco::Omega => 2,
        }
    }

    /// Torus weight: `a_i ↦ x_i`, `b_i ↦ x_i^{-1}`.
    pub fn torus(self) -> Option<(usize, i32)> {
        match self {
            Deco::A(i) => Some((i as usize - 1, 1)),
            Deco::B(i) => Some((i as usize - 1, -1)),
            _ => None,
        }
    }

    pub fn token(self) -> String {
        match self {
            Deco::Cross => "x".into(),
            Deco::A(i) => format!("a{i}"),
            Deco::B(i) => format!("b{i}"),
            Deco::Omega => "w".into(),
        }
    }

    pub fn parse(tok: &str) -> Option<Deco> {
        match tok {
            "x" => Some(Deco::Cross),
            "w" => Some(Deco::Omega),
            _ => {
                let (head, tail) = tok.split_at(1);
                let i: u8 = tail.parse().ok()?;
                if i == 0 {
                    return None;
                }
                match head {
                    "a" => Some(Deco::A(i)),
                    "b" => Some(Deco::B(i)),
                    _ => None,
                }
            }
        }
    }

    /// All `2g` letters in code order.
    pub fn letters(g: u8) -> Vec<Deco> {
        (1..=g).flat_map(|i| [Deco::A(i), Deco::B(i)]).collect()
    }
}

/// The pairing `⟨x, y⟩`: `⟨a_i, b_i⟩ = 1`, `⟨b_i, a_i⟩ = (-1)^m`.
pub fn pairing(x: Deco, y: Deco, p: Parity) -> i64 {
    match (x, y) {
        (Deco::A(i), Deco::B(j)) if i == j => 1,
        (Deco::B(i), Deco::A(j)) if i == j => p.s(),
        _ => 0,
    }
}

/// Coefficient `g_xy` of the reduced diagonal `Δ_1 = Σ g_xy x ⊗ y`.
pub fn diag_coeff(x: Deco, y: Deco, p: Parity) -> i64 {
    match (x, y) {
        (Deco::A(i), Deco::B(j)) if i == j => p.s(),
        (Deco::B(i), Deco::A(j)) if i == j => 1,
        _ => 0,
    }
}

/// The nonzero terms of `Δ_1`.
pub fn diag_terms(g: u8, p: Parity) -> Vec<(Deco, Deco, i64)> {
    (1..=g).flat_map(|i| [(Deco::A(i), Deco::B(i), p.s()), (Deco::B(i), Deco::A(i), 1)]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    Gc1Tp,
    Gc1,
    GcEx,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Gc1Tp, Variant::Gc1, Variant::GcEx];

    pub fn tadpoles(self) -> bool {
        self == Variant::Gc1Tp
    }

    pub fn omega(self) -> bool {
        self == Variant::GcEx
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Gc1Tp => "gc1tp",
            Variant::Gc1 => "gc1",
            Variant::GcEx => "gcex",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gc1tp" | "tp" => Ok(Variant::Gc1Tp),
            "gc1" => Ok(Variant::Gc1),
            "gcex" | "ex" => Ok(Variant::GcEx),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Connected,
    Ce,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Connected => "connected",
            Side::Ce => "ce",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "connected" | "conn" => Ok(Side::Connected),
            "ce" => Ok(Side::Ce),
            other => Err(format!("unknown side `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub w: i64,
    pub e_num: i64,
    pub e: i64,
    /// Non-crossed vertices.
    pub v: i64,
    pub crossed: i64,
    pub d: i64,
}

impl Grading {
    /// Chain-side degree `mW - E`.
    pub fn chain_degree(&self, m: i64) -> i64 {
        m * self.w - self.e_num
    }

    /// Degree of a connected generator on the Lie algebra side.
    pub fn gc_degree(&self, m: i64) -> i64 {
        1 - m * self.w + self.e_num
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub decos: Vec<(usize, Deco)>,
    pub parity: Parity,
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("relabeling is not an isomorphism onto the same structure")]
    NotIsomorphism,
    #[error("relabeling has wrong shape")]
    Shape,
    #[error("malformed encoding: {0}")]
    Encoding(String),
}

impl DecoratedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, decos: Vec<(usize, Deco)>, parity: Parity) -> Self {
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        DecoratedGraph { n, edges, decos, parity }
    }

    /// A lone crossed vertex carrying `letter`.
    pub fn crossed_letter(letter: Deco, parity: Parity) -> Self {
        DecoratedGraph::new(1, vec![], vec![(0, Deco::Cross), (0, letter)], parity)
    }

    pub fn is_crossed(&self, v: usize) -> bool {
        self.decos.iter().any(|&(u, d)| u == v && d == Deco::Cross)
    }

    pub fn crossed(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.decos.iter().filter(|(_, d)| *d == Deco::Cross).map(|&(v, _)| v).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn has_tadpole(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn has_omega(&self) -> bool {
        self.decos.iter().any(|&(_, d)| d == Deco::Omega)
    }

    /// Incident half-edges plus decoration entries (the cross mark excluded).
    pub fn valence(&self, v: usize) -> usize {
        let half: usize = self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum();
        let decs = self.decos.iter().filter(|&&(u, d)| u == v && d != Deco::Cross).count();
        half + decs
    }

    pub fn half_edges(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn decos_at(&self, v: usize) -> Vec<Deco> {
        self.decos.iter().filter(|&&(u, _)| u == v).map(|&(_, d)| d).collect()
    }

    /// Component index of every vertex, numbered by first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; self.n];
        let mut out = vec![0; self.n];
        let mut next = 0;
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    pub fn grading(&self) -> Grading {
        grading_of(self)
    }

    /// Orientation parity of the whole word (`mW - E` mod 2).
    pub fn word_parity(&self) -> u8 {
        let mut p = (self.edges.len() % 2) as u8;
        for &(_, d) in &self.decos {
            p ^= d.parity(self.parity);
        }
        p
    }

    /// Splits into connected components, each keeping the relative order of
    /// its edges and decorations.
    pub fn split_components(&self) -> Vec<DecoratedGraph> {
        let comp = self.components();
        let k = self.component_count();
        let mut local = vec![0usize; self.n];
        let mut sizes = vec![0usize; k];
        for v in 0..self.n {
            local[v] = sizes[comp[v]];
            sizes[comp[v]] += 1;
        }
        let mut out: Vec<DecoratedGraph> = sizes.iter().map(|&n| DecoratedGraph::new(n, vec![], vec![], self.parity)).collect();
        for &(u, v) in &self.edges {
            out[comp[u]].edges.push((local[u], local[v]));
        }
        for &(v, d) in &self.decos {
            out[comp[v]].decos.push((local[v], d));
        }
        out
    }

    /// Disjoint union; the word of `other` follows the word of `self` after
    /// moving its edges forward past the decorations of `self`.
    /// Returns the union together with the Koszul sign of that move.
    pub fn disjoint_union(&self, other: &DecoratedGraph) -> (DecoratedGraph, i64) {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        let mut decos = self.decos.clone();
        decos.extend(other.decos.iter().map(|&(v, d)| (v + off, d)));
        let mut dpar = 0u8;
        for &(_, d) in &self.decos {
            dpar ^= d.parity(self.parity);
        }
        let sign = if dpar == 1 && other.edges.len() % 2 == 1 { -1 } else { 1 };
        (DecoratedGraph::new(self.n + other.n, edges, decos, self.parity), sign)
    }

    pub fn to_encoding_unsorted(&self) -> String {
        encode(self)
    }

    pub fn from_encoding(enc: &str, parity: Parity) -> Result<DecoratedGraph, GraphError> {
        decode(enc, parity)
    }
}

impl fmt::Display for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode(self))
    }
}

/// Gradings: `W = 2(e - v) + D` over non-crossed vertices, each crossed vertex
/// adding the weight of its letter, `E = e - #crossed`.
pub fn grading_of(g: &DecoratedGraph) -> Grading {
    let crossed = g.crossed().len() as i64;
    let e = g.edges.len() as i64;
    let v = g.n as i64 - crossed;
    let d: i64 = g.decos.iter().map(|&(_, x)| x.degree_count()).sum();
    Grading { w: 2 * (e - v) + d, e_num: e - crossed, e, v, crossed, d }
}

/// Admissibility of a graph as a basis element of `(variant, side)`.
pub fn is_admissible(g: &DecoratedGraph, variant: Variant, side: Side) -> bool {
    if g.n == 0 {
        return false;
    }
    if g.has_tadpole() && !variant.tadpoles() {
        return false;
    }
    if g.has_omega() && !variant.omega() {
        return false;
    }
    for v in 0..g.n {
        let ds = g.decos_at(v);
        if ds.contains(&Deco::Cross) {
            if variant != Variant::GcEx {
                return false;
            }
            let letters = ds.iter().filter(|d| d.is_letter()).count();
            if ds.len() != 2 || letters != 1 || g.half_edges(v) != 0 {
                return false;
            }
        } else if g.valence(v) < 3 {
            return false;
        }
    }
    if side == Side::Connected && !g.is_connected() {
        return false;
    }
    true
}

/// A relabeling: `vertex[old] = new`, `edge[old] = new position`, optional
/// direction flips, and `deco[old] = new position`.
#[derive(Clone, Debug)]
pub struct Relabeling {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
    pub flips: Vec<bool>,
    pub deco: Vec<usize>,
}

impl Relabeling {
    pub fn identity(g: &DecoratedGraph) -> Relabeling {
        Relabeling {
            vertex: (0..g.n).collect(),
            edge: (0..g.edges.len()).collect(),
            flips: vec![false; g.edges.len()],
            deco: (0..g.decos.len()).collect(),
        }
    }

    pub fn apply(&self, g: &DecoratedGraph) -> Result<DecoratedGraph, GraphError> {
        if self.vertex.len() != g.n || self.edge.len() != g.edges.len() || self.deco.len() != g.decos.len() {
            return Err(GraphError::Shape);
        }
        if !is_perm(&self.vertex) || !is_perm(&self.edge) || !is_perm(&self.deco) {
            return Err(GraphError::Shape);
        }
        let mut edges = vec![(0, 0); g.edges.len()];
        for (i, &(u, v)) in g.edges.iter().enumerate() {
            let (a, b) = (self.vertex[u], self.vertex[v]);
            let flip = self.flips.get(i).copied().unwrap_or(false);
            let (a, b) = if flip { (b, a) } else { (a, b) };
            edges[self.edge[i]] = (a.min(b), a.max(b));
        }
        let mut decos = vec![(0, Deco::Omega); g.decos.len()];
        for (i, &(v, d)) in g.decos.iter().enumerate() {
            decos[self.deco[i]] = (self.vertex[v], d);
        }
        Ok(DecoratedGraph::new(g.n, edges, decos, g.parity))
    }
}

fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Koszul sign of moving item `i` to position `perm[i]`.
pub fn koszul_sign(perm: &[usize], parities: &[u8]) -> i64 {
    let mut odd = 0u32;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && parities[i] & parities[j] == 1 {
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

/// Sign by which a relabeling acts on the orientation. Fails unless the
/// relabeled graph has the same unordered structure as the input.
pub fn orientation_sign(g: &DecoratedGraph, r: &Relabeling) -> Result<i64, GraphError> {
    let h = r.apply(g)?;
    let mut e1 = g.edges.clone();
    let mut e2 = h.edges.clone();
    e1.sort_unstable();
    e2.sort_unstable();
    let key = |x: &(usize, Deco)| (x.0, x.1.code());
    let mut d1: Vec<_> = g.decos.iter().map(key).collect();
    let mut d2: Vec<_> = h.decos.iter().map(key).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if e1 != e2 || d1 != d2 {
        return Err(GraphError::NotIsomorphism);
    }
    let edge_par = vec![1u8; g.edges.len()];
    let deco_par: Vec<u8> = g.decos.iter().map(|&(_, d)| d.parity(g.parity)).collect();
    Ok(koszul_sign(&r.edge, &edge_par) * koszul_sign(&r.deco, &deco_par))
}

/// `v1;n;crossed;edges;decorations`, lists comma separated, edges `u-v`,
/// decorations `vertex:token` with tokens `x`, `a<i>`, `b<i>`, `w`.
pub fn encode(g: &DecoratedGraph) -> String {
    let crossed: Vec<String> = g.crossed().iter().map(|v| v.to_string()).collect();
    let edges: Vec<String> = g.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let decos: Vec<String> = g.decos.iter().map(|(v, d)| format!("{v}:{}", d.token())).collect();
    format!("v1;{};{};{};{}", g.n, crossed.join(","), edges.join(","), decos.join(","))
}

pub fn decode(enc: &str, parity: Parity) -> Result<DecoratedGraph, GraphError> {
    let bad = || GraphError::Encoding(enc.to_string());
    let parts: Vec<&str> = enc.split(';').collect();
    if parts.len() != 5 || parts[0] != "v1" {
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
    let mut edges = vec![];
    for e in list(parts[3]) {
        let (u, v) = e.split_once('-').ok_or_else(bad)?;
        let u: usize = u.parse().map_err(|_| bad())?;
        let v: usize = v.parse().map_err(|_| bad())?;
        if u >= n || v >= n {
            return Err(bad());
        }
        edges.push((u, v));
    }
    let mut decos = vec![];
    for d in list(parts[4]) {
        let (v, t) = d.split_once(':').ok_or_else(bad)?;
        let v: usize = v.parse().map_err(|_| bad())?;
        if v >= n {
            return Err(bad());
        }
        decos.push((v, Deco::parse(t).ok_or_else(bad)?));
    }
    let g = DecoratedGraph::new(n, edges, decos, parity);
    let crossed: Vec<String> = g.crossed().iter().map(|v| v.to_string()).collect();
    if crossed.join(",") != parts[2] {
        return Err(bad());
    }
    Ok(g)
}

#[cfg(test)]
mod tests;
