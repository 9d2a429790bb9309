//! Graded dimensions of Lie algebras given by generators and relations, and
//! the Hilbert series identity of a Koszul pair.
//!
//! A Lie element of weight `W` on `n` generators is stored inside the tensor
//! algebra as a sparse vector over the `n^W` words, reduced modulo a prime.
//! All generators share one parity, so a weight-`W` element has parity
//! `W·p`, and brackets are super brackets `[x,y] = xy - (-1)^{|x||y|} yx`.
//! The ideal generated by relations is spanned by iterated brackets with
//! generators, so every weight is one round of bracketing away from the
//! previous one.

use crate::graph::Parity;
use crate::linalg::PRIMES;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub dims: BTreeMap<i64, u64>,
    /// Parity of each weight piece.
    pub odd: BTreeMap<i64, bool>,
}

impl GradedDims {
    /// Dims whose weight-`W` piece has parity `W` times the generator parity.
    pub fn with_generator_parity(dims: impl IntoIterator<Item = (i64, u64)>, odd_generators: bool) -> Self {
        let mut out = GradedDims::default();
        for (w, d) in dims {
            out.dims.insert(w, d);
            out.odd.insert(w, odd_generators && w % 2 != 0);
        }
        out
    }

    pub fn get(&self, w: i64) -> u64 {
        self.dims.get(&w).copied().unwrap_or(0)
    }

    pub fn is_odd(&self, w: i64) -> bool {
        self.odd.get(&w).copied().unwrap_or(false)
    }
}

/// `FreeLie(V)/⟨R⟩` with `V` of dimension `n`, all of one parity, and `R` in
/// weight 2 given by coefficient vectors on the words `ij ↦ i·n + j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticPresentation {
    pub n: usize,
    pub odd: bool,
    pub relations: Vec<Vec<(usize, i64)>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LieError {
    #[error("{words} words in weight {weight} exceed the cap {cap}")]
    Cap { weight: usize, words: u64, cap: u64 },
    #[error("relation word index {0} out of range")]
    BadRelation(usize),
    #[error("relation in weight {0} is not a Lie element")]
    NotLie(usize),
    #[error("no two primes agreed on the dimensions")]
    NoConsensus,
}

/// Largest number of tensor words handled in one weight.
pub const WORD_CAP: u64 = 60_000;

type Vector = Vec<(u64, u64)>;

/// Row echelon form over `F_p` with rows keyed by leading word.
struct Echelon {
    p: u64,
    rows: HashMap<u64, Vector>,
    basis: Vec<Vector>,
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon { p, rows: HashMap::new(), basis: vec![] }
    }

    /// Remainder of `v` after reduction by the rows.
    fn reduce(&self, v: &Vector) -> BTreeMap<u64, u64> {
        let p = self.p;
        let mut acc: BTreeMap<u64, u64> = v.iter().copied().filter(|x| x.1 != 0).collect();
        while let Some((&lead, &c)) = acc.iter().find(|(k, _)| self.rows.contains_key(k)) {
            for &(k, x) in &self.rows[&lead] {
                let e = acc.entry(k).or_insert(0);
                *e = (*e + p - c * x % p) % p;
                if *e == 0 {
                    acc.remove(&k);
                }
            }
        }
        acc
    }

    fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; keeps it as a basis vector when independent.
    fn insert(&mut self, v: Vector) -> bool {
        let acc = self.reduce(&v);
        let Some((&lead, &c)) = acc.iter().next() else { return false };
        let f = inv(c, self.p);
        let row: Vector = acc.iter().map(|(&k, &x)| (k, x * f % self.p)).collect();
        self.rows.insert(lead, row);
        self.basis.push(v);
        true
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `[x_i, b]` for `b` of weight `w` (as words of length `w`).
fn bracket_gen(i: u64, b: &Vector, n: u64, w: u32, odd: bool, p: u64) -> Vector {
    let shift = n.pow(w);
    let sign_odd = odd && w % 2 == 1;
    let mut acc: BTreeMap<u64, u64> = BTreeMap::new();
    for &(word, c) in b {
        *acc.entry(i * shift + word).or_insert(0) += c;
        let back = if sign_odd { c } else { p - c };
        *acc.entry(word * n + i).or_insert(0) += back;
    }
    acc.into_iter().map(|(k, c)| (k, c % p)).filter(|x| x.1 != 0).collect()
}

/// Dims of `FreeLie(V)/⟨R⟩` over `F_p`, with relations of any weight.
fn quotient_dims_mod(n: usize, odd: bool, relations: &[(usize, Vec<(u64, i64)>)], wmax: usize, p: u64) -> Result<Vec<u64>, LieError> {
    let nn = n as u64;
    let red = |v: &[(u64, i64)]| -> Vector {
        let mut acc: BTreeMap<u64, u64> = BTreeMap::new();
        for &(k, c) in v {
            *acc.entry(k).or_insert(0) += c.rem_euclid(p as i64) as u64;
        }
        acc.into_iter().map(|(k, c)| (k, c % p)).filter(|x| x.1 != 0).collect()
    };
    let mut out = vec![0u64; wmax + 1];
    let mut lie = Echelon::new(p);
    for i in 0..nn {
        lie.insert(vec![(i, 1)]);
    }
    let mut ideal: Vec<Vector> = vec![];
    for w in 1..=wmax {
        let words = nn.checked_pow(w as u32).unwrap_or(u64::MAX);
        if words > WORD_CAP {
            return Err(LieError::Cap { weight: w, words, cap: WORD_CAP });
        }
        if w > 1 {
            let mut e = Echelon::new(p);
            for b in &lie.basis {
                for i in 0..nn {
                    e.insert(bracket_gen(i, b, nn, w as u32 - 1, odd, p));
                }
            }
            lie = e;
        }
        let mut e = Echelon::new(p);
        for b in &ideal {
            for i in 0..nn {
                e.insert(bracket_gen(i, b, nn, w as u32 - 1, odd, p));
            }
        }
        for (rw, r) in relations {
            if *rw == w {
                if r.iter().any(|&(k, _)| k >= words) {
                    return Err(LieError::BadRelation(r.iter().map(|x| x.0 as usize).max().unwrap_or(0)));
                }
                let r = red(r);
                if !lie.contains(&r) {
                    return Err(LieError::NotLie(w));
                }
                e.insert(r);
            }
        }
        ideal = e.basis;
        out[w] = (lie.dim() - ideal.len()) as u64;
    }
    Ok(out)
}

/// Dimensions agreed on by two primes from the pool.
fn quotient_dims(n: usize, odd: bool, relations: &[(usize, Vec<(u64, i64)>)], wmax: usize) -> Result<GradedDims, LieError> {
    let mut prev: Option<Vec<u64>> = None;
    for &p in PRIMES.iter().take(4) {
        let d = quotient_dims_mod(n, odd, relations, wmax, p)?;
        if prev.as_ref() == Some(&d) {
            return Ok(GradedDims::with_generator_parity((1..=wmax).map(|w| (w as i64, d[w])), odd));
        }
        prev = Some(d);
    }
    Err(LieError::NoConsensus)
}

pub fn free_lie_quotient_dims(pres: &QuadraticPresentation, wmax: usize) -> Result<GradedDims, LieError> {
    let rels: Vec<(usize, Vec<(u64, i64)>)> = pres.relations.iter().map(|r| (2, r.iter().map(|&(k, c)| (k as u64, c)).collect())).collect();
    for r in &pres.relations {
        if let Some(&(k, _)) = r.iter().find(|x| x.0 >= pres.n * pres.n) {
            return Err(LieError::BadRelation(k));
        }
    }
    quotient_dims(pres.n, pres.odd, &rels, wmax)
}

/// The super bracket `[x_i, x_j]` as a weight-2 vector.
pub fn bracket2(n: usize, i: usize, j: usize, odd: bool) -> Vec<(usize, i64)> {
    let sign = if odd { 1 } else { -1 };
    if i == j {
        return if odd { vec![(i * n + i, 2)] } else { vec![] };
    }
    vec![(i * n + j, 1), (j * n + i, sign)]
}

/// The one-relator presentation of `w_g`: generators `a_1, b_1, …` (as
/// `2k, 2k+1`) of parity `1 - m` and the relation `Σ_k [a_k, b_k]`.
pub fn wg_presentation(g: usize, parity: Parity) -> QuadraticPresentation {
    let n = 2 * g;
    let odd = parity == Parity::Even;
    let mut rel: BTreeMap<usize, i64> = BTreeMap::new();
    for k in 0..g {
        for (i, c) in bracket2(n, 2 * k, 2 * k + 1, odd) {
            *rel.entry(i).or_insert(0) += c;
        }
    }
    QuadraticPresentation { n, odd, relations: vec![rel.into_iter().filter(|x| x.1 != 0).collect()] }
}

/// Graded dims of the central extension `w_g^fr` by `c` in weight 2, where
/// the relation of `w_g` equals `(2 + (-1)^m 2g) c`.
pub fn wgfr_dims(g: usize, parity: Parity, wmax: usize) -> Result<GradedDims, LieError> {
    let pres = wg_presentation(g, parity);
    let k = 2 + parity.s() * 2 * g as i64;
    if k == 0 || g == 0 {
        // the relation holds on the nose and `c` is a free central summand
        let mut d = free_lie_quotient_dims(&pres, wmax)?;
        if wmax >= 2 {
            *d.dims.entry(2).or_insert(0) += 1;
        }
        return Ok(d);
    }
    // `c` is the relation itself, which becomes central
    let n = pres.n as u64;
    let r: Vec<(u64, i64)> = pres.relations[0].iter().map(|&(w, c)| (w as u64, c)).collect();
    let mut rels = vec![];
    for i in 0..n {
        let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
        for &(word, c) in &r {
            *acc.entry(i * n * n + word).or_insert(0) += c;
            // weight-2 elements are even, so the bracket is a commutator
            *acc.entry(word * n + i).or_insert(0) -= c;
        }
        rels.push((3, acc.into_iter().filter(|x| x.1 != 0).collect()));
    }
    quotient_dims(pres.n, pres.odd, &rels, wmax)
}

/// Hilbert series of `U(t)` through `s^wmax` by graded PBW: a polynomial
/// factor for odd pieces, a geometric one for even pieces.
pub fn pbw_series(t: &GradedDims, wmax: usize) -> Vec<i128> {
    let mut h = vec![0i128; wmax + 1];
    h[0] = 1;
    for (&w, &d) in &t.dims {
        if w < 1 || w as usize > wmax || d == 0 {
            continue;
        }
        let w = w as usize;
        let mut factor = vec![0i128; wmax + 1];
        let mut k = 0;
        while k * w <= wmax {
            factor[k * w] = if t.is_odd(w as i64) { binom(d as i128, k as i128) } else { binom(d as i128 + k as i128 - 1, k as i128) };
            k += 1;
        }
        h = mul_series(&h, &factor);
    }
    h
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return if k == 0 { 1 } else { 0 };
    }
    let mut r = 1i128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn mul_series(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len()];
    for i in 0..a.len() {
        for j in 0..a.len() - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// `h_{U(t)}(s) · h_A(-s) = 1` through `s^wmax`, with `A_0 = 1`.
pub fn koszul_identity_check(t: &GradedDims, a: &GradedDims, wmax: usize) -> bool {
    let h = pbw_series(t, wmax);
    let mut ha = vec![0i128; wmax + 1];
    ha[0] = 1;
    for w in 1..=wmax {
        let sign = if w % 2 == 1 { -1 } else { 1 };
        ha[w] = sign * a.get(w as i64) as i128;
    }
    let prod = mul_series(&h, &ha);
    prod[0] == 1 && prod[1..].iter().all(|&x| x == 0)
}

/// Dimension of the graded exterior square of a space with the given even
/// and odd parts.
pub fn super_ext2(even: u64, odd: u64) -> u64 {
    even * even.saturating_sub(1) / 2 + even * odd + odd * (odd + 1) / 2
}
