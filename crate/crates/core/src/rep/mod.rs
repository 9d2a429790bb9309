//! Characters of `OSp_g`: `Sp(2g)` when `m` is odd and `O(g,g)` when `m` is
//! even.
//!
//! Weights are written in the `ε`-basis, so a highest weight is a partition
//! with at most `g` parts: `λ_k` is `(1,…,1,0,…)` with `k` ones, and for the
//! orthogonal group `jλ_1 + kλ_2` is the two-row diagram `(j+k, k)`.
//! Characters are Laurent polynomials in the torus variables `x_1..x_g`.
//!
//! Both groups are handled with the same Weyl group, signed permutations.
//! For `O(g,g)` this is right because the reflection in the last coordinate
//! lies in `O` but not in `SO`; an `O`-irreducible whose diagram has exactly
//! `g` rows restricts to two `SO`-irreducibles `λ` and `σλ`, and its
//! dimension doubles. Diagrams of `O` that differ by a twist with the
//! determinant are not told apart.

mod character;
mod invariants;

pub use character::{chain_character, equivariant_euler, VirtualCharacter};
pub use invariants::{invariant_dim, matching_count};

use crate::graph::Parity;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    Sp,
    O,
}

impl Group {
    pub fn for_parity(p: Parity) -> Group {
        match p {
            Parity::Odd => Group::Sp,
            Parity::Even => Group::O,
        }
    }

    /// Positive roots of type `C_g` or `D_g`.
    pub fn positive_roots(self, g: usize) -> Vec<Vec<i32>> {
        let mut out = vec![];
        for i in 0..g {
            for j in i + 1..g {
                for s in [-1, 1] {
                    let mut r = vec![0; g];
                    r[i] = 1;
                    r[j] = s;
                    out.push(r);
                }
            }
            if self == Group::Sp {
                let mut r = vec![0; g];
                r[i] = 2;
                out.push(r);
            }
        }
        out
    }

    pub fn rho(self, g: usize) -> Vec<i32> {
        let top = match self {
            Group::Sp => g as i32,
            Group::O => g as i32 - 1,
        };
        (0..g as i32).map(|i| top - i).collect()
    }

    /// Dominant representative under the Weyl group of the root system
    /// (not the signed permutations, for `D_g`).
    fn root_dominant(self, w: &[i32]) -> Vec<i32> {
        let mut v: Vec<i32> = w.iter().map(|x| x.abs()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        if self == Group::O && !v.is_empty() {
            let negatives = w.iter().filter(|&&x| x < 0).count();
            let last = v.len() - 1;
            if negatives % 2 == 1 && !w.contains(&0) {
                v[last] = -v[last];
            }
        }
        v
    }

    /// Whether `λ - μ` is a nonnegative integer combination of simple roots.
    fn below(self, lambda: &[i32], mu: &[i32]) -> bool {
        let g = lambda.len();
        let d: Vec<i32> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        let mut partial = vec![0; g + 1];
        for i in 0..g {
            partial[i + 1] = partial[i] + d[i];
        }
        match self {
            Group::Sp => (1..=g).all(|k| partial[k] >= 0) && partial[g] % 2 == 0,
            Group::O => {
                if g == 1 {
                    return d[0] == 0;
                }
                (1..=g - 2).all(|k| partial[k] >= 0) && partial[g] >= 0 && partial[g] % 2 == 0 && partial[g - 1] - d[g - 1] >= 0
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Group::Sp => "Sp",
            Group::O => "O",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HighestWeight {
    pub group: Group,
    /// Nonincreasing nonnegative `ε`-coordinates, trailing zeros dropped.
    pub parts: Vec<u32>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RepError {
    #[error("weight {weight} needs rank {needed}, have g = {g}")]
    Rank { weight: String, needed: usize, g: usize },
    #[error("character is not invariant under signed permutations")]
    NotSymmetric,
    #[error("character lives on {got} torus variables, expected {expected}")]
    Torus { got: usize, expected: usize },
    #[error("brute-force space of dimension {0} exceeds the cap")]
    Cap(usize),
}

impl HighestWeight {
    pub fn new(group: Group, mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        HighestWeight { group, parts }
    }

    pub fn zero(group: Group) -> Self {
        HighestWeight { group, parts: vec![] }
    }

    /// `Σ c_k λ_k` from coefficients `c_1, c_2, …`.
    pub fn from_fundamental(group: Group, coeffs: &[u32]) -> Self {
        let parts = (0..coeffs.len()).map(|i| coeffs[i..].iter().sum()).collect();
        HighestWeight::new(group, parts)
    }

    /// `λ_k`.
    pub fn fundamental(group: Group, k: usize) -> Self {
        HighestWeight::new(group, vec![1; k])
    }

    pub fn coefficients(&self) -> Vec<u32> {
        (0..self.parts.len()).map(|i| self.parts[i] - self.parts.get(i + 1).copied().unwrap_or(0)).collect()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    fn padded(&self, g: usize) -> Result<Vec<i32>, RepError> {
        if self.parts.len() > g {
            return Err(RepError::Rank { weight: self.to_string(), needed: self.parts.len(), g });
        }
        let mut v: Vec<i32> = self.parts.iter().map(|&x| x as i32).collect();
        v.resize(g, 0);
        Ok(v)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| if c == 1 { format!("λ{}", i + 1) } else { format!("{c}λ{}", i + 1) })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(x, y)| *x as i64 * *y as i64).sum()
}

/// Dimension of the irreducible representation with highest weight `λ`.
pub fn weyl_dim(lambda: &HighestWeight, g: usize) -> Result<u128, RepError> {
    let l = lambda.padded(g)?;
    let group = lambda.group;
    let rho = group.rho(g);
    let lr: Vec<i32> = l.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in group.positive_roots(g) {
        num *= dot(&lr, &a);
        den *= dot(&rho, &a);
    }
    let mut d = num / den;
    if group == Group::O && lambda.rows() == g && g > 0 {
        d *= 2;
    }
    debug_assert!(!d.is_zero());
    Ok(d.to_u128().expect("dimension fits"))
}

/// Candidate dominant weights of the root system lying below `λ`.
fn dominant_below(group: Group, l: &[i32]) -> Vec<Vec<i32>> {
    let g = l.len();
    let top = l.first().copied().unwrap_or(0);
    let total: i32 = l.iter().sum();
    let mut out = vec![];
    fn go(i: usize, max: i32, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>, g: usize) {
        if i == g {
            out.push(cur.clone());
            return;
        }
        for x in 0..=max.min(left) {
            cur.push(x);
            go(i + 1, x, left - x, cur, out, g);
            cur.pop();
        }
    }
    let mut parts = vec![];
    go(0, top, total, &mut vec![], &mut parts, g);
    for p in parts {
        if group == Group::O && g > 0 && p[g - 1] > 0 {
            let mut q = p.clone();
            q[g - 1] = -q[g - 1];
            if group.below(l, &q) {
                out.push(q);
            }
        }
        if group.below(l, &p) {
            out.push(p);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Freudenthal's formula: multiplicities of the dominant weights (for the
/// root system's own Weyl group) of the connected group's irreducible.
fn root_multiplicities(group: Group, l: &[i32]) -> BTreeMap<Vec<i32>, i64> {
    let g = l.len();
    let rho = group.rho(g);
    let roots = group.positive_roots(g);
    let lr: Vec<i32> = l.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let norm_lr = dot(&lr, &lr);
    let bound = l.first().copied().unwrap_or(0);
    let mut mult: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
    for mu in dominant_below(group, l) {
        if mu == l {
            mult.insert(mu, 1);
            continue;
        }
        let mr: Vec<i32> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let denom = norm_lr - dot(&mr, &mr);
        let mut num = 0i64;
        for a in &roots {
            for k in 1..=(2 * bound + 2) {
                let nu: Vec<i32> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                if nu.iter().any(|x| x.abs() > bound) {
                    break;
                }
                let m = mult.get(&group.root_dominant(&nu)).copied().unwrap_or(0);
                num += m * dot(&nu, a);
            }
        }
        let num = 2 * num;
        assert!(denom > 0 && num % denom == 0, "Freudenthal step not exact at {mu:?}");
        if num != 0 {
            mult.insert(mu, num / denom);
        }
    }
    mult
}

/// Weight multiplicities of the irreducible `λ` at partitions, i.e. at
/// weights dominant for signed permutations.
pub fn dominant_multiplicities(lambda: &HighestWeight, g: usize) -> Result<BTreeMap<Vec<i32>, i64>, RepError> {
    let l = lambda.padded(g)?;
    let group = lambda.group;
    let m = root_multiplicities(group, &l);
    let doubled = group == Group::O && lambda.rows() == g && g > 0;
    let mut out = BTreeMap::new();
    for (mu, c) in &m {
        if mu.iter().any(|&x| x < 0) {
            continue;
        }
        let mut c = *c;
        if doubled {
            let mut s = mu.clone();
            s[g - 1] = -s[g - 1];
            c += m.get(&group.root_dominant(&s)).copied().unwrap_or(0);
        }
        if c != 0 {
            out.insert(mu.clone(), c);
        }
    }
    Ok(out)
}

/// Signed permutations of `mu`, each once.
pub fn orbit(mu: &[i32]) -> Vec<Vec<i32>> {
    let mut abs: Vec<i32> = mu.iter().map(|x| x.abs()).collect();
    abs.sort_unstable();
    let mut perms = vec![];
    loop {
        perms.push(abs.clone());
        // next lexicographic permutation
        let n = abs.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| abs[i] < abs[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| abs[j] > abs[i]).unwrap();
        abs.swap(i, j);
        abs[i + 1..].reverse();
    }
    let mut out = vec![];
    for p in perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0..(1u32 << nz.len()) {
            let mut q = p.clone();
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    q[i] = -q[i];
                }
            }
            out.push(q);
        }
    }
    out
}

/// Number of signed permutations of `mu`.
pub fn orbit_size(mu: &[i32]) -> u64 {
    let mut counts: BTreeMap<i32, u64> = BTreeMap::new();
    for x in mu {
        *counts.entry(x.abs()).or_insert(0) += 1;
    }
    let fact = |n: u64| (1..=n).product::<u64>();
    let perms = counts.values().fold(fact(mu.len() as u64), |acc, &c| acc / fact(c));
    let nonzero = mu.iter().filter(|&&x| x != 0).count() as u32;
    perms << nonzero
}

/// Full character of the irreducible `λ`.
pub fn character(lambda: &HighestWeight, g: usize) -> Result<VirtualCharacter, RepError> {
    let mut chi = VirtualCharacter::zero(g);
    for (mu, c) in dominant_multiplicities(lambda, g)? {
        for w in orbit(&mu) {
            chi.add_term(w, c);
        }
    }
    Ok(chi)
}

/// Expansion of a Weyl-symmetric character into irreducibles, by peeling
/// off the lexicographically largest dominant weight.
pub fn decompose(chi: &VirtualCharacter, group: Group) -> Result<Vec<(HighestWeight, i64)>, RepError> {
    if !chi.is_symmetric() {
        return Err(RepError::NotSymmetric);
    }
    let g = chi.g;
    let mut rest: BTreeMap<Vec<i32>, i64> = chi.terms.iter().filter(|(w, _)| is_partition(w)).map(|(w, &c)| (w.clone(), c)).collect();
    let mut out = vec![];
    while let Some((top, &c)) = rest.iter().next_back() {
        let top = top.clone();
        let lam = HighestWeight::new(group, top.iter().map(|&x| x as u32).collect());
        for (mu, m) in dominant_multiplicities(&lam, g)? {
            let e = rest.entry(mu.clone()).or_insert(0);
            *e -= c * m;
            if *e == 0 {
                rest.remove(&mu);
            }
        }
        out.push((lam, c));
    }
    out.sort();
    Ok(out)
}

fn is_partition(w: &[i32]) -> bool {
    w.iter().all(|&x| x >= 0) && w.windows(2).all(|p| p[0] >= p[1])
}

/// Parses `0`, `λ3`, `2λ2+λ4`, also with `l` for `λ` and `_` allowed.
pub fn parse_weight(group: Group, s: &str) -> Option<HighestWeight> {
    let s = s.replace(' ', "").replace('λ', "l").replace('_', "");
    if s == "0" {
        return Some(HighestWeight::zero(group));
    }
    let mut coeffs: Vec<u32> = vec![];
    for term in s.split('+') {
        let (c, k) = term.split_once('l')?;
        let c: u32 = if c.is_empty() { 1 } else { c.parse().ok()? };
        let k: usize = k.parse().ok()?;
        if k == 0 {
            return None;
        }
        if coeffs.len() < k {
            coeffs.resize(k, 0);
        }
        coeffs[k - 1] += c;
    }
    Some(HighestWeight::from_fundamental(group, &coeffs))
}

#[cfg(test)]
mod tests;
