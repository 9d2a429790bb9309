use crate::enumerate::ChainBasis;
use crate::graph::DecoratedGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// A Laurent polynomial in `x_1..x_g` with integer coefficients; exponent
/// vectors are the keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualCharacter {
    pub g: usize,
    pub terms: BTreeMap<Vec<i32>, i64>,
}

impl VirtualCharacter {
    pub fn zero(g: usize) -> Self {
        VirtualCharacter { g, terms: BTreeMap::new() }
    }

    pub fn one(g: usize) -> Self {
        let mut c = Self::zero(g);
        c.add_term(vec![0; g], 1);
        c
    }

    /// The defining representation `x_1 + x_1^{-1} + … + x_g + x_g^{-1}`.
    pub fn defining(g: usize) -> Self {
        let mut c = Self::zero(g);
        for i in 0..g {
            for s in [1, -1] {
                let mut w = vec![0; g];
                w[i] = s;
                c.add_term(w, 1);
            }
        }
        c
    }

    pub fn add_term(&mut self, w: Vec<i32>, c: i64) {
        debug_assert_eq!(w.len(), self.g);
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `x = (1, …, 1)`, the (virtual) dimension.
    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn coeff(&self, w: &[i32]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(other, -1)
    }

    pub fn axpy(&self, other: &Self, k: i64) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::zero(self.g).axpy(self, k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let w: Vec<i32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(w).or_insert(0) += x * y;
            }
        }
        acc.retain(|_, v| *v != 0);
        VirtualCharacter { g: self.g, terms: acc }
    }

    /// Adams operation `ψ^k`: `x_i ↦ x_i^k`.
    pub fn adams(&self, k: i32) -> Self {
        let terms = self.terms.iter().map(|(w, &c)| (w.iter().map(|x| x * k).collect(), c)).collect();
        VirtualCharacter { g: self.g, terms }
    }

    fn exact_div(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, &c)| {
                assert_eq!(c % k, 0, "inexact division of a character");
                (w.clone(), c / k)
            })
            .collect();
        VirtualCharacter { g: self.g, terms }
    }

    /// `Λ^k` (or `S^k` when `sym`) by Newton's identities.
    fn power(&self, k: usize, sym: bool) -> Self {
        let mut e = vec![Self::one(self.g)];
        for n in 1..=k {
            let mut acc = Self::zero(self.g);
            for i in 1..=n {
                let sign = if sym || i % 2 == 1 { 1 } else { -1 };
                acc = acc.axpy(&e[n - i].mul(&self.adams(i as i32)), sign);
            }
            e.push(acc.exact_div(n as i64));
        }
        e.pop().unwrap()
    }

    pub fn exterior_power(&self, k: usize) -> Self {
        self.power(k, false)
    }

    pub fn symmetric_power(&self, k: usize) -> Self {
        self.power(k, true)
    }

    /// Graded-symmetric power: exterior for odd elements, symmetric for even.
    pub fn super_power(&self, k: usize, odd: bool) -> Self {
        self.power(k, !odd)
    }

    /// Invariance under signed permutations of the variables.
    pub fn is_symmetric(&self) -> bool {
        let mut seen: BTreeMap<Vec<i32>, (i64, u64)> = BTreeMap::new();
        for (w, &c) in &self.terms {
            let mut key: Vec<i32> = w.iter().map(|x| x.abs()).collect();
            key.sort_unstable_by(|a, b| b.cmp(a));
            let e = seen.entry(key).or_insert((c, 0));
            if e.0 != c {
                return false;
            }
            e.1 += 1;
        }
        seen.iter().all(|(k, &(_, n))| n == super::orbit_size(k))
    }
}

fn graph_weight(gr: &DecoratedGraph, g: usize) -> Vec<i32> {
    let mut w = vec![0; g];
    for &(_, d) in &gr.decos {
        if let Some((i, s)) = d.torus() {
            w[i] += s;
        }
    }
    w
}

/// Torus character of one stratum. Each basis class has a fixed multiset of
/// letters, so it is a weight vector.
pub fn chain_character(basis: &ChainBasis, e: i64) -> VirtualCharacter {
    let g = basis.spec.g as usize;
    let weights: Vec<Vec<i32>> = basis.graphs(e).par_iter().map(|gr| graph_weight(gr, g)).collect();
    let mut acc: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
    for w in weights {
        *acc.entry(w).or_insert(0) += 1;
    }
    VirtualCharacter { g, terms: acc }
}

/// `Σ_E (-1)^E` times the stratum characters.
pub fn equivariant_euler(basis: &ChainBasis) -> VirtualCharacter {
    let mut out = VirtualCharacter::zero(basis.spec.g as usize);
    for &e in basis.strata.keys() {
        out = out.axpy(&chain_character(basis, e), if e.rem_euclid(2) == 0 { 1 } else { -1 });
    }
    out
}
