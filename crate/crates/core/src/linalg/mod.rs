//! Exact ranks of sparse integer matrices.

mod bareiss;
mod matrix;

pub use bareiss::rank_fraction_free;
pub use matrix::SparseIntMatrix;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

/// Primes just below `2^31`.
pub const PRIMES: [u64; 16] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497, 2147483489, 2147483477, 2147483423,
    2147483399, 2147483353, 2147483323, 2147483269, 2147483249,
];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// `a - f * b` on sorted sparse rows mod `p`.
fn axpy(a: &[(u32, u64)], f: u64, b: &[(u32, u64)], p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nf = (p - f) % p;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, nf * b[j].1 % p));
            j += 1;
        } else {
            let v = (a[i].1 + nf * b[j].1) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `F_p` by sparse elimination. Pivot rows are taken shortest
/// first, and within a row the entry whose column is least populated.
pub fn rank_modp(m: &SparseIntMatrix, p: u64) -> usize {
    assert!(p > 1 << 30, "prime too small");
    let mut rows: Vec<Vec<(u32, u64)>> = vec![vec![]; m.rows];
    for &(r, c, v) in &m.entries {
        let x = reduce(v, p);
        if x != 0 {
            rows[r].push((c as u32, x));
        }
    }
    for r in rows.iter_mut() {
        r.sort_unstable();
    }
    let mut col_rows: Vec<Vec<usize>> = vec![vec![]; m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].push(i);
        }
    }
    let mut alive = vec![true; m.rows];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i))).collect();
    let mut rank = 0;
    while let Some(Reverse((len, i))) = heap.pop() {
        if !alive[i] || rows[i].len() != len {
            continue;
        }
        if rows[i].is_empty() {
            alive[i] = false;
            continue;
        }
        alive[i] = false;
        rank += 1;
        let pivot = std::mem::take(&mut rows[i]);
        let &(pc, pv) = pivot.iter().min_by_key(|(c, _)| (col_rows[*c as usize].len(), *c)).unwrap();
        let inv = inv_mod(pv, p);
        let users = std::mem::take(&mut col_rows[pc as usize]);
        for j in users {
            if !alive[j] {
                continue;
            }
            let Ok(pos) = rows[j].binary_search_by_key(&pc, |x| x.0) else {
                continue;
            };
            let f = rows[j][pos].1 * inv % p;
            let old: Vec<u32> = rows[j].iter().map(|x| x.0).collect();
            let new = axpy(&rows[j], f, &pivot, p);
            for &(c, _) in &new {
                if old.binary_search(&c).is_err() {
                    col_rows[c as usize].push(j);
                }
            }
            rows[j] = new;
            if rows[j].is_empty() {
                alive[j] = false;
            } else {
                heap.push(Reverse((rows[j].len(), j)));
            }
        }
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMethod {
    FractionFree,
    ModularConsensus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub primes_used: Vec<u64>,
    /// A fraction-free pass agreed with the modular rank.
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RankOptions {
    pub seed: u64,
    /// Matrices with at most this many nonzeros are also ranked fraction-free.
    pub certify_nnz: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { seed: 0x5eed, certify_nnz: 2000 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RankError {
    #[error("prime pool exhausted without two agreeing ranks: {0:?}")]
    NoConsensus(Vec<(u64, usize)>),
}

/// Rank over the rationals by modular consensus over a pool of primes.
pub fn rank_exact_with(m: &SparseIntMatrix, opts: &RankOptions) -> Result<RankResult, RankError> {
    rank_with_pool(m, opts, &PRIMES)
}

pub fn rank_exact(m: &SparseIntMatrix) -> Result<RankResult, RankError> {
    rank_exact_with(m, &RankOptions::default())
}

/// Consensus over an explicit prime pool: primes are drawn in seeded random
/// order until the largest rank seen so far has been seen twice. A rank mod
/// `p` never exceeds the rational rank, so a bad prime only lowers it.
pub fn rank_with_pool(m: &SparseIntMatrix, opts: &RankOptions, pool: &[u64]) -> Result<RankResult, RankError> {
    if m.is_zero() {
        return Ok(RankResult { rank: 0, method: RankMethod::FractionFree, primes_used: vec![], certified: true });
    }
    let mut order = pool.to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
    let mut seen: Vec<(u64, usize)> = vec![];
    let mut consensus = None;
    for &p in &order {
        let r = rank_modp(m, p);
        seen.push((p, r));
        let best = seen.iter().map(|x| x.1).max().unwrap();
        if seen.iter().filter(|x| x.1 == best).count() >= 2 {
            consensus = Some(best);
            break;
        }
    }
    let Some(rank) = consensus else {
        return Err(RankError::NoConsensus(seen));
    };
    let primes_used = seen.iter().map(|x| x.0).collect();
    if m.nnz() <= opts.certify_nnz {
        let ff = rank_fraction_free(m);
        if ff != rank {
            return Ok(RankResult { rank: ff, method: RankMethod::FractionFree, primes_used, certified: true });
        }
        return Ok(RankResult { rank, method: RankMethod::ModularConsensus, primes_used, certified: true });
    }
    Ok(RankResult { rank, method: RankMethod::ModularConsensus, primes_used, certified: false })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDims {
    pub e: i64,
    pub dim: usize,
    /// Rank of `d: C_E -> C_{E-1}`.
    pub rank_out: usize,
    pub homology: usize,
}

/// Per-stratum chain and homology dimensions of one complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub label: String,
    pub w: i64,
    /// Degrees are `1 - mW + E` when set, else `mW - E`.
    pub lie_side: bool,
    pub strata: Vec<StratumDims>,
    pub certified: bool,
}

impl DimReport {
    /// Builds a report from stratum dimensions and the ranks of `d_E: C_E -> C_{E-1}`.
    pub fn from_ranks(
        label: String,
        w: i64,
        lie_side: bool,
        dims: &BTreeMap<i64, usize>,
        ranks: &BTreeMap<i64, usize>,
        certified: bool,
    ) -> DimReport {
        let strata = dims
            .iter()
            .map(|(&e, &dim)| {
                let out = ranks.get(&e).copied().unwrap_or(0);
                let inc = ranks.get(&(e + 1)).copied().unwrap_or(0);
                assert!(out + inc <= dim, "ranks exceed dimension at E={e}");
                StratumDims { e, dim, rank_out: out, homology: dim - out - inc }
            })
            .collect();
        DimReport { label, w, lie_side, strata, certified }
    }

    pub fn homology(&self, e: i64) -> usize {
        self.strata.iter().find(|s| s.e == e).map_or(0, |s| s.homology)
    }

    pub fn total_homology(&self) -> usize {
        self.strata.iter().map(|s| s.homology).sum()
    }

    pub fn nonzero_homology(&self) -> Vec<(i64, usize)> {
        self.strata.iter().filter(|s| s.homology > 0).map(|s| (s.e, s.homology)).collect()
    }

    pub fn euler_chain(&self) -> i64 {
        self.strata.iter().map(|s| if s.e.rem_euclid(2) == 0 { s.dim as i64 } else { -(s.dim as i64) }).sum()
    }

    pub fn euler_homology(&self) -> i64 {
        self.strata.iter().map(|s| if s.e.rem_euclid(2) == 0 { s.homology as i64 } else { -(s.homology as i64) }).sum()
    }

    pub fn degree(&self, e: i64, m: i64) -> i64 {
        if self.lie_side {
            1 - m * self.w + e
        } else {
            m * self.w - e
        }
    }

    /// Homology dimensions keyed by cohomological degree for a given `m`.
    pub fn by_degree(&self, m: i64) -> BTreeMap<i64, usize> {
        self.strata.iter().filter(|s| s.homology > 0).map(|s| (self.degree(s.e, m), s.homology)).collect()
    }
}

#[cfg(test)]
mod tests;
