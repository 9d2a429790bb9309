//! Two-colorings of a fixed multigraph, modulo those whose solid part is
//! disconnected. Solid edges sit in degree −1 and the differential turns one
//! solid edge dashed.

use crate::linalg::{rank_exact, RankError, SparseIntMatrix};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CoreGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(edges.iter().all(|&(a, b)| a < n && b < n), "edge endpoint out of range");
        CoreGraph { n, edges }
    }

    /// Whether the edges in `mask` connect all vertices.
    pub fn solid_connected(&self, mask: u32) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    comps -= 1;
                }
            }
        }
        comps <= 1
    }
}

/// Bases by degree: a coloring is the bitmask of its solid edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CGamma {
    pub core: CoreGraph,
    pub by_degree: BTreeMap<i64, Vec<u32>>,
}

impl CGamma {
    pub fn dim(&self, deg: i64) -> usize {
        self.by_degree.get(&deg).map_or(0, Vec::len)
    }

    /// Matrix of `d` from degree `deg` to `deg + 1`, rows indexed by the target.
    pub fn differential(&self, deg: i64) -> SparseIntMatrix {
        let src = self.by_degree.get(&deg).cloned().unwrap_or_default();
        let tgt = self.by_degree.get(&(deg + 1)).cloned().unwrap_or_default();
        let index: HashMap<u32, usize> = tgt.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut entries = vec![];
        for (j, &mask) in src.iter().enumerate() {
            for i in 0..self.core.edges.len() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                if let Some(&row) = index.get(&(mask & !(1 << i))) {
                    // Koszul sign past the solid edges listed before edge `i`
                    let before = (mask & ((1u32 << i) - 1)).count_ones();
                    entries.push((row, j, if before % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        SparseIntMatrix::new(tgt.len(), src.len(), entries)
    }

    /// Cohomology dimensions by degree, zeros omitted.
    pub fn cohomology(&self) -> Result<BTreeMap<i64, usize>, RankError> {
        let mut ranks = BTreeMap::new();
        for &deg in self.by_degree.keys() {
            ranks.insert(deg, rank_exact(&self.differential(deg))?.rank);
        }
        let mut out = BTreeMap::new();
        for (&deg, basis) in &self.by_degree {
            let inc = ranks.get(&(deg - 1)).copied().unwrap_or(0);
            let h = basis.len() - ranks[&deg] - inc;
            if h > 0 {
                out.insert(deg, h);
            }
        }
        Ok(out)
    }
}

pub fn build_cgamma(core: &CoreGraph) -> CGamma {
    assert!(core.edges.len() < 32, "at most 31 edges");
    let mut by_degree: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for mask in 0..(1u32 << core.edges.len()) {
        if core.solid_connected(mask) {
            by_degree.entry(-(mask.count_ones() as i64)).or_default().push(mask);
        }
    }
    CGamma { core: core.clone(), by_degree }
}
