//! Homology dimensions of the decorated complexes.

use crate::differential::{assemble, differential};
use crate::enumerate::{enumerate_basis, ChainBasis, ComplexSpec, Limits};
use crate::graph::Side;
use crate::linalg::{rank_exact_with, DimReport, RankOptions, SparseIntMatrix};
use crate::stable::{assemble_stable, enumerate_stable_basis, StableBasis, StableSpec};
use crate::Error;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Ranks of `d_E` for every stratum of `basis`.
pub fn ranks(basis: &ChainBasis, opts: &RankOptions) -> Result<(BTreeMap<i64, usize>, bool), Error> {
    let es: Vec<i64> = basis.strata.keys().copied().collect();
    let res: Vec<Result<(i64, usize, bool), Error>> = es
        .par_iter()
        .map(|&e| {
            let m = assemble(basis, e)?;
            let r = rank_exact_with(&m, opts)?;
            Ok((e, r.rank, r.certified))
        })
        .collect();
    let mut out = BTreeMap::new();
    let mut certified = true;
    for r in res {
        let (e, rank, c) = r?;
        out.insert(e, rank);
        certified &= c;
    }
    Ok((out, certified))
}

pub fn cohomology_of(basis: &ChainBasis, opts: &RankOptions) -> Result<DimReport, Error> {
    let (ranks, certified) = ranks(basis, opts)?;
    let dims: BTreeMap<i64, usize> = basis.strata.iter().map(|(&e, v)| (e, v.len())).collect();
    let spec = basis.spec;
    Ok(DimReport::from_ranks(spec.label(), spec.w, spec.side == Side::Connected, &dims, &ranks, certified))
}

pub fn cohomology_dims(spec: ComplexSpec, limits: &Limits) -> Result<DimReport, Error> {
    let basis = enumerate_basis(spec, limits)?;
    cohomology_of(&basis, &RankOptions::default())
}

/// Homology of a stable two-colored complex, graded like the CE side.
pub fn stable_cohomology_of(basis: &StableBasis, opts: &RankOptions) -> Result<DimReport, Error> {
    let es: Vec<i64> = basis.strata.keys().copied().collect();
    let res: Vec<Result<(i64, usize, bool), Error>> = es
        .par_iter()
        .map(|&e| {
            let m = assemble_stable(basis, e)?;
            let r = rank_exact_with(&m, opts)?;
            Ok((e, r.rank, r.certified))
        })
        .collect();
    let mut ranks = BTreeMap::new();
    let mut certified = true;
    for r in res {
        let (e, rank, c) = r?;
        ranks.insert(e, rank);
        certified &= c;
    }
    let dims: BTreeMap<i64, usize> = basis.strata.iter().map(|(&e, v)| (e, v.len())).collect();
    let spec = basis.spec;
    Ok(DimReport::from_ranks(spec.label(), spec.w, false, &dims, &ranks, certified))
}

pub fn stable_cohomology(spec: StableSpec, limits: &Limits) -> Result<DimReport, Error> {
    let basis = enumerate_stable_basis(spec, limits)?;
    stable_cohomology_of(&basis, &RankOptions::default())
}

/// Homology of the tadpole ideal of the variant with tadpoles. On the chain
/// side it is the quotient by the graphs without tadpoles, so terms leaving
/// the tadpole graphs are dropped.
pub fn tadpole_ideal_cohomology(spec: ComplexSpec, limits: &Limits) -> Result<DimReport, Error> {
    let full = enumerate_basis(spec, limits)?;
    let mut basis = full.clone();
    for (&e, encs) in basis.strata.iter_mut() {
        let graphs = full.graphs(e);
        *encs = encs.iter().zip(&graphs).filter(|(_, g)| g.has_tadpole()).map(|(s, _)| s.clone()).collect();
    }
    basis.strata.retain(|_, v| !v.is_empty());
    let opts = RankOptions::default();
    let mut ranks = BTreeMap::new();
    let mut certified = true;
    for &e in basis.strata.keys() {
        let targets = basis.index(e - 1);
        let mut entries = vec![];
        for (j, gr) in basis.graphs(e).iter().enumerate() {
            for (enc, c) in differential(gr, &spec).terms {
                if let Some(&i) = targets.get(enc.as_str()) {
                    entries.push((i, j, c));
                }
            }
        }
        let r = rank_exact_with(&SparseIntMatrix::new(targets.len(), basis.dim(e), entries), &opts)?;
        ranks.insert(e, r.rank);
        certified &= r.certified;
    }
    let dims: BTreeMap<i64, usize> = basis.strata.iter().map(|(&e, v)| (e, v.len())).collect();
    Ok(DimReport::from_ranks(format!("{} tadpole ideal", spec.label()), spec.w, true, &dims, &ranks, certified))
}
