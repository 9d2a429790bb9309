use super::tables::{key, tables, to_weights};
use super::{Check, Params, Provenance};
use crate::cohomology::tadpole_ideal_cohomology;
use crate::differential::assemble;
use crate::enumerate::{build_cgamma, ce_counts_from_connected, connected_counts, skeletons, ComplexSpec, CoreGraph};
use crate::graph::oracle::{brute_canonical, brute_sign_at};
use crate::graph::{canonical_form, Deco, DecoratedGraph, Parity, Relabeling, Side, Variant};
use crate::io::Store;
use crate::lie::{koszul_identity_check, super_ext2, wgfr_dims, GradedDims};
use crate::linalg::{rank_fraction_free, rank_modp, DimReport, SparseIntMatrix, PRIMES};
use crate::rep::{decompose, equivariant_euler, invariant_dim, matching_count, weyl_dim, Group, HighestWeight};
use crate::stable::{assemble_stable, Family, StableSpec};
use crate::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use Provenance::*;

const PARITIES: [Parity; 2] = [Parity::Odd, Parity::Even];
const SIDES: [Side; 2] = [Side::Connected, Side::Ce];

/// A representative `m` of the parity.
fn m_of(p: Parity) -> i64 {
    match p {
        Parity::Odd => 1,
        Parity::Even => 2,
    }
}

fn repro(spec: &ComplexSpec) -> String {
    format!(
        "graphcx cohomology --variant {} --side {} --g {} --parity {} --W {} --e-number",
        spec.variant.name(),
        spec.side.name(),
        spec.g,
        spec.parity.name(),
        spec.w
    )
}

fn repro_stable(spec: &StableSpec) -> String {
    format!(
        "graphcx cohomology --family {} --parity {} --M {} --W {} --g {} --e-number",
        spec.family.name(),
        spec.parity.name(),
        spec.m,
        spec.w,
        spec.g
    )
}

fn conn(v: Variant, g: u8, p: Parity, w: i64) -> ComplexSpec {
    ComplexSpec::new(v, Side::Connected, g, p, w)
}

fn strata_with_homology(r: &DimReport) -> Vec<i64> {
    r.nonzero_homology().into_iter().map(|x| x.0).collect()
}

fn irreps_dim(list: &[(HighestWeight, i64)], g: usize) -> Result<u128, Error> {
    let mut total = 0u128;
    for (lam, k) in list {
        total += *k as u128 * weyl_dim(lam, g).map_err(Error::from)?;
    }
    Ok(total)
}

/// Decompositions as `["λ2", "2λ1+λ3", …]` with multiplicities.
fn named(list: &[(HighestWeight, i64)]) -> Vec<(String, i64)> {
    list.iter().map(|(w, k)| (w.to_string(), *k)).collect()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |r, i| r * (n - i) / (i + 1))
}

/// Runs `f`, turning an error into a failed check.
fn attempt(desc: String, prov: Provenance, f: impl FnOnce(String) -> Result<Check, Error>) -> Check {
    f(desc.clone()).unwrap_or_else(|e| Check::error(desc, e, prov))
}

fn d2_nonzeros(store: &Store, spec: ComplexSpec) -> Result<usize, Error> {
    let basis = store.basis(spec)?;
    let mut nnz = 0;
    for &e in basis.strata.keys() {
        nnz += assemble(&basis, e - 1)?.mul(&assemble(&basis, e)?).nnz();
    }
    Ok(nnz)
}

fn d2_nonzeros_stable(store: &Store, spec: StableSpec) -> Result<usize, Error> {
    let basis = store.stable_basis(spec)?;
    let mut nnz = 0;
    for &e in basis.strata.keys() {
        nnz += assemble_stable(&basis, e - 1)?.mul(&assemble_stable(&basis, e)?).nnz();
    }
    Ok(nnz)
}

fn tally(desc: String, prov: Provenance, results: Vec<(String, Result<bool, Error>)>) -> Check {
    let total = results.len();
    let mut bad = vec![];
    for (label, r) in results {
        match r {
            Ok(true) => {}
            Ok(false) => bad.push(label),
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    let c = Check::holds(desc, bad.is_empty(), format!("{} of {total} fail", bad.len()), "0 failures", prov);
    if bad.is_empty() {
        c
    } else {
        c.with_note(bad.join("; "))
    }
}

pub fn d2_zero(store: &Store, p: &Params) -> Vec<Check> {
    let (gmax, wmax, cemax, swmax, smmax) = if p.quick { (2u8, 2, 1, 2, 2) } else { (4u8, 3, 2, 4, 4) };
    let mut checks = vec![];
    for v in Variant::ALL {
        for par in PARITIES {
            for side in SIDES {
                let wtop = if side == Side::Connected { wmax } else { cemax };
                let mut results = vec![];
                for g in 0..=gmax {
                    for w in 1..=wtop {
                        let spec = ComplexSpec::new(v, side, g, par, w);
                        results.push((spec.label(), d2_nonzeros(store, spec).map(|n| n == 0)));
                    }
                }
                let desc = format!("{}/{}/{}: d∘d = 0 for g ≤ {gmax}, W ≤ {wtop}", v.name(), side.name(), par.name());
                checks.push(tally(desc, Trivial, results));
            }
        }
    }
    for fam in Family::ALL {
        for par in PARITIES {
            let mut results = vec![];
            for w in 1..=swmax {
                for m in 0..=smmax {
                    let spec = StableSpec::new(fam, par, m, w);
                    results.push((spec.label(), d2_nonzeros_stable(store, spec).map(|n| n == 0)));
                }
            }
            let desc = format!("{}/{}: d∘d = 0 for W ≤ {swmax}, M ≤ {smmax}", fam.name(), par.name());
            checks.push(tally(desc, Trivial, results));
        }
    }
    checks
}

pub fn tadpole_quotient(store: &Store, p: &Params) -> Vec<Check> {
    let (gmax, ws): (u8, &[i64]) = if p.quick { (2, &[2]) } else { (3, &[2, 3]) };
    let mut checks = vec![];
    for par in PARITIES {
        for g in 0..=gmax {
            for &w in ws {
                let desc = format!("g={g}/{}/W={w}: H(gc1tp) = H(gc1) by E-number", par.name());
                checks.push(attempt(desc, Published, |desc| {
                    let a = store.cohomology(conn(Variant::Gc1Tp, g, par, w))?;
                    let b = store.cohomology(conn(Variant::Gc1, g, par, w))?;
                    Ok(Check::compare(desc, a.nonzero_homology(), b.nonzero_homology(), Published).with_repro(repro(&conn(
                        Variant::Gc1Tp,
                        g,
                        par,
                        w,
                    ))))
                }));
            }
        }
    }
    checks
}

pub fn ideal_cohomology(store: &Store, p: &Params) -> Vec<Check> {
    let gmax = if p.quick { 2 } else { 3 };
    let mut checks = vec![];
    for par in PARITIES {
        let m = m_of(par);
        for g in 0..=gmax {
            let desc = format!("g={g}/{}: tadpole ideal in weight 1 is {}-dimensional in degree {}", par.name(), 2 * g, 2 - m);
            checks.push(attempt(desc, Published, |desc| {
                let r = tadpole_ideal_cohomology(conn(Variant::Gc1Tp, g, par, 1), &store.limits)?;
                let expected = if g == 0 { BTreeMap::new() } else { BTreeMap::from([(2 - m, 2 * g as usize)]) };
                Ok(Check::compare(desc, r.by_degree(m), expected, Published))
            }));
            let desc = format!("g={g}/{}: tadpole ideal is acyclic in weight 2", par.name());
            checks.push(attempt(desc, Published, |desc| {
                let r = tadpole_ideal_cohomology(conn(Variant::Gc1Tp, g, par, 2), &store.limits)?;
                Ok(Check::compare(desc, r.total_homology(), 0, Published))
            }));
        }
    }
    checks
}

pub fn weight1_tables(store: &Store, p: &Params) -> Vec<Check> {
    let gmax = if p.quick { 3 } else { 4 };
    let mut checks = vec![];
    for par in PARITIES {
        let m = m_of(par);
        let group = Group::for_parity(par);
        for v in Variant::ALL {
            for g in 0..=gmax {
                let cell = tables().weight_one(v, par, g);
                let spec = conn(v, g, par, 1);
                let desc = format!("{}/{}/g={g}: weight-1 homology by degree (m = {m})", v.name(), par.name());
                checks.push(attempt(desc, Published, |desc| {
                    let r = store.cohomology(spec)?;
                    let expected = match &cell {
                        None => BTreeMap::new(),
                        Some((shift, irreps)) => BTreeMap::from([(-m - shift, irreps_dim(irreps, g as usize)? as usize)]),
                    };
                    Ok(Check::compare(desc, r.by_degree(m), expected, Published).with_repro(repro(&spec)))
                }));
                if let Some((shift, irreps)) = cell {
                    let desc = format!("{}/{}/g={g}: weight-1 homology as a representation", v.name(), par.name());
                    checks.push(attempt(desc, Published, |desc| {
                        let e = -1 - shift;
                        let chi = equivariant_euler(&store.basis(spec)?).scale(if e % 2 == 0 { 1 } else { -1 });
                        let got = decompose(&chi, group).map_err(Error::from)?;
                        Ok(Check::compare(desc, named(&got), named(&irreps), Published))
                    }));
                }
            }
        }
    }
    checks
}

/// `dim S²(Λ²V) - dim Λ⁴V` for odd `m`, `dim S²(S²V) - dim S⁴V` for even.
fn weight_two_count(g: u8, par: Parity) -> u64 {
    let n = 2 * g as u64;
    match par {
        Parity::Odd => binom(binom(n, 2) + 1, 2) - binom(n, 4),
        Parity::Even => binom(binom(n + 1, 2) + 1, 2) - binom(n + 3, 4),
    }
}

pub fn gr2_tables(store: &Store, p: &Params) -> Vec<Check> {
    let gs: &[u8] = if p.quick { &[3] } else { &[3, 6] };
    let mut checks = vec![];
    for &g in gs {
        for par in PARITIES {
            let group = Group::for_parity(par);
            for v in Variant::ALL {
                let spec = conn(v, g, par, 2);
                let expected = to_weights(&tables().weight_two[&key(v, par)], group);
                let label = format!("{}/{}/g={g}", v.name(), par.name());
                checks.push(attempt(format!("{label}: weight-2 homology only at E = 1"), Published, |desc| {
                    let r = store.cohomology(spec)?;
                    Ok(Check::compare(desc, strata_with_homology(&r), vec![1], Published).with_repro(repro(&spec)))
                }));
                checks.push(attempt(format!("{label}: weight-2 homology as a representation"), Published, |desc| {
                    let chi = equivariant_euler(&store.basis(spec)?).scale(-1);
                    Ok(Check::compare(desc, named(&decompose(&chi, group).map_err(Error::from)?), named(&expected), Published))
                }));
                checks.push(attempt(format!("{label}: weight-2 homology dimension"), Published, |desc| {
                    let r = store.cohomology(spec)?;
                    Ok(Check::compare(desc, r.homology(1) as u128, irreps_dim(&expected, g as usize)?, Published))
                }));
                if v != Variant::GcEx {
                    let desc = format!("{label}: weight-2 dimension from the coproduct block");
                    checks.push(attempt(desc, Derived, |desc| {
                        let r = store.cohomology(spec)?;
                        Ok(Check::compare(desc, r.homology(1) as u64, weight_two_count(g, par), Derived))
                    }));
                }
            }
        }
    }
    checks
}

pub fn vanishing(store: &Store, p: &Params) -> Vec<Check> {
    let cases: &[(i64, u8)] = if p.quick { &[(2, 4)] } else { &[(2, 4), (3, 5)] };
    let mut checks = vec![];
    for &(w, g) in cases {
        for par in PARITIES {
            for v in Variant::ALL {
                let spec = conn(v, g, par, w);
                let desc = format!("{}/{}/g={g}/W={w}: connected homology only at E = {}", v.name(), par.name(), w - 1);
                checks.push(attempt(desc, Published, |desc| {
                    let r = store.cohomology(spec)?;
                    Ok(Check::compare(desc, strata_with_homology(&r), vec![w - 1], Published).with_repro(repro(&spec)))
                }));
            }
        }
    }
    checks
}

fn at_most_e0(r: &DimReport) -> bool {
    strata_with_homology(r).iter().all(|&e| e == 0)
}

pub fn ce_concentration(store: &Store, p: &Params) -> Vec<Check> {
    let mut direct: Vec<(i64, u8)> = vec![(1, 3), (1, 4)];
    if !p.quick {
        direct.push((2, 6));
    }
    let mmax = if p.quick { 2 } else { 6 };
    let mut checks = vec![];
    for &(w, g) in &direct {
        for par in PARITIES {
            for v in Variant::ALL {
                let spec = ComplexSpec::new(v, Side::Ce, g, par, w);
                let desc = format!("{}/ce/{}/g={g}/W={w}: CE homology only at E = 0", v.name(), par.name());
                checks.push(attempt(desc, Published, |desc| {
                    let r = store.cohomology(spec)?;
                    Ok(Check::holds(desc, at_most_e0(&r), format!("{:?}", r.nonzero_homology()), "E = 0 only", Published)
                        .with_repro(repro(&spec)))
                }));
            }
        }
    }
    for fam in Family::ALL {
        for par in PARITIES {
            for m in 0..=mmax {
                let spec = StableSpec::new(fam, par, m, 2).with_g(6);
                let desc = format!("{}/{}/M={m}/W=2/g=6: invariant CE homology only at E = 0", fam.name(), par.name());
                checks.push(attempt(desc, Published, |desc| {
                    let r = store.stable_cohomology(spec)?;
                    Ok(Check::holds(desc, at_most_e0(&r), format!("{:?}", r.nonzero_homology()), "E = 0 only", Published)
                        .with_repro(repro_stable(&spec)))
                }));
            }
        }
    }
    checks
}

/// Monomials of weight `w` in generators of weights 2, 4, 6, …
pub fn kappa_monomials(w: i64) -> usize {
    if w % 2 != 0 {
        return 0;
    }
    fn parts(n: i64, max: i64) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| parts(n - k, k)).sum()
    }
    parts(w / 2, w / 2)
}

pub fn stable_complexes(store: &Store, p: &Params) -> Vec<Check> {
    let wmax = if p.quick { 2 } else { 4 };
    let mut checks = vec![];
    for fam in Family::ALL {
        for par in PARITIES {
            for w in 1..=wmax {
                let spec = StableSpec::new(fam, par, 0, w);
                let expected = if fam == Family::JTp { 0 } else { kappa_monomials(w) };
                let desc = format!("{}/{}/M=0/W={w}: invariant CE homology has dimension {expected}", fam.name(), par.name());
                checks.push(attempt(desc, Derived, |desc| {
                    let r = store.stable_cohomology(spec)?;
                    let ok = r.total_homology() == expected && at_most_e0(&r);
                    Ok(Check::holds(desc, ok, format!("{:?}", r.nonzero_homology()), format!("{expected} at E = 0"), Derived)
                        .with_repro(repro_stable(&spec)))
                }));
            }
        }
    }
    checks
}

pub fn ses_dims(store: &Store, p: &Params) -> Vec<Check> {
    let gs: &[u8] = if p.quick { &[2] } else { &[2, 3] };
    let mut checks = vec![];
    for &g in gs {
        for par in PARITIES {
            for w in 1..=2 {
                let desc = format!("g={g}/{}/W={w}: dim H(gc1) = dim w_g^fr + dim H(gcex)", par.name());
                checks.push(attempt(desc, Derived, |desc| {
                    let a = store.cohomology(conn(Variant::Gc1, g, par, w))?.total_homology() as u64;
                    let b = store.cohomology(conn(Variant::GcEx, g, par, w))?.total_homology() as u64;
                    let fr = wgfr_dims(g as usize, par, 2).map_err(Error::from)?.get(w);
                    Ok(Check::holds(desc, a == fr + b, format!("{a}"), format!("{fr} + {b}"), Derived))
                }));
            }
        }
    }
    if gs.contains(&3) {
        for (w, lam) in [(1, "l3"), (2, "2l2")] {
            let desc = format!("g=3/odd/W={w}: dim H(gcex) = dim V({lam})");
            checks.push(attempt(desc, Derived, |desc| {
                let b = store.cohomology(conn(Variant::GcEx, 3, Parity::Odd, w))?.total_homology() as u128;
                let hw = crate::rep::parse_weight(Group::Sp, lam).expect("weight literal");
                Ok(Check::compare(desc, b, weyl_dim(&hw, 3).map_err(Error::from)?, Derived))
            }));
        }
    }
    // genus one: the sequences do not split, the defect sits in weights 1 and 2
    for (par, defects) in [(Parity::Odd, [-2i64, 1]), (Parity::Even, [2, -1])] {
        for w in 1..=2 {
            let desc = format!("g=1/{}/W={w}: dim H(gc1) - dim H(gcex) = {}", par.name(), defects[w as usize - 1]);
            checks.push(attempt(desc, Published, |desc| {
                let a = store.cohomology(conn(Variant::Gc1, 1, par, w))?.total_homology() as i64;
                let b = store.cohomology(conn(Variant::GcEx, 1, par, w))?.total_homology() as i64;
                Ok(Check::compare(desc, a - b, defects[w as usize - 1], Published))
            }));
        }
    }
    checks
}

/// A random connected multigraph with `n` vertices and `k ≥ n - 1` edges;
/// about one in ten extra edges is a tadpole.
pub fn random_core(rng: &mut ChaCha8Rng, n: usize, k: usize) -> CoreGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    while edges.len() < k {
        let a = rng.gen_range(0..n);
        let b = if rng.gen_bool(0.1) { a } else { rng.gen_range(0..n) };
        edges.push((a.min(b), a.max(b)));
    }
    edges.shuffle(rng);
    CoreGraph::new(n, edges)
}

pub fn cgamma(_store: &Store, p: &Params) -> Vec<Check> {
    let count = if p.quick { p.cores.min(10) } else { p.cores };
    let mut checks = vec![];
    let tri = build_cgamma(&CoreGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]));
    checks.push(attempt("triangle: homology 2 in degree -2".into(), Derived, |desc| {
        Ok(Check::compare(desc, tri.cohomology()?, BTreeMap::from([(-2, 2)]), Derived))
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut results = vec![];
    for _ in 0..count {
        let n = rng.gen_range(1..=6);
        let k = rng.gen_range(n - 1..=9);
        let core = random_core(&mut rng, n, k);
        let label = format!("N={n} edges={:?}", core.edges);
        let r = build_cgamma(&core).cohomology().map(|h| h.keys().all(|&d| d == 1 - n as i64)).map_err(Error::from);
        results.push((label, r));
    }
    checks.push(tally(format!("{count} random connected cores (N ≤ 6, k ≤ 9): homology only in degree 1 - N"), Published, results));
    checks
}

pub fn invariant_theory(_store: &Store, p: &Params) -> Vec<Check> {
    let (nmax, gmax) = if p.quick { (3, 4) } else { (4, 5) };
    let mut checks = vec![];
    for n in 1..=nmax {
        let full = matching_count(n);
        let mut results = vec![];
        for g in 1..=gmax {
            let r = invariant_dim(g, n).map_err(Error::from).map(|d| if g >= n { d == full } else { d < full });
            results.push((format!("g={g}"), r));
        }
        let desc = format!("N={n}: invariants of V^⊗{} equal {full} exactly when g ≥ {n} (g ≤ {gmax})", 2 * n);
        checks.push(tally(desc, Published, results));
    }
    checks
}

fn euler_signed(counts: &[(i64, i64, usize)], w: i64) -> u64 {
    let chi: i64 = counts.iter().filter(|c| c.0 == w).map(|c| if c.1.rem_euclid(2) == 0 { c.2 as i64 } else { -(c.2 as i64) }).sum();
    chi.unsigned_abs()
}

pub fn koszul_gr2(store: &Store, p: &Params) -> Vec<Check> {
    let mut checks = vec![];
    for par in PARITIES {
        for v in Variant::ALL {
            let label = format!("{}/{}", v.name(), par.name());
            if p.quick {
                checks.push(Check::skipped(format!("{label}: annihilator dimensions at g=6"), "quick mode leaves out g = 6", Published));
                checks.push(Check::skipped(format!("{label}: Hilbert series identity at g=9"), "quick mode leaves out g = 9", Derived));
                continue;
            }
            checks.push(attempt(format!("{label}: dim gr²H + dim gr²H_CE = sdim Λ²V at g=6"), Published, |desc| {
                let n = store.cohomology(conn(v, 6, par, 1))?.total_homology() as u64;
                let r = store.cohomology(conn(v, 6, par, 2))?.total_homology() as u64;
                let s = store.cohomology(ComplexSpec::new(v, Side::Ce, 6, par, 2))?.total_homology() as u64;
                let sq = if par == Parity::Odd { super_ext2(n, 0) } else { super_ext2(0, n) };
                Ok(Check::holds(desc, r + s == sq, format!("{r} + {s}"), format!("{sq}"), Published))
            }));
            checks.extend(relation_spaces(store, v, par));
            checks.push(attempt(format!("{label}: Hilbert series identity through s³ at g=9"), Derived, |desc| {
                let counts = connected_counts(conn(v, 9, par, 3), &store.limits)?;
                let t = GradedDims::with_generator_parity((1..=3).map(|w| (w, euler_signed(&counts, w))), par == Parity::Even);
                let mut a = GradedDims::default();
                for w in 1..=3 {
                    let ce = ce_counts_from_connected(&counts, par, w);
                    let chi: i128 = ce.iter().map(|(&e, &c)| if e.rem_euclid(2) == 0 { c as i128 } else { -(c as i128) }).sum();
                    a.dims.insert(w, chi.unsigned_abs() as u64);
                }
                let ok = koszul_identity_check(&t, &a, 3);
                Ok(Check::holds(desc, ok, format!("t = {:?}, A = {:?}", t.dims, a.dims), "product of series = 1", Derived))
            }));
        }
    }
    checks
}

/// Generator squares and relations at g = 6 from characters: the relations
/// are the square of the weight-1 homology minus the weight-2 homology.
fn relation_spaces(store: &Store, v: Variant, par: Parity) -> Vec<Check> {
    let label = format!("{}/{}", v.name(), par.name());
    let group = Group::for_parity(par);
    let k = key(v, par);
    let chars = (|| -> Result<_, Error> {
        let gens = equivariant_euler(&store.basis(conn(v, 6, par, 1))?);
        let gr2 = equivariant_euler(&store.basis(conn(v, 6, par, 2))?).scale(-1);
        let sq = if par == Parity::Odd { gens.exterior_power(2) } else { gens.symmetric_power(2) };
        let rel = sq.sub(&gr2);
        Ok((decompose(&sq, group).map_err(Error::from)?, decompose(&rel, group).map_err(Error::from)?))
    })();
    let (sq, rel) = match chars {
        Ok(x) => x,
        Err(e) => return vec![Check::error(format!("{label}: relation spaces at g=6"), e, Published)],
    };
    let mut out = vec![];
    for (what, got, exp) in [("square of the generators", sq, &tables().generator_squares[&k]), ("relations", rel, &tables().relations[&k])]
    {
        let prov = if exp.note.is_some() { Derived } else { Published };
        let mut c = Check::compare(format!("{label}: {what} at g=6"), named(&got), named(&to_weights(&exp.irreps, group)), prov);
        if let Some(n) = &exp.note {
            c = c.with_note(n.clone());
        }
        out.push(c);
    }
    out
}

pub fn euler_consistency(store: &Store, p: &Params) -> Vec<Check> {
    let gmax = if p.quick { 2 } else { 3 };
    let mut checks = vec![];
    for v in Variant::ALL {
        for side in SIDES {
            let mut results = vec![];
            for par in PARITIES {
                for g in 0..=gmax {
                    for w in 1..=2 {
                        let spec = ComplexSpec::new(v, side, g, par, w);
                        results.push((spec.label(), store.cohomology(spec).map(|r| r.euler_chain() == r.euler_homology())));
                    }
                }
            }
            checks.push(tally(format!("{}/{}: Euler characteristics agree (g ≤ {gmax}, W ≤ 2)", v.name(), side.name()), Trivial, results));
        }
    }
    let mut results = vec![];
    for fam in Family::ALL {
        for par in PARITIES {
            for w in 1..=2 {
                for m in 0..=2 {
                    let spec = StableSpec::new(fam, par, m, w);
                    results.push((spec.label(), store.stable_cohomology(spec).map(|r| r.euler_chain() == r.euler_homology())));
                }
            }
        }
    }
    checks.push(tally("two-colored families: Euler characteristics agree (W ≤ 2, M ≤ 2)".into(), Trivial, results));
    checks
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

/// Connected graphs, tadpoles allowed, with up to `vmax` vertices, 7 edges
/// and 3 decorations from `{a1, b1, ω}`, checked against the permutation
/// oracle after a random relabeling.
fn canonical_oracle_mismatches(vmax: usize, seed: u64) -> (usize, Vec<String>) {
    use rayon::prelude::*;
    let alphabet = [Deco::A(1), Deco::B(1), Deco::Omega];
    let mut jobs = vec![];
    for n in 1..=vmax {
        for e in 0..=7 {
            for sk in skeletons(n, e, true, true) {
                for k in 0..=3 {
                    for ds in multisets(n * alphabet.len(), k) {
                        let decos: Vec<(usize, Deco)> = ds.iter().map(|&i| (i / alphabet.len(), alphabet[i % alphabet.len()])).collect();
                        jobs.push((sk.edges.clone(), n, decos));
                    }
                }
            }
        }
    }
    let bad: Vec<String> = jobs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (edges, n, decos))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i as u64);
            let mut out = vec![];
            for par in PARITIES {
                let g = DecoratedGraph::new(*n, edges.clone(), decos.clone(), par);
                let mut vertex: Vec<usize> = (0..*n).collect();
                vertex.shuffle(&mut rng);
                let r = Relabeling {
                    vertex,
                    edge: (0..edges.len()).collect(),
                    flips: vec![false; edges.len()],
                    deco: (0..decos.len()).collect(),
                };
                let h = r.apply(&g).expect("vertex relabeling");
                let c = canonical_form(&h);
                let ok = brute_sign_at(&h, &c.encoding) == Some(c.sign)
                    && (brute_canonical(&h).1 == 0) == (c.sign == 0)
                    && canonical_form(&g).encoding == c.encoding;
                if !ok {
                    out.push(format!("{g}"));
                }
            }
            out
        })
        .collect();
    (jobs.len() * 2, bad)
}

pub fn oracle_equivalence(store: &Store, p: &Params) -> Vec<Check> {
    let mut checks = vec![];
    let vmax = if p.quick { 3 } else { 5 };
    let (total, bad) = canonical_oracle_mismatches(vmax, p.seed);
    let desc = format!("canonical forms of {total} graphs (≤ {vmax} vertices, ≤ 7 edges, ≤ 3 decorations) match the permutation oracle");
    let mut c = Check::holds(desc, bad.is_empty(), format!("{} mismatches", bad.len()), "0 mismatches", Derived);
    if !bad.is_empty() {
        c = c.with_note(bad.into_iter().take(10).collect::<Vec<_>>().join("; "));
    }
    checks.push(c);

    let gmax = if p.quick { 1 } else { 2 };
    let mut matrices: Vec<(String, SparseIntMatrix)> = vec![];
    let mut errors = vec![];
    for v in Variant::ALL {
        for side in SIDES {
            for par in PARITIES {
                for g in 0..=gmax {
                    for w in 1..=2 {
                        let spec = ComplexSpec::new(v, side, g, par, w);
                        match store.basis(spec) {
                            Ok(b) => {
                                for &e in b.strata.keys() {
                                    match assemble(&b, e) {
                                        Ok(m) if m.nnz() <= 2000 => matrices.push((format!("{} E={e}", spec.label()), m)),
                                        Ok(_) => {}
                                        Err(err) => errors.push(format!("{}: {err}", spec.label())),
                                    }
                                }
                            }
                            Err(err) => errors.push(format!("{}: {err}", spec.label())),
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for i in 0..200 {
        let (r, c) = (rng.gen_range(1..40), rng.gen_range(1..40));
        let nnz = rng.gen_range(0..(r * c).min(300));
        let entries: Vec<(usize, usize, i64)> =
            (0..nnz).map(|_| (rng.gen_range(0..r), rng.gen_range(0..c), rng.gen_range(-3..=3))).collect();
        matrices.push((format!("random #{i}"), SparseIntMatrix::new(r, c, entries)));
    }
    let mut mismatch: Vec<String> =
        matrices.iter().filter(|(_, m)| rank_modp(m, PRIMES[0]) != rank_fraction_free(m)).map(|(l, _)| l.clone()).collect();
    mismatch.extend(errors);
    let desc = format!("modular ranks of {} matrices (≤ 2000 nonzeros) match fraction-free ranks", matrices.len());
    let mut c = Check::holds(desc, mismatch.is_empty(), format!("{} mismatches", mismatch.len()), "0 mismatches", Trivial);
    if !mismatch.is_empty() {
        c = c.with_note(mismatch.join("; "));
    }
    checks.push(c);
    checks
}
