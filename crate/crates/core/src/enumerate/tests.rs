use super::*;
use crate::graph::{grading_of, is_admissible};

fn lim() -> Limits {
    Limits::default()
}

fn spec(v: Variant, side: Side, g: u8, p: Parity, w: i64) -> ComplexSpec {
    ComplexSpec::new(v, side, g, p, w)
}

#[test]
fn weight_one_counts() {
    let b = enumerate_basis(spec(Variant::Gc1, Side::Connected, 3, Parity::Odd, 1), &lim()).unwrap();
    assert_eq!(b.summary(), "E=0: 20");
    let b = enumerate_basis(spec(Variant::Gc1Tp, Side::Connected, 3, Parity::Odd, 1), &lim()).unwrap();
    assert_eq!(b.summary(), "E=0: 20, E=1: 6");
    let b = enumerate_basis(spec(Variant::Gc1, Side::Connected, 0, Parity::Odd, 1), &lim()).unwrap();
    assert_eq!(b.total(), 0);
    // S^3 of four letters for even m
    let b = enumerate_basis(spec(Variant::Gc1, Side::Connected, 2, Parity::Even, 1), &lim()).unwrap();
    assert_eq!(b.dim(0), 20);
}

#[test]
fn crossed_generators() {
    let b = enumerate_basis(spec(Variant::GcEx, Side::Ce, 1, Parity::Odd, 1), &lim()).unwrap();
    assert_eq!(b.dim(-1), 2);
    let b = enumerate_basis(spec(Variant::Gc1, Side::Ce, 2, Parity::Odd, 1), &lim()).unwrap();
    assert_eq!(b.strata.keys().copied().collect::<Vec<_>>(), vec![0]);
}

#[test]
fn ce_weight_two_pairs() {
    // Oracle: Λ^4 of six letters plus unordered pairs of the 20 weight-one
    // classes, with identical pairs dropped since each is odd for odd m.
    let one = enumerate_basis(spec(Variant::Gc1, Side::Connected, 3, Parity::Odd, 1), &lim()).unwrap();
    let graphs = one.graphs(0);
    let mut pairs = 0;
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let odd = graphs[i].word_parity() == 1;
            if i == j && odd {
                continue;
            }
            pairs += 1;
        }
    }
    let b = enumerate_basis(spec(Variant::Gc1, Side::Ce, 3, Parity::Odd, 2), &lim()).unwrap();
    assert_eq!(b.dim(0), 15 + pairs);
    assert_eq!(pairs, 190);
}

#[test]
fn counting_formula_matches_listing() {
    for v in Variant::ALL {
        for p in [Parity::Odd, Parity::Even] {
            for (g, w) in [(1u8, 2i64), (2, 2), (1, 3), (2, 3)] {
                let s = spec(v, Side::Ce, g, p, w);
                let b = enumerate_basis(s, &lim()).unwrap();
                let counts = connected_counts(s, &lim()).unwrap();
                let predicted = ce_counts_from_connected(&counts, p, w);
                let listed: BTreeMap<i64, u128> = b.strata.iter().map(|(e, x)| (*e, x.len() as u128)).collect();
                assert_eq!(predicted, listed, "{}", s.label());
            }
        }
    }
}

#[test]
fn bases_are_admissible_and_bounded() {
    for v in Variant::ALL {
        for side in [Side::Connected, Side::Ce] {
            for p in [Parity::Odd, Parity::Even] {
                for w in 1..=3 {
                    let s = spec(v, side, 2, p, w);
                    let b = enumerate_basis(s, &lim()).unwrap();
                    for (&e, _) in &b.strata {
                        assert!(e <= 3 * w / 2, "{}", s.label());
                        for gr in b.graphs(e) {
                            let gd = grading_of(&gr);
                            assert_eq!((gd.w, gd.e_num), (w, e));
                            assert!(gd.d <= 3 * w - 2 * gd.e_num + 2 * gd.crossed);
                            let adm = is_admissible(&gr, v, side);
                            assert!(adm || (side == Side::Connected && gd.crossed == 1), "{gr}");
                        }
                    }
                }
            }
        }
    }
}

fn multisets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], start: usize, k: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, i, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(items, 0, k, &mut vec![], &mut out);
    out
}

/// Naive generator: every labeled graph on few vertices, canonicalized.
fn naive(s: ComplexSpec) -> BTreeMap<i64, Vec<String>> {
    let mut sets: BTreeMap<i64, BTreeSet<String>> = BTreeMap::new();
    let mut alphabet = Deco::letters(s.g);
    if s.variant == Variant::GcEx {
        alphabet.push(Deco::Omega);
    }
    let w = s.w as usize;
    for n in 1..=w {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        for e in 0..=n + w / 2 {
            for edges in multisets(&pairs, e) {
                let slots: Vec<(usize, Deco)> = (0..n).flat_map(|v| alphabet.iter().map(move |&d| (v, d))).collect();
                for k in 0..=(w + 2 * n).saturating_sub(2 * e) {
                    for decos in multisets(&slots, k) {
                        let gr = DecoratedGraph::new(n, edges.clone(), decos, s.parity);
                        let gd = grading_of(&gr);
                        if gd.w != s.w || !is_admissible(&gr, s.variant, s.side) {
                            continue;
                        }
                        let c = canonical_form(&gr);
                        if !c.is_zero() {
                            sets.entry(gd.e_num).or_default().insert(c.encoding);
                        }
                    }
                }
            }
        }
    }
    if s.variant == Variant::GcEx {
        // crossed components: a lone crossed vertex, or one added to a weight-(W-1) CE graph
        let crossed: Vec<DecoratedGraph> = Deco::letters(s.g).into_iter().map(|l| DecoratedGraph::crossed_letter(l, s.parity)).collect();
        if s.w == 1 {
            for x in &crossed {
                sets.entry(-1).or_default().insert(canonical_form(x).encoding);
            }
        } else if s.side == Side::Ce {
            let rest = naive(s.with_w(s.w - 1));
            for (e, encs) in rest {
                for enc in encs {
                    let base = DecoratedGraph::from_encoding(&enc, s.parity).unwrap();
                    for x in &crossed {
                        let c = canonical_form(&base.disjoint_union(x).0);
                        if !c.is_zero() {
                            sets.entry(e - 1).or_default().insert(c.encoding);
                        }
                    }
                }
            }
        }
    }
    sets.into_iter().filter(|(_, v)| !v.is_empty()).map(|(e, v)| (e, v.into_iter().collect())).collect()
}

#[test]
fn naive_generator_agrees() {
    for v in Variant::ALL {
        for side in [Side::Connected, Side::Ce] {
            for p in [Parity::Odd, Parity::Even] {
                for g in 0..=2u8 {
                    for w in 1..=2 {
                        let s = spec(v, side, g, p, w);
                        let b = enumerate_basis(s, &lim()).unwrap();
                        assert_eq!(b.strata, naive(s), "{}", s.label());
                    }
                }
            }
        }
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let s = spec(Variant::Gc1Tp, Side::Ce, 2, Parity::Even, 3);
    let a = enumerate_basis(s, &lim()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| enumerate_basis(s, &lim()).unwrap());
    assert_eq!(a, b);
}

#[test]
fn limits_are_reported() {
    let s = spec(Variant::Gc1, Side::Connected, 3, Parity::Odd, 2);
    let tight = Limits { max_stratum: 10, ..Limits::default() };
    match enumerate_basis(s, &tight) {
        Err(EnumError::Limit { partial, .. }) => assert!(!partial.is_empty()),
        Ok(_) => panic!("limit not enforced"),
    }
}
