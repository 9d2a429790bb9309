use super::oracle::{brute_canonical, brute_sign_at};
use super::*;
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = DecoratedGraph> {
    (1usize..=5, any::<bool>()).prop_flat_map(|(n, odd)| {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let edges = prop::collection::vec((0..n, 0..n), 0..=7);
        let deco = prop_oneof![(1u8..=2).prop_map(Deco::A), (1u8..=2).prop_map(Deco::B), Just(Deco::Omega),];
        let decos = prop::collection::vec((0..n, deco), 0..=3);
        (edges, decos).prop_map(move |(e, d)| DecoratedGraph::new(n, e, d, parity))
    })
}

fn shuffle(g: &DecoratedGraph, seed: u64) -> (DecoratedGraph, i64) {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut vertex: Vec<usize> = (0..g.n).collect();
    vertex.shuffle(&mut rng);
    let mut edge: Vec<usize> = (0..g.edges.len()).collect();
    edge.shuffle(&mut rng);
    let mut deco: Vec<usize> = (0..g.decos.len()).collect();
    deco.shuffle(&mut rng);
    let r = Relabeling { vertex, flips: vec![false; edge.len()], edge, deco };
    let h = r.apply(g).unwrap();
    let epar = vec![1u8; g.edges.len()];
    let dpar: Vec<u8> = g.decos.iter().map(|&(_, d)| d.parity(g.parity)).collect();
    (h, koszul_sign(&r.edge, &epar) * koszul_sign(&r.deco, &dpar))
}

#[test]
fn swap_two_triangle_edges_is_odd() {
    let g = DecoratedGraph::new(3, vec![(0, 1), (1, 2), (0, 2)], vec![], Parity::Odd);
    let mut r = Relabeling::identity(&g);
    r.edge = vec![1, 0, 2];
    assert_eq!(orientation_sign(&g, &r).unwrap(), -1);
    assert_eq!(orientation_sign(&g, &Relabeling::identity(&g)).unwrap(), 1);
}

#[test]
fn swapping_letters_follows_parity() {
    for (p, want) in [(Parity::Odd, -1), (Parity::Even, 1)] {
        let g = DecoratedGraph::new(1, vec![], vec![(0, Deco::A(1)), (0, Deco::B(1))], p);
        let mut r = Relabeling::identity(&g);
        r.deco = vec![1, 0];
        assert_eq!(orientation_sign(&g, &r).unwrap(), want);
    }
}

#[test]
fn non_isomorphic_relabeling_is_rejected() {
    let g = DecoratedGraph::new(2, vec![(0, 0)], vec![(1, Deco::A(1))], Parity::Odd);
    let mut r = Relabeling::identity(&g);
    r.vertex = vec![1, 0];
    assert!(orientation_sign(&g, &r).is_err());
}

#[test]
fn double_edge_vanishes() {
    for p in [Parity::Odd, Parity::Even] {
        let g = DecoratedGraph::new(2, vec![(0, 1), (0, 1)], vec![], p);
        assert!(canonical_form(&g).is_zero());
    }
}

#[test]
fn dumbbell_vanishes() {
    for p in [Parity::Odd, Parity::Even] {
        let g = DecoratedGraph::new(2, vec![(0, 0), (0, 1), (1, 1)], vec![], p);
        assert!(canonical_form(&g).is_zero());
        assert_eq!(brute_canonical(&g).1, 0);
    }
}

#[test]
fn tadpole_generator_survives() {
    for p in [Parity::Odd, Parity::Even] {
        let g = DecoratedGraph::new(1, vec![(0, 0)], vec![(0, Deco::A(1))], p);
        let c = canonical_form(&g);
        assert_eq!(c.sign, 1);
        assert!(is_admissible(&g, Variant::Gc1Tp, Side::Connected));
        assert!(!is_admissible(&g, Variant::Gc1, Side::Connected));
    }
}

#[test]
fn gradings() {
    let p = Parity::Odd;
    let g = DecoratedGraph::new(1, vec![], vec![(0, Deco::A(1)), (0, Deco::B(1)), (0, Deco::A(2))], p);
    let gr = grading_of(&g);
    assert_eq!((gr.w, gr.e_num), (1, 0));
    assert_eq!(gr.gc_degree(1), 0);
    assert_eq!(gr.gc_degree(3), -2);
    let x = DecoratedGraph::crossed_letter(Deco::A(1), p);
    let gr = grading_of(&x);
    assert_eq!((gr.w, gr.e_num), (1, -1));
    assert_eq!(gr.chain_degree(1), 2);
    let four = DecoratedGraph::new(1, vec![], vec![(0, Deco::A(1)), (0, Deco::B(1)), (0, Deco::A(2)), (0, Deco::B(2))], p);
    assert_eq!((grading_of(&four).w, grading_of(&four).e_num), (2, 0));
}

#[test]
fn admissibility_rules() {
    let p = Parity::Odd;
    let two = DecoratedGraph::new(1, vec![], vec![(0, Deco::A(1)), (0, Deco::B(1))], p);
    assert!(!is_admissible(&two, Variant::Gc1, Side::Ce));
    let gamma = |off: usize| vec![(off, Deco::A(1)), (off, Deco::B(1)), (off, Deco::A(2))];
    let mut d = gamma(0);
    d.extend(gamma(1));
    let pair = DecoratedGraph::new(2, vec![], d, p);
    assert!(!is_admissible(&pair, Variant::Gc1, Side::Connected));
    assert!(is_admissible(&pair, Variant::Gc1, Side::Ce));
    let om = DecoratedGraph::new(1, vec![], vec![(0, Deco::A(1)), (0, Deco::B(1)), (0, Deco::Omega)], p);
    assert!(is_admissible(&om, Variant::GcEx, Side::Connected));
    assert!(!is_admissible(&om, Variant::Gc1, Side::Connected));
}

#[test]
fn encoding_round_trip() {
    let g = DecoratedGraph::new(
        3,
        vec![(0, 1)],
        vec![(0, Deco::A(1)), (0, Deco::B(2)), (1, Deco::Omega), (2, Deco::Cross), (2, Deco::A(1))],
        Parity::Even,
    );
    let e = encode(&g);
    assert_eq!(e, "v1;3;2;0-1;0:a1,0:b2,1:w,2:x,2:a1");
    assert_eq!(decode(&e, Parity::Even).unwrap(), g);
}

/// Every graph with at most 4 vertices, 5 edges and 3 decorations from a
/// two-letter alphabet plus ω, against the permutation oracle.
#[test]
fn exhaustive_small_oracle() {
    let alphabet = [Deco::A(1), Deco::B(1), Deco::Omega];
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        for ne in 0..=3usize {
            for es in itertools_combinations_with_rep(pairs.len(), ne) {
                let edges: Vec<_> = es.iter().map(|&i| pairs[i]).collect();
                for nd in 0..=2usize {
                    let slots = n * alphabet.len();
                    for ds in itertools_combinations_with_rep(slots, nd) {
                        let decos: Vec<_> = ds.iter().map(|&i| (i / alphabet.len(), alphabet[i % alphabet.len()])).collect();
                        for p in [Parity::Odd, Parity::Even] {
                            let g = DecoratedGraph::new(n, edges.clone(), decos.clone(), p);
                            let c = canonical_form(&g);
                            let s = brute_sign_at(&g, &c.encoding).expect("representative is a relabeling");
                            assert_eq!(c.sign, s, "{g}");
                            assert_eq!(brute_canonical(&g).1 == 0, s == 0);
                            if s != 0 {
                                assert_eq!(c.graph.n, g.n);
                                let c2 = canonical_form(&c.graph);
                                assert_eq!(c2.encoding, c.encoding);
                                assert_eq!(c2.sign, 1);
                            }
                        }
                    }
                }
            }
        }
    }
}

fn itertools_combinations_with_rep(n: usize, k: usize) -> Vec<Vec<usize>> {
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_relabeling_invariant(g in small_graph(), seed in any::<u64>()) {
        let (h, s) = shuffle(&g, seed);
        let cg = canonical_form(&g);
        let ch = canonical_form(&h);
        prop_assert_eq!(&cg.encoding, &ch.encoding);
        // g = s_g·C and h = s·g, so h = s·s_g·C
        prop_assert_eq!(ch.sign as i64, s * cg.sign as i64);
    }

    #[test]
    fn canonical_form_matches_permutation_oracle(g in small_graph()) {
        let c = canonical_form(&g);
        prop_assert_eq!(Some(c.sign), brute_sign_at(&g, &c.encoding));
        let (h, _) = shuffle(&g, 7);
        let same = brute_canonical(&h).0 == brute_canonical(&g).0;
        prop_assert!(same);
        prop_assert_eq!(canonical_form(&h).encoding, c.encoding);
    }
}
