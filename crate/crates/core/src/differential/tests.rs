use super::*;
use crate::enumerate::{enumerate_basis, Limits};
use crate::graph::{grading_of, Parity};
use crate::linalg::rank_exact;

fn spec(v: Variant, side: Side, g: u8, p: Parity, w: i64) -> ComplexSpec {
    ComplexSpec::new(v, side, g, p, w)
}

fn a(i: u8) -> Deco {
    Deco::A(i)
}

fn b(i: u8) -> Deco {
    Deco::B(i)
}

/// Strata of `s` where `d∘d` does not vanish.
fn d2_failures(s: ComplexSpec) -> Vec<String> {
    let basis = enumerate_basis(s, &Limits::default()).unwrap();
    let mut bad = vec![];
    for &e in basis.strata.keys() {
        let d1 = assemble(&basis, e).unwrap();
        let d2 = assemble(&basis, e - 1).unwrap();
        let prod = d2.mul(&d1);
        if !prod.is_zero() {
            bad.push(format!("{} E={e}: {} nonzeros", s.label(), prod.nnz()));
        }
    }
    bad
}

fn check_all(specs: Vec<ComplexSpec>) {
    let bad: Vec<String> = specs.into_iter().flat_map(d2_failures).collect();
    assert!(bad.is_empty(), "d^2 != 0:\n{}", bad.join("\n"));
}

#[test]
fn d_squared_vanishes_small() {
    let mut specs = vec![];
    for v in Variant::ALL {
        for p in [Parity::Odd, Parity::Even] {
            for g in 0..=2u8 {
                for w in 1..=3 {
                    specs.push(spec(v, Side::Connected, g, p, w));
                }
                for w in 1..=2 {
                    specs.push(spec(v, Side::Ce, g, p, w));
                }
            }
        }
    }
    check_all(specs);
}

#[test]
fn d_squared_vanishes_ce_weight_three() {
    let mut specs = vec![];
    for v in Variant::ALL {
        for p in [Parity::Odd, Parity::Even] {
            specs.push(spec(v, Side::Ce, 1, p, 3));
        }
    }
    check_all(specs);
}

#[test]
fn pieces_are_homogeneous() {
    for v in Variant::ALL {
        for side in [Side::Connected, Side::Ce] {
            for p in [Parity::Odd, Parity::Even] {
                let s = spec(v, side, 2, p, 2);
                let basis = enumerate_basis(s, &Limits::default()).unwrap();
                for &e in basis.strata.keys() {
                    for gr in basis.graphs(e) {
                        for (h, _) in total_terms(&gr, &s) {
                            let gd = grading_of(&h);
                            assert_eq!((gd.w, gd.e_num), (2, e - 1), "{gr} -> {h}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn contraction_merges_decorations() {
    let p = Parity::Odd;
    let gr = DecoratedGraph::new(2, vec![(0, 1)], vec![(0, a(1)), (0, a(2)), (1, b(1)), (1, b(2))], p);
    let s = spec(Variant::Gc1, Side::Connected, 2, p, 2);
    let d = d_contract(&gr, &s);
    let merged = DecoratedGraph::new(1, vec![], vec![(0, a(1)), (0, a(2)), (0, b(1)), (0, b(2))], p);
    let cf = canonical_form(&merged);
    assert_eq!(d.len(), 1);
    assert_eq!(d.coeff(&cf.encoding), cf.sign as i64);
    let tad = DecoratedGraph::new(1, vec![(0, 0)], vec![(0, a(1))], p);
    assert!(contract_terms(&tad).is_empty());
}

#[test]
fn cut_produces_diagonal_terms() {
    let p = Parity::Odd;
    let gr = DecoratedGraph::new(2, vec![(0, 1)], vec![(0, a(1)), (0, a(2)), (1, b(1)), (1, b(2))], p);
    let s = spec(Variant::Gc1, Side::Ce, 2, p, 2);
    let d = d_cut(&gr, &s);
    assert_eq!(d.len(), 2);
    assert!(d.terms.values().all(|c| c.abs() == 1));
}

#[test]
fn tadpole_cut_has_rank_2g() {
    for g in 2..=4u8 {
        let s = spec(Variant::Gc1Tp, Side::Connected, g, Parity::Odd, 1);
        let basis = enumerate_basis(s, &Limits::default()).unwrap();
        let m = assemble(&basis, 1).unwrap();
        assert_eq!((m.rows, m.cols), (basis.dim(0), 2 * g as usize));
        assert_eq!(rank_exact(&m).unwrap().rank, 2 * g as usize);
        // Σ g_ij Γ_{c_i c_j α}: two coinciding terms per pair, coefficient ±2
        assert!(m.entries.iter().all(|x| x.2.abs() == 2));
    }
    let s = spec(Variant::Gc1Tp, Side::Connected, 1, Parity::Odd, 1);
    let basis = enumerate_basis(s, &Limits::default()).unwrap();
    assert_eq!(assemble(&basis, 1).unwrap().rows, 0);
}

#[test]
fn mul_pairs_letters() {
    let p = Parity::Odd;
    let s = spec(Variant::GcEx, Side::Connected, 2, p, 3);
    let gr = DecoratedGraph::new(2, vec![(0, 1)], vec![(0, a(1)), (0, b(1)), (1, a(2)), (1, b(2))], p);
    let d = d_mul(&gr, &s);
    assert_eq!(d.len(), 2);
    let gr = DecoratedGraph::new(2, vec![(0, 1)], vec![(0, a(1)), (0, a(2)), (1, a(2)), (1, b(2))], p);
    let d = d_mul(&gr, &s);
    assert_eq!(d.len(), 1);
    assert!(d.terms.values().all(|c| c.abs() == 1));
}

#[test]
fn crossed_rules() {
    let p = Parity::Odd;
    let s = spec(Variant::GcEx, Side::Ce, 2, p, 1);
    let gr = DecoratedGraph::new(1, vec![], vec![(0, a(1)), (0, b(1)), (0, a(2))], p);
    let d = d_cross(&gr, &s).unwrap();
    let target = canonical_form(&DecoratedGraph::crossed_letter(a(2), p));
    assert_eq!(d.len(), 1);
    assert_eq!(d.coeff(&target.encoding).abs(), 1);
    assert!(d_cross(&DecoratedGraph::crossed_letter(a(1), p), &s).unwrap().is_zero());
    assert!(d_cross(&gr, &spec(Variant::Gc1, Side::Ce, 2, p, 1)).is_err());

    // ω at a trivalent vertex: one term per diagonal term
    let star = DecoratedGraph::new(
        4,
        vec![(0, 1), (0, 2), (0, 3)],
        vec![(0, Deco::Omega), (1, a(1)), (1, b(1)), (2, a(1)), (2, a(2)), (3, b(1)), (3, b(2))],
        p,
    );
    let s = spec(Variant::GcEx, Side::Ce, 2, p, 6);
    assert_eq!(d_cross(&star, &s).unwrap().len(), 4);
}
