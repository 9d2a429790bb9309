use super::*;
use crate::enumerate::Limits;
use crate::graph::Parity;
use std::collections::HashMap;

fn basis(f: Family, p: Parity, m: usize, w: i64) -> StableBasis {
    enumerate_stable_basis(StableSpec::new(f, p, m, w), &Limits::default()).unwrap()
}

/// Every composite `d∘d` term, as `(source, target, coefficient)`.
fn d2_failures(b: &StableBasis) -> Vec<(String, String, i64)> {
    let mut bad = vec![];
    for (&e, encs) in &b.strata {
        for enc in encs {
            let g = decode_stable(enc, b.spec.parity).unwrap();
            let mut acc: HashMap<String, i64> = HashMap::new();
            for (t, c) in d_stable(&g, &b.spec).terms {
                let h = decode_stable(&t, b.spec.parity).unwrap();
                for (u, c2) in d_stable(&h, &b.spec).terms {
                    *acc.entry(u).or_insert(0) += c * c2;
                }
            }
            for (u, c) in acc {
                if c != 0 {
                    bad.push((format!("E={e} {enc}"), u, c));
                }
            }
        }
    }
    bad
}

#[test]
fn encoding_round_trip() {
    let b = basis(Family::K, Parity::Odd, 2, 2);
    for e in b.strata.keys() {
        for (enc, g) in b.strata[e].iter().zip(b.graphs(*e)) {
            assert_eq!(&encode_stable(&g), enc);
            let c = stable_canonical(&g);
            assert_eq!(&c.encoding, enc);
            assert_eq!(c.sign, 1);
        }
    }
}

#[test]
fn kappa_one_generators() {
    for p in [Parity::Odd, Parity::Even] {
        let b = basis(Family::J, p, 0, 2);
        let tad = "s1;1;;;;0-0,0-0;;";
        assert!(b.strata[&0].iter().any(|s| s == tad), "{:?}", b.strata);
        let k = basis(Family::K, p, 0, 2);
        assert!(k.strata[&0].iter().any(|s| s == tad));
    }
}

#[test]
fn odd_weight_with_two_legs_is_empty() {
    for f in Family::ALL {
        for p in [Parity::Odd, Parity::Even] {
            let b = basis(f, p, 2, 1);
            if f != Family::K {
                assert_eq!(b.total(), 0, "{f:?} {p:?}: {:?}", b.strata);
            }
        }
    }
}

#[test]
fn d_squared_vanishes_small() {
    for f in Family::ALL {
        for p in [Parity::Odd, Parity::Even] {
            for w in 1..=3 {
                for m in 0..=2 {
                    let b = basis(f, p, m, w);
                    let bad = d2_failures(&b);
                    assert!(bad.is_empty(), "{}: {} failures, first {:?}", b.spec.label(), bad.len(), &bad[..bad.len().min(3)]);
                }
            }
        }
    }
}
