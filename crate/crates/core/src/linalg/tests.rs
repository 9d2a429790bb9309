use super::*;
use proptest::prelude::*;
use rand::Rng;

fn is_prime(n: u64) -> bool {
    n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn prime_pool_is_prime() {
    for p in PRIMES {
        assert!(is_prime(p) && p > 1 << 30, "{p}");
    }
}

#[test]
fn small_cases() {
    let p = PRIMES[0];
    assert_eq!(rank_modp(&SparseIntMatrix::zero(4, 5), p), 0);
    assert_eq!(rank_modp(&SparseIntMatrix::identity(7), p), 7);
    let d = SparseIntMatrix::new(3, 3, [(0, 0, 2), (1, 1, 4), (2, 2, 6)]);
    assert_eq!(rank_modp(&d, p), 3);
    let r = rank_exact(&d).unwrap();
    assert_eq!(r.rank, 3);
    assert!(r.certified);
    assert_eq!(rank_exact(&SparseIntMatrix::zero(0, 3)).unwrap().rank, 0);
}

#[test]
fn consensus_excludes_bad_prime() {
    let p0 = PRIMES[3];
    let m = SparseIntMatrix::new(3, 3, [(0, 0, p0 as i64), (0, 1, 2 * p0 as i64), (1, 1, 1), (2, 0, 1), (2, 2, p0 as i64)]);
    assert!(rank_modp(&m, p0) < rank_fraction_free(&m));
    let pool = [p0, PRIMES[0], PRIMES[1]];
    for seed in 0..8 {
        let opts = RankOptions { seed, certify_nnz: 0 };
        let r = rank_with_pool(&m, &opts, &pool).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.primes_used.len() >= 2);
    }
    // two bad primes out of two cannot reach consensus on the true rank
    let q0 = PRIMES[4];
    let n = SparseIntMatrix::new(2, 2, [(0, 0, (p0 * q0) as i64), (1, 1, 1)]);
    let r = rank_with_pool(&n, &RankOptions { seed: 1, certify_nnz: 0 }, &[p0, q0]).unwrap();
    assert_eq!(r.rank, 1);
    assert!(!r.certified);
    assert!(rank_with_pool(&n, &RankOptions::default(), &[p0]).is_err());
}

#[test]
fn random_dense_matches_fraction_free() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for k in 0..6 {
        let rank_target = 20 + 5 * k;
        // product of 50xk and kx50 factors has rank <= k
        let a: Vec<Vec<i64>> = (0..50).map(|_| (0..rank_target).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let b: Vec<Vec<i64>> = (0..rank_target).map(|_| (0..50).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let m = SparseIntMatrix::from_dense(&a).mul(&SparseIntMatrix::from_dense(&b));
        let ff = rank_fraction_free(&m);
        let r = rank_exact_with(&m, &RankOptions { seed: k as u64, certify_nnz: 10_000 }).unwrap();
        assert_eq!(r.rank, ff);
        assert!(r.certified);
        assert!(ff <= rank_target);
    }
}

#[test]
fn big_entries_fall_back() {
    let big = 1i64 << 61;
    let d = vec![vec![big, big - 1, 3], vec![big - 7, big, 5], vec![1, 2, big]];
    let m = SparseIntMatrix::from_dense(&d);
    assert_eq!(rank_fraction_free(&m), 3);
    assert_eq!(rank_modp(&m, PRIMES[0]), 3);
}

#[test]
fn report_bookkeeping() {
    let dims = BTreeMap::from([(0, 20), (1, 6)]);
    let ranks = BTreeMap::from([(1, 6)]);
    let r = DimReport::from_ranks("x".into(), 1, true, &dims, &ranks, true);
    assert_eq!(r.nonzero_homology(), vec![(0, 14)]);
    assert_eq!(r.euler_chain(), r.euler_homology());
    assert_eq!(r.by_degree(1), BTreeMap::from([(0, 14)]));
    assert_eq!(r.by_degree(3), BTreeMap::from([(-2, 14)]));
}

fn sparse_matrix() -> impl Strategy<Value = SparseIntMatrix> {
    (1usize..12, 1usize..12)
        .prop_flat_map(|(r, c)| proptest::collection::vec((0..r, 0..c, -4i64..=4), 0..40).prop_map(move |e| SparseIntMatrix::new(r, c, e)))
}

proptest! {
    #[test]
    fn modular_agrees_with_fraction_free(m in sparse_matrix()) {
        let ff = rank_fraction_free(&m);
        prop_assert_eq!(rank_modp(&m, PRIMES[2]), ff);
        prop_assert_eq!(rank_modp(&m.transpose(), PRIMES[5]), ff);
    }
}
