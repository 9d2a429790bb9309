use super::SparseIntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

/// Rank over the rationals by fraction-free elimination, in `i128` with a
/// `BigInt` rerun if an intermediate overflows.
pub fn rank_fraction_free(m: &SparseIntMatrix) -> usize {
    let dense = m.to_dense();
    match bareiss_i128(&dense) {
        Some(r) => r,
        None => bareiss_big(&dense),
    }
}

fn bareiss_i128(d: &[Vec<i64>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = d.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let x = a[rank][c].checked_mul(a[r][k])?;
                let y = a[r][c].checked_mul(a[rank][k])?;
                a[r][k] = x.checked_sub(y)? / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(d: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = d.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
