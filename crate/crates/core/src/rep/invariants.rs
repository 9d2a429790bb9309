use super::{Group, RepError, VirtualCharacter};

/// `(2n-1)!!`, the number of perfect matchings of `2n` points.
pub fn matching_count(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

/// Dimension of the `Sp(2g)`-invariants in `V^{⊗2n}`, by averaging over the
/// group: the trivial multiplicity is `Σ_w sgn(w) [x^{ρ - wρ}] χ_V^{2n}`
/// with `w` running over signed permutations.
pub fn invariant_dim(g: usize, n: usize) -> Result<u64, RepError> {
    let box_size = (4 * n + 1).checked_pow(g as u32).unwrap_or(usize::MAX);
    if box_size > 10_000_000 {
        return Err(RepError::Cap(box_size));
    }
    let v = VirtualCharacter::defining(g);
    let mut chi = VirtualCharacter::one(g);
    for _ in 0..2 * n {
        chi = chi.mul(&v);
    }
    let rho = Group::Sp.rho(g);
    let mut total = 0i64;
    for w in signed_permutations(g) {
        let mut image = vec![0; g];
        let mut sign = perm_sign(&w.0);
        for i in 0..g {
            image[w.0[i]] = w.1[i] * rho[i];
            if w.1[i] < 0 {
                sign = -sign;
            }
        }
        let shift: Vec<i32> = rho.iter().zip(&image).map(|(a, b)| a - b).collect();
        total += sign * chi.coeff(&shift);
    }
    Ok(total as u64)
}

fn signed_permutations(g: usize) -> Vec<(Vec<usize>, Vec<i32>)> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..g {
        let mut next = vec![];
        for p in &perms {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut out = vec![];
    for p in perms {
        for mask in 0..(1u32 << g) {
            let s = (0..g).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push((p.clone(), s));
        }
    }
    out
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}
