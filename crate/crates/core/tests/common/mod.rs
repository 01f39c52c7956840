//! Brute-force oracles shared by the integration tests. None of these go
//! through the series or PBW code paths.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Lyndon words of length `k` over `m` letters, by testing every word
/// against all of its nontrivial rotations.
pub fn lyndon_words(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = m.pow(k as u32);
    for code in 0..total {
        let mut word = vec![0usize; k];
        let mut c = code;
        for slot in word.iter_mut().rev() {
            *slot = c % m;
            c /= m;
        }
        let is_lyndon = (1..k).all(|r| {
            let rotated: Vec<usize> = word[r..].iter().chain(&word[..r]).copied().collect();
            word < rotated
        });
        if is_lyndon {
            out.push(word);
        }
    }
    out
}

/// Rational homotopy ranks of a single sphere, straight from Serre's
/// computation: `S^m` has `Q` in degree `m`, plus degree `2m - 1` when `m` is
/// even.
pub fn sphere_rational_homotopy(m: usize) -> Vec<usize> {
    if m % 2 == 1 {
        vec![m]
    } else {
        vec![m, 2 * m - 1]
    }
}

/// Ranks of `pi_d(S^p v S^q) (x) Q` for `d <= max_degree` via Hilton's
/// theorem: one sphere `S^{i(p-1) + j(q-1) + 1}` per basic product with `i`
/// copies of the first letter and `j` of the second. Lyndon words serve as
/// the basic products.
pub fn hilton_wedge_ranks(p: usize, q: usize, max_degree: usize) -> BTreeMap<usize, u64> {
    let mut ranks = BTreeMap::new();
    let mut weight = 1;
    while weight * (p.min(q) - 1) < max_degree {
        for word in lyndon_words(2, weight) {
            let i = word.iter().filter(|&&c| c == 0).count();
            let j = weight - i;
            let dim = i * (p - 1) + j * (q - 1) + 1;
            for d in sphere_rational_homotopy(dim) {
                if d <= max_degree {
                    *ranks.entry(d).or_insert(0) += 1;
                }
            }
        }
        weight += 1;
    }
    ranks
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}
