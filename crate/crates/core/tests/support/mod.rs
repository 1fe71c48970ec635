//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into `incrank_core`; every routine is a direct,
//! per-entry transcription of the definition it checks.

#![allow(dead_code, clippy::needless_range_loop)]

/// Pascal's triangle up to row `n`, as `u128`.
pub fn pascal(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
    for a in 0..=n {
        let mut row = vec![0u128; a + 1];
        row[0] = 1;
        row[a] = 1;
        for b in 1..a {
            row[b] = rows[a - 1][b - 1] + rows[a - 1][b];
        }
        rows.push(row);
    }
    rows
}

pub fn pascal_binomial(a: usize, b: i64) -> u128 {
    if b < 0 || b as usize > a {
        return 0;
    }
    pascal(a)[a][b as usize]
}

/// All `k`-subsets of `[m]` (1-based) as bitmasks, sorted colexicographically.
///
/// For subsets of equal size, colex order is exactly the numeric order of
/// their bitmask encodings.
pub fn colex_masks(m: usize, k: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0u32..(1u32 << m))
        .filter(|x| x.count_ones() as usize == k)
        .collect();
    masks.sort_unstable();
    masks
}

pub fn mask_to_elements(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

pub fn elements_to_mask(elems: &[u32]) -> u32 {
    elems.iter().fold(0, |acc, &e| acc | 1 << (e - 1))
}

/// Inclusion matrix by brute force over bitmasks.
pub fn naive_inclusion(m: usize, i: usize, n: usize) -> Vec<Vec<i64>> {
    let rows = colex_masks(m, i);
    let cols = colex_masks(m, n);
    rows.iter()
        .map(|&x| cols.iter().map(|&y| i64::from(x & y == x)).collect())
        .collect()
}

fn modinv(a: i64, p: i64) -> i64 {
    // Fermat; p is a small prime in every caller.
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Textbook Gauss-Jordan rank over GF(p), one entry at a time.
pub fn naive_rank_mod(matrix: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = matrix
        .iter()
        .map(|r| r.iter().map(|v| v.rem_euclid(p)).collect())
        .collect();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = modinv(a[rank][c], p);
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for cc in 0..cols {
                    a[r][cc] = (a[r][cc] - f * a[rank][cc]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over Q by Gaussian elimination on `f64`-free exact fractions
/// (numerator, denominator) stored as `i128`. Only suitable for tiny inputs.
pub fn naive_rank_rational(matrix: &[Vec<i64>]) -> usize {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    fn norm((n, d): (i128, i128)) -> (i128, i128) {
        if n == 0 {
            return (0, 1);
        }
        let g = gcd(n, d);
        let s = if d < 0 { -1 } else { 1 };
        (s * n / g, s * d / g)
    }
    let mut a: Vec<Vec<(i128, i128)>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| (v as i128, 1)).collect())
        .collect();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c].0 != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let (pn, pd) = a[rank][c];
        for r in rank + 1..a.len() {
            let (fn_, fd) = a[r][c];
            if fn_ == 0 {
                continue;
            }
            // factor = a[r][c] / a[rank][c]
            let factor = norm((fn_ * pd, fd * pn));
            for cc in c..cols {
                let (xn, xd) = a[r][cc];
                let (yn, yd) = a[rank][cc];
                let (tn, td) = norm((factor.0 * yn, factor.1 * yd));
                a[r][cc] = norm((xn * td - tn * xd, xd * td));
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force Lucas-free divisibility check.
pub fn divides_binomial(p: u128, a: usize, b: usize) -> bool {
    pascal_binomial(a, b as i64).is_multiple_of(p)
}
