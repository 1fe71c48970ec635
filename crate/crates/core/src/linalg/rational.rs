//! Exact elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Scales each row by the lcm of its denominators, giving an integer matrix
/// with the same row space.
pub(crate) fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination on integer rows.
///
/// After step `k` every entry below the pivot band equals a `(k+1)`-minor of
/// the input, so the division by the previous pivot is exact and entry size
/// stays polynomial.
pub(crate) fn bareiss_rank(mut rows: Vec<Vec<BigInt>>, n_cols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[c].clone();
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for cc in c + 1..n_cols {
                let t = &pv * &row[cc] - &f * &pivot[cc];
                row[cc] = if prev.is_one() { t } else { t / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pv;
        rank += 1;
    }
    rank
}

/// Reduced row-echelon form by Gauss-Jordan over `BigRational`.
pub(crate) fn rref(
    mut rows: Vec<Vec<BigRational>>,
    n_cols: usize,
) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][c].recip();
        for v in rows[rank][c..].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot = std::mem::take(&mut rows[rank]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (a, b) in row[c..].iter_mut().zip(&pivot[c..]) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        rows[rank] = pivot;
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}
