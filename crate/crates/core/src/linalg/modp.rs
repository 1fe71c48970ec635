//! Elimination over GF(p) for odd `p < 2^31` on word-sized residues.

use super::field::Modulus;

/// Rank by forward elimination. The rows are consumed as scratch space.
pub(crate) fn rank(mut rows: Vec<Vec<u32>>, n_cols: usize, p: u32) -> usize {
    let m = Modulus::new(p);
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &mut head[rank];
        let inv = m.inv(pivot[c]);
        for v in pivot[c..].iter_mut() {
            *v = m.mul(*v, inv);
        }
        for row in tail.iter_mut() {
            let f = row[c];
            if f != 0 {
                eliminate(&m, row, pivot, f, c);
            }
        }
        rank += 1;
    }
    rank
}

#[inline]
fn eliminate(m: &Modulus, row: &mut [u32], pivot: &[u32], f: u32, from: usize) {
    for (a, &b) in row[from..].iter_mut().zip(&pivot[from..]) {
        if b != 0 {
            *a = m.sub_mul(*a, f, b);
        }
    }
}

/// Reduced row-echelon form; returns the nonzero rows and pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<u32>>, n_cols: usize, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let m = Modulus::new(p);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = m.inv(rows[rank][c]);
        for v in rows[rank][c..].iter_mut() {
            *v = m.mul(*v, inv);
        }
        let pivot = std::mem::take(&mut rows[rank]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let f = row[c];
            if f != 0 {
                eliminate(&m, row, &pivot, f, c);
            }
        }
        rows[rank] = pivot;
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Incremental echelon basis over GF(p): rows indexed by pivot column,
/// each normalized to a leading 1.
#[derive(Debug, Clone)]
pub(crate) struct ModpEchelon {
    modulus: Modulus,
    by_pivot: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl ModpEchelon {
    pub(crate) fn new(n_cols: usize, p: u32) -> Self {
        ModpEchelon {
            modulus: Modulus::new(p),
            by_pivot: vec![None; n_cols],
            rank: 0,
        }
    }

    pub(crate) fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let m = self.modulus;
        for c in 0..v.len() {
            let f = v[c];
            if f == 0 {
                continue;
            }
            match &self.by_pivot[c] {
                Some(row) => eliminate(&m, &mut v, row, f, c),
                None => {
                    let inv = m.inv(f);
                    for x in v[c..].iter_mut() {
                        *x = m.mul(*x, inv);
                    }
                    self.by_pivot[c] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn memory_bytes(&self) -> usize {
        self.rank * self.by_pivot.len() * 4
    }
}
