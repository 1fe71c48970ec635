//! Bit-packed GF(2) elimination. Each row is a slice of `u64` words,
//! bit `c % 64` of word `c / 64` holding column `c`; row operations are
//! word-wide XORs.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub(crate) fn zeros(n_cols: usize) -> Self {
        BitRow {
            words: vec![0; n_cols.div_ceil(64)],
        }
    }

    pub(crate) fn from_residues(row: &[u32]) -> Self {
        let mut out = BitRow::zeros(row.len());
        for (c, &v) in row.iter().enumerate() {
            if v & 1 == 1 {
                out.set(c);
            }
        }
        out
    }

    #[inline]
    pub(crate) fn get(&self, c: usize) -> bool {
        self.words[c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, c: usize) {
        self.words[c / 64] |= 1 << (c % 64);
    }

    #[inline]
    pub(crate) fn xor_from(&mut self, other: &BitRow, start_word: usize) {
        for (a, b) in self.words[start_word..]
            .iter_mut()
            .zip(&other.words[start_word..])
        {
            *a ^= *b;
        }
    }

    /// Index of the lowest set bit, if any.
    pub(crate) fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub(crate) fn to_residues(&self, n_cols: usize) -> Vec<u32> {
        (0..n_cols).map(|c| u32::from(self.get(c))).collect()
    }
}

/// Rank by forward elimination. The rows are consumed as scratch space.
pub(crate) fn rank(mut rows: Vec<BitRow>, n_cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(rank, piv);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row.get(c) {
                row.xor_from(pivot, c / 64);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row-echelon form; returns the nonzero rows and pivot columns.
pub(crate) fn rref(mut rows: Vec<BitRow>, n_cols: usize) -> (Vec<BitRow>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n_cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(c) {
                row.xor_from(&pivot, c / 64);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Incremental echelon basis: rows indexed by their pivot column.
#[derive(Debug, Clone)]
pub(crate) struct Gf2Echelon {
    by_pivot: Vec<Option<BitRow>>,
    rank: usize,
}

impl Gf2Echelon {
    pub(crate) fn new(n_cols: usize) -> Self {
        Gf2Echelon {
            by_pivot: vec![None; n_cols],
            rank: 0,
        }
    }

    /// Reduces `v` against the basis and keeps it if independent.
    pub(crate) fn insert(&mut self, mut v: BitRow) -> bool {
        while let Some(c) = v.leading() {
            match &self.by_pivot[c] {
                Some(row) => v.xor_from(row, c / 64),
                None => {
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
        let words = self.by_pivot.len().div_ceil(64);
        self.rank * words * 8
    }
}
