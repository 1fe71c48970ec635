//! Inclusion matrices `A_i^n(m)`: rows are the `i`-subsets of `[m]`,
//! columns the `n`-subsets, both in colex order, and entry `(X, Y)` is 1
//! exactly when `X ⊆ Y`.
//!
//! The same matrix is the homomorphism sending an `n`-subset to the sum of
//! its `i`-subsets, which is how the `specht` module uses it.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, binomial_u64, subsets_iter, BinomialTable, Subset};
use crate::error::{Error, Result};
use crate::linalg::gf2::{BitRow, Gf2Echelon};
use crate::linalg::modp::ModpEchelon;
use crate::linalg::{Entries, ExactMatrix, FieldSpec};

/// Parameters of `A_i^n(m)` over a field of the given characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InclusionParams {
    pub m: u32,
    pub n: u32,
    pub i: u32,
    #[serde(rename = "p")]
    pub field: FieldSpec,
}

impl InclusionParams {
    /// Requires `i <= n <= m`.
    pub fn new(m: u32, i: u32, n: u32, field: FieldSpec) -> Result<Self> {
        if i > n || n > m {
            return Err(Error::InvalidParams(format!(
                "need 0 <= i <= n <= m, got m={m} n={n} i={i}"
            )));
        }
        Ok(InclusionParams { m, i, n, field })
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    /// Panics if `C(m, i)` exceeds `u64`.
    pub fn n_rows(&self) -> u64 {
        binomial_u64(u64::from(self.m), u64::from(self.i)).expect("C(m, i) fits in u64")
    }

    /// Panics if `C(m, n)` exceeds `u64`.
    pub fn n_cols(&self) -> u64 {
        binomial_u64(u64::from(self.m), u64::from(self.n)).expect("C(m, n) fits in u64")
    }

    /// The parameters of the transpose, `A_{m-n}^{m-i}(m)`.
    pub fn transposed(&self) -> InclusionParams {
        InclusionParams {
            m: self.m,
            i: self.m - self.n,
            n: self.m - self.i,
            field: self.field,
        }
    }
}

impl fmt::Display for InclusionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} n={} i={} p={}", self.m, self.n, self.i, self.p())
    }
}

/// Parameters rewritten so that `i <= min(n, m - n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedParams {
    pub params: InclusionParams,
    /// Whether the transpose identity was applied.
    pub transposed: bool,
}

/// Applies `A_i^n(m)^T = A_{m-n}^{m-i}(m)` when `i > m - n`; ranks are
/// unchanged.
pub fn normalize_params(raw: InclusionParams) -> Result<NormalizedParams> {
    let raw = InclusionParams::new(raw.m, raw.i, raw.n, raw.field)?;
    let out = if raw.i <= raw.m - raw.n {
        NormalizedParams {
            params: raw,
            transposed: false,
        }
    } else {
        NormalizedParams {
            params: raw.transposed(),
            transposed: true,
        }
    };
    let p = out.params;
    debug_assert!(p.i <= p.n.min(p.m - p.n));
    Ok(out)
}

/// Cap on dense matrix storage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MemoryBudget(pub u128);

impl MemoryBudget {
    pub const DEFAULT: MemoryBudget = MemoryBudget(1 << 30);

    pub fn bytes(self) -> u128 {
        self.0
    }
}

impl Default for MemoryBudget {
    fn default() -> Self {
        MemoryBudget::DEFAULT
    }
}

/// `C(m, k)`, saturating at `u128::MAX`.
fn count(m: u32, k: u32) -> u128 {
    u128::try_from(binomial(u64::from(m), i64::from(k))).unwrap_or(u128::MAX)
}

/// Dense storage `A_i^n(m)` needs over its field.
pub fn dense_bytes(params: &InclusionParams) -> u128 {
    ExactMatrix::dense_bytes(
        params.field,
        count(params.m, params.i),
        count(params.m, params.n),
    )
}

/// Worst-case echelon storage of [`streaming_rank`]: a full basis of
/// `C(m, i)` vectors of length `C(m, i)`.
pub fn streaming_bytes(params: &InclusionParams) -> u128 {
    let rows = count(params.m, params.i);
    let row_bytes = if params.p() == 2 {
        rows.div_ceil(64).saturating_mul(8)
    } else {
        rows.saturating_mul(4)
    };
    rows.saturating_mul(row_bytes)
}

/// Calls `f` with the colex row index of every `i`-subset of `y`, in
/// increasing order.
fn for_each_row_index(table: &BinomialTable, y: &[u32], i: u32, mut f: impl FnMut(usize)) {
    let mut buf = vec![0u32; i as usize];
    for positions in subsets_iter(y.len() as u32, i) {
        for (slot, &pos) in buf.iter_mut().zip(positions.elements()) {
            *slot = y[pos as usize - 1];
        }
        f(table.rank_sorted(&buf) as usize);
    }
}

/// Dense `A_i^n(m)` under the default 1 GiB budget.
pub fn build_inclusion_matrix(params: &InclusionParams) -> Result<ExactMatrix> {
    build_inclusion_matrix_with_budget(params, MemoryBudget::DEFAULT)
}

pub fn build_inclusion_matrix_with_budget(
    params: &InclusionParams,
    budget: MemoryBudget,
) -> Result<ExactMatrix> {
    let params = InclusionParams::new(params.m, params.i, params.n, params.field)?;
    let needed = dense_bytes(&params);
    if needed > budget.bytes() {
        return Err(Error::MemoryBudget {
            needed,
            budget: budget.bytes(),
        });
    }
    let rows = params.n_rows() as usize;
    let cols = params.n_cols() as usize;
    let table = BinomialTable::new(params.m);
    let mut ones = Vec::with_capacity(
        cols * binomial_u64(u64::from(params.n), u64::from(params.i)).unwrap_or(0) as usize,
    );
    for (c, y) in subsets_iter(params.m, params.n).enumerate() {
        for_each_row_index(&table, y.elements(), params.i, |r| ones.push(r * cols + c));
    }
    let entries = if params.field.is_rational() {
        let mut v = vec![BigRational::from_integer(BigInt::from(0)); rows * cols];
        for idx in ones {
            v[idx] = BigRational::one();
        }
        Entries::Rationals(v)
    } else {
        let mut v = vec![0u32; rows * cols];
        for idx in ones {
            v[idx] = 1;
        }
        Entries::Residues(v)
    };
    ExactMatrix::from_entries(params.field, rows, cols, entries)
}

/// Row indices of the nonzero entries in the column of `y`, increasing.
pub fn column_of(params: &InclusionParams, y: &Subset) -> Result<Vec<usize>> {
    if y.len() != params.n as usize || y.m() != params.m {
        return Err(Error::InvalidParams(format!(
            "column subset {y} must be an {}-subset of [{}]",
            params.n, params.m
        )));
    }
    let table = BinomialTable::new(params.m);
    let mut out = Vec::new();
    for_each_row_index(&table, y.elements(), params.i, |r| out.push(r));
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// Rank of a streaming computation and the echelon storage it peaked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamingStats {
    pub rank: usize,
    pub basis_bytes: usize,
}

/// Rank over GF(p) inserting one column at a time into an echelon basis;
/// memory is bounded by `C(m, i)^2` entries whatever `C(m, n)` is.
pub fn streaming_rank(params: &InclusionParams) -> Result<usize> {
    streaming_rank_stats(params, MemoryBudget::DEFAULT).map(|s| s.rank)
}

pub fn streaming_rank_stats(
    params: &InclusionParams,
    budget: MemoryBudget,
) -> Result<StreamingStats> {
    let params = InclusionParams::new(params.m, params.i, params.n, params.field)?;
    let p = params.p();
    if p == 0 {
        return Err(Error::StreamingCharacteristicZero);
    }
    let needed = streaming_bytes(&params);
    if needed > budget.bytes() {
        return Err(Error::MemoryBudget {
            needed,
            budget: budget.bytes(),
        });
    }
    let rows = params.n_rows() as usize;
    let table = BinomialTable::new(params.m);
    let columns = subsets_iter(params.m, params.n);
    if p == 2 {
        let mut basis = Gf2Echelon::new(rows);
        for y in columns {
            let mut v = BitRow::zeros(rows);
            for_each_row_index(&table, y.elements(), params.i, |r| v.set(r));
            basis.insert(v);
            if basis.rank() == rows {
                break;
            }
        }
        Ok(StreamingStats {
            rank: basis.rank(),
            basis_bytes: basis.memory_bytes(),
        })
    } else {
        let mut basis = ModpEchelon::new(rows, p);
        for y in columns {
            let mut v = vec![0u32; rows];
            for_each_row_index(&table, y.elements(), params.i, |r| v[r] = 1);
            basis.insert(v);
            if basis.rank() == rows {
                break;
            }
        }
        Ok(StreamingStats {
            rank: basis.rank(),
            basis_bytes: basis.memory_bytes(),
        })
    }
}

/// Rank by elimination: dense when the matrix fits the budget, streaming
/// when the echelon basis fits. Characteristic 0 has no streaming mode.
pub fn elimination_rank(params: &InclusionParams, budget: MemoryBudget) -> Result<usize> {
    match build_inclusion_matrix_with_budget(params, budget) {
        Ok(mat) => Ok(mat.rank()),
        Err(Error::MemoryBudget { .. }) if params.p() > 0 => {
            streaming_rank_stats(params, budget).map(|s| s.rank)
        }
        Err(e) => Err(e),
    }
}

/// Checks `A_j^i(m) · A_i^n(m) = C(n-j, i-j) · A_j^n(m)` as integer
/// matrices. Each `j`-subset `Z ⊆ Y` lies in exactly `C(n-j, i-j)` of the
/// `i`-subsets of `Y`.
pub fn composition_identity_holds(m: u32, j: u32, i: u32, n: u32) -> Result<bool> {
    let q = FieldSpec::RATIONALS;
    let outer = build_inclusion_matrix(&InclusionParams::new(m, j, i, q)?)?;
    let inner = build_inclusion_matrix(&InclusionParams::new(m, i, n, q)?)?;
    let direct = build_inclusion_matrix(&InclusionParams::new(m, j, n, q)?)?;
    let factor = binomial(u64::from(n - j), i64::from(i - j));
    Ok(outer.mat_mul(&inner)? == direct.scale(&BigInt::from(factor)))
}

/// Plain-text dump: a `rows cols p` header, then one line per row with
/// space-separated entries. Rational entries print as `a` or `a/b`.
pub fn dump_matrix(mat: &ExactMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} {}",
        mat.n_rows(),
        mat.n_cols(),
        mat.field().characteristic()
    );
    out.push_str(&mat.to_string());
    out
}

/// Reads back a [`dump_matrix`] document with integer entries.
pub fn parse_dump(text: &str) -> Result<ExactMatrix> {
    let bad = |msg: &str| Error::InvalidParams(format!("malformed matrix dump: {msg}"));
    let mut lines = text.lines();
    let header: Vec<u64> = lines
        .next()
        .ok_or_else(|| bad("missing header"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("header is not numeric")))
        .collect::<Result<_>>()?;
    let [rows, cols, p] = header[..] else {
        return Err(bad("header must be `rows cols p`"));
    };
    let field = FieldSpec::new(p)?;
    let mut values = Vec::with_capacity((rows * cols) as usize);
    for line in lines.take(rows as usize) {
        let before = values.len();
        for tok in line.split_whitespace() {
            values.push(
                tok.parse::<i64>()
                    .map_err(|_| bad("entry is not an integer"))?,
            );
        }
        if values.len() - before != cols as usize {
            return Err(bad("row length differs from header"));
        }
    }
    ExactMatrix::from_integers(field, rows as usize, cols as usize, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    fn params(m: u32, i: u32, n: u32, p: u64) -> InclusionParams {
        InclusionParams::new(m, i, n, FieldSpec::new(p).unwrap()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let a = normalize_params(params(6, 1, 2, 2)).unwrap();
        assert!(!a.transposed);
        assert_eq!((a.params.i, a.params.n), (1, 2));
        let b = normalize_params(params(6, 3, 4, 2)).unwrap();
        assert!(b.transposed);
        assert_eq!((b.params.i, b.params.n), (2, 3));
        let c = normalize_params(params(4, 2, 2, 2)).unwrap();
        assert!(!c.transposed);
        assert_eq!((c.params.i, c.params.n), (2, 2));
    }

    #[test]
    fn ordering_violations_rejected() {
        let f = FieldSpec::GF2;
        assert!(InclusionParams::new(4, 3, 2, f).is_err());
        assert!(InclusionParams::new(4, 1, 5, f).is_err());
        let raw = InclusionParams {
            m: 4,
            i: 1,
            n: 5,
            field: f,
        };
        assert!(normalize_params(raw).is_err());
    }

    #[test]
    fn build_examples() {
        let a0 = build_inclusion_matrix(&params(5, 0, 2, 3)).unwrap();
        assert_eq!((a0.n_rows(), a0.n_cols()), (1, 10));
        assert!((0..10).all(|c| a0.get(0, c) == Scalar::Residue(1)));

        let ann = build_inclusion_matrix(&params(5, 2, 2, 0)).unwrap();
        assert_eq!(ann, ExactMatrix::identity(FieldSpec::RATIONALS, 10));

        // Columns {1,2},{1,3},{2,3}; rows {1},{2},{3}.
        let a = build_inclusion_matrix(&params(3, 1, 2, 2)).unwrap();
        let expected =
            ExactMatrix::from_integers(FieldSpec::GF2, 3, 3, &[1, 1, 0, 1, 0, 1, 0, 1, 1]).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn budget_is_enforced() {
        let err = build_inclusion_matrix_with_budget(&params(10, 3, 5, 2), MemoryBudget(1000))
            .unwrap_err();
        assert!(matches!(err, Error::MemoryBudget { needed, .. } if needed == 120 * 252 * 4));
        // Falls back to streaming, whose 120 x 2 word basis fits in 2000 bytes.
        assert_eq!(streaming_bytes(&params(10, 3, 5, 2)), 1920);
        assert_eq!(
            elimination_rank(&params(10, 3, 5, 2), MemoryBudget(2000)).unwrap(),
            build_inclusion_matrix(&params(10, 3, 5, 2)).unwrap().rank()
        );
        assert!(elimination_rank(&params(10, 3, 5, 2), MemoryBudget(1000)).is_err());
        assert!(elimination_rank(&params(6, 1, 2, 0), MemoryBudget(10)).is_err());
    }

    #[test]
    fn huge_parameters_fail_cleanly() {
        let huge = params(200, 100, 150, 3);
        assert_eq!(dense_bytes(&huge), u128::MAX);
        assert!(matches!(
            elimination_rank(&huge, MemoryBudget::DEFAULT),
            Err(Error::MemoryBudget { .. })
        ));
    }

    #[test]
    fn column_of_examples() {
        let s = |m, e: &[u32]| Subset::new(m, e.to_vec()).unwrap();
        assert_eq!(
            column_of(&params(4, 1, 2, 2), &s(4, &[1, 2])).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            column_of(&params(5, 3, 3, 2), &s(5, &[1, 2, 3])).unwrap(),
            vec![0]
        );
        assert_eq!(
            column_of(&params(4, 2, 3, 2), &s(4, &[2, 3, 4])).unwrap(),
            vec![2, 4, 5]
        );
        assert!(column_of(&params(4, 2, 3, 2), &s(4, &[2, 3])).is_err());
    }

    #[test]
    fn streaming_examples() {
        assert_eq!(streaming_rank(&params(4, 1, 2, 2)).unwrap(), 3);
        assert_eq!(streaming_rank(&params(6, 0, 3, 5)).unwrap(), 1);
        assert_eq!(streaming_rank(&params(5, 2, 2, 3)).unwrap(), 10);
        assert_eq!(
            streaming_rank(&params(4, 1, 2, 0)),
            Err(Error::StreamingCharacteristicZero)
        );
    }

    #[test]
    fn composition_small() {
        assert!(composition_identity_holds(5, 1, 2, 3).unwrap());
        assert!(composition_identity_holds(4, 0, 2, 4).unwrap());
    }

    #[test]
    fn dump_round_trip() {
        let a = build_inclusion_matrix(&params(4, 1, 2, 3)).unwrap();
        let text = dump_matrix(&a);
        assert!(text.starts_with("4 6 3\n1 1 0 1 0 0\n"));
        assert_eq!(parse_dump(&text).unwrap(), a);
        assert!(parse_dump("2 2 2\n1 0\n").is_err());
        assert!(parse_dump("2 2 2\n1 0 1\n0 1\n").is_err());
        assert!(parse_dump("2 2 4\n1 0\n0 1\n").is_err());
    }
}
