//! Dense exact linear algebra over GF(p) and Q.
//!
//! Matrices are immutable values once built. Rank and echelon computations
//! dispatch on the characteristic: GF(2) rows are bit-packed and eliminated
//! with word-wide XOR, odd primes use `u32` residues with Barrett reduction,
//! and the rationals use fraction-free (Bareiss) elimination for rank and
//! `BigRational` Gauss-Jordan where a reduced echelon form is needed.
//! Pivots are always the first nonzero entry scanning columns left to right,
//! rows top to bottom, so reduced forms are canonical.

mod field;
pub(crate) mod gf2;
pub(crate) mod modp;
mod rational;
mod subspace;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use field::{FieldSpec, Scalar, MAX_CHARACTERISTIC};
pub use subspace::SubspaceBasis;

use crate::error::{Error, Result};
use field::{rational_mod, Modulus};

/// Prime used to screen characteristic-0 ranks before exact elimination.
const SCREEN_PRIME: u32 = 2_147_483_647;

/// Row-major storage of field elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Entries {
    /// Residues in `[0, p)`.
    Residues(Vec<u32>),
    /// Reduced fractions.
    Rationals(Vec<BigRational>),
}

impl Entries {
    fn zeros(field: FieldSpec, len: usize) -> Entries {
        if field.is_rational() {
            Entries::Rationals(vec![BigRational::zero(); len])
        } else {
            Entries::Residues(vec![0; len])
        }
    }

    fn len(&self) -> usize {
        match self {
            Entries::Residues(v) => v.len(),
            Entries::Rationals(v) => v.len(),
        }
    }

    fn get(&self, idx: usize) -> Scalar {
        match self {
            Entries::Residues(v) => Scalar::Residue(v[idx]),
            Entries::Rationals(v) => Scalar::Rational(v[idx].clone()),
        }
    }

    fn is_zero_at(&self, idx: usize) -> bool {
        match self {
            Entries::Residues(v) => v[idx] == 0,
            Entries::Rationals(v) => v[idx].is_zero(),
        }
    }

    fn all_zero(&self) -> bool {
        match self {
            Entries::Residues(v) => v.iter().all(|&x| x == 0),
            Entries::Rationals(v) => v.iter().all(Zero::is_zero),
        }
    }

    fn from_integers(field: FieldSpec, values: &[i64]) -> Entries {
        match field.characteristic() {
            0 => Entries::Rationals(
                values
                    .iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect(),
            ),
            p => Entries::Residues(
                values
                    .iter()
                    .map(|&v| v.rem_euclid(i64::from(p)) as u32)
                    .collect(),
            ),
        }
    }
}

/// A vector of field elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactVector {
    field: FieldSpec,
    entries: Entries,
}

impl ExactVector {
    pub fn zeros(field: FieldSpec, len: usize) -> Self {
        ExactVector {
            field,
            entries: Entries::zeros(field, len),
        }
    }

    pub fn from_integers(field: FieldSpec, values: &[i64]) -> Self {
        ExactVector {
            field,
            entries: Entries::from_integers(field, values),
        }
    }

    /// Builds a vector from entries that must already belong to `field`.
    pub fn from_entries(field: FieldSpec, entries: Entries) -> Result<Self> {
        check_entries(field, &entries)?;
        Ok(ExactVector { field, entries })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, idx: usize) -> Scalar {
        self.entries.get(idx)
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.all_zero()
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.entries.is_zero_at(i))
            .collect()
    }

    /// First index where `self` and `other` differ.
    pub fn first_difference(&self, other: &ExactVector) -> Option<usize> {
        if self.len() != other.len() {
            return Some(self.len().min(other.len()));
        }
        (0..self.len()).find(|&i| self.get(i) != other.get(i))
    }

    pub fn as_row(&self) -> ExactMatrix {
        ExactMatrix {
            field: self.field,
            n_rows: 1,
            n_cols: self.len(),
            entries: self.entries.clone(),
        }
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        f.write_str("]")
    }
}

fn check_entries(field: FieldSpec, entries: &Entries) -> Result<()> {
    match (field.characteristic(), entries) {
        (0, Entries::Rationals(_)) => Ok(()),
        (p, Entries::Residues(v)) if p > 0 => {
            if v.iter().all(|&x| x < p) {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("residue not reduced mod {p}")))
            }
        }
        (p, _) => Err(Error::InvalidParams(format!(
            "entry storage does not match characteristic {p}"
        ))),
    }
}

/// A dense matrix over GF(p) or Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    n_rows: usize,
    n_cols: usize,
    entries: Entries,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, n_rows: usize, n_cols: usize) -> Self {
        ExactMatrix {
            field,
            n_rows,
            n_cols,
            entries: Entries::zeros(field, n_rows * n_cols),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::from_fn(field, n, n, |r, c| i64::from(r == c))
    }

    pub fn from_fn(
        field: FieldSpec,
        n_rows: usize,
        n_cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let values: Vec<i64> = (0..n_rows * n_cols)
            .map(|idx| f(idx / n_cols.max(1), idx % n_cols.max(1)))
            .collect();
        ExactMatrix {
            field,
            n_rows,
            n_cols,
            entries: Entries::from_integers(field, &values),
        }
    }

    /// Row-major integer values, reduced into `field`.
    pub fn from_integers(
        field: FieldSpec,
        n_rows: usize,
        n_cols: usize,
        values: &[i64],
    ) -> Result<Self> {
        if values.len() != n_rows * n_cols {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {n_rows}x{n_cols} matrix",
                values.len()
            )));
        }
        Ok(ExactMatrix {
            field,
            n_rows,
            n_cols,
            entries: Entries::from_integers(field, values),
        })
    }

    pub fn from_entries(
        field: FieldSpec,
        n_rows: usize,
        n_cols: usize,
        entries: Entries,
    ) -> Result<Self> {
        if entries.len() != n_rows * n_cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {n_rows}x{n_cols} matrix",
                entries.len()
            )));
        }
        check_entries(field, &entries)?;
        Ok(ExactMatrix {
            field,
            n_rows,
            n_cols,
            entries,
        })
    }

    /// Stacks equal-length vectors as rows.
    pub fn from_rows(field: FieldSpec, n_cols: usize, rows: &[ExactVector]) -> Result<Self> {
        let mut out = ExactMatrix::zeros(field, 0, n_cols);
        for row in rows {
            field.check_same(row.field)?;
            if row.len() != n_cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {n_cols} columns",
                    row.len()
                )));
            }
            match (&mut out.entries, &row.entries) {
                (Entries::Residues(a), Entries::Residues(b)) => a.extend_from_slice(b),
                (Entries::Rationals(a), Entries::Rationals(b)) => a.extend_from_slice(b),
                _ => unreachable!("field checked"),
            }
            out.n_rows += 1;
        }
        Ok(out)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.n_rows && c < self.n_cols, "index out of bounds");
        self.entries.get(r * self.n_cols + c)
    }

    pub fn row(&self, r: usize) -> ExactVector {
        let range = r * self.n_cols..(r + 1) * self.n_cols;
        let entries = match &self.entries {
            Entries::Residues(v) => Entries::Residues(v[range].to_vec()),
            Entries::Rationals(v) => Entries::Rationals(v[range].to_vec()),
        };
        ExactVector {
            field: self.field,
            entries,
        }
    }

    pub fn column(&self, c: usize) -> ExactVector {
        let idx = (0..self.n_rows).map(|r| r * self.n_cols + c);
        let entries = match &self.entries {
            Entries::Residues(v) => Entries::Residues(idx.map(|i| v[i]).collect()),
            Entries::Rationals(v) => Entries::Rationals(idx.map(|i| v[i].clone()).collect()),
        };
        ExactVector {
            field: self.field,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.all_zero()
    }

    /// Nonzero entries in row `r`.
    pub fn row_weight(&self, r: usize) -> usize {
        (0..self.n_cols)
            .filter(|&c| !self.entries.is_zero_at(r * self.n_cols + c))
            .count()
    }

    pub fn column_weight(&self, c: usize) -> usize {
        (0..self.n_rows)
            .filter(|&r| !self.entries.is_zero_at(r * self.n_cols + c))
            .count()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let (rows, cols) = (self.n_rows, self.n_cols);
        let idx = (0..rows * cols).map(|t| (t % rows) * cols + t / rows);
        let entries = match &self.entries {
            Entries::Residues(v) => Entries::Residues(idx.map(|i| v[i]).collect()),
            Entries::Rationals(v) => Entries::Rationals(idx.map(|i| v[i].clone()).collect()),
        };
        ExactMatrix {
            field: self.field,
            n_rows: cols,
            n_cols: rows,
            entries,
        }
    }

    /// Multiplies every entry by an integer.
    pub fn scale(&self, factor: &BigInt) -> ExactMatrix {
        let entries = match (&self.entries, self.field.from_bigint(factor)) {
            (Entries::Residues(v), Scalar::Residue(f)) => {
                let m = Modulus::new(self.field.characteristic());
                Entries::Residues(v.iter().map(|&x| m.mul(x, f)).collect())
            }
            (Entries::Rationals(v), Scalar::Rational(f)) => {
                Entries::Rationals(v.iter().map(|x| x * &f).collect())
            }
            _ => unreachable!("scalar drawn from the matrix field"),
        };
        ExactMatrix {
            entries,
            ..self.clone()
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.field.check_same(other.field)?;
        if self.n_cols != other.n_cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.n_cols, self.n_cols
            )));
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Residues(a), Entries::Residues(b)) => {
                Entries::Residues(a.iter().chain(b).copied().collect())
            }
            (Entries::Rationals(a), Entries::Rationals(b)) => {
                Entries::Rationals(a.iter().chain(b).cloned().collect())
            }
            _ => unreachable!("field checked"),
        };
        Ok(ExactMatrix {
            field: self.field,
            n_rows: self.n_rows + other.n_rows,
            n_cols: self.n_cols,
            entries,
        })
    }

    pub fn mat_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.field.check_same(other.field)?;
        if self.n_cols != other.n_rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        let (n, inner, k) = (self.n_rows, self.n_cols, other.n_cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Residues(a), Entries::Residues(b)) => {
                let m = Modulus::new(self.field.characteristic());
                let mut out = vec![0u32; n * k];
                for r in 0..n {
                    let acc = &mut out[r * k..(r + 1) * k];
                    for t in 0..inner {
                        let f = a[r * inner + t];
                        if f == 0 {
                            continue;
                        }
                        for (x, &y) in acc.iter_mut().zip(&b[t * k..(t + 1) * k]) {
                            *x = m.reduce(u64::from(*x) + u64::from(f) * u64::from(y));
                        }
                    }
                }
                Entries::Residues(out)
            }
            (Entries::Rationals(a), Entries::Rationals(b)) => {
                let mut out = vec![BigRational::zero(); n * k];
                for r in 0..n {
                    for t in 0..inner {
                        let f = &a[r * inner + t];
                        if f.is_zero() {
                            continue;
                        }
                        for (c, y) in b[t * k..(t + 1) * k].iter().enumerate() {
                            if y.is_zero() {
                                continue;
                            }
                            let x = &mut out[r * k + c];
                            if f.is_one() {
                                *x += y;
                            } else {
                                *x += f * y;
                            }
                        }
                    }
                }
                Entries::Rationals(out)
            }
            _ => unreachable!("field checked"),
        };
        Ok(ExactMatrix {
            field: self.field,
            n_rows: n,
            n_cols: k,
            entries,
        })
    }

    pub fn mat_vec(&self, v: &ExactVector) -> Result<ExactVector> {
        self.field.check_same(v.field)?;
        if v.len() != self.n_cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.n_rows,
                self.n_cols,
                v.len()
            )));
        }
        let col = ExactMatrix {
            field: self.field,
            n_rows: v.len(),
            n_cols: 1,
            entries: v.entries.clone(),
        };
        let prod = self.mat_mul(&col)?;
        Ok(ExactVector {
            field: self.field,
            entries: prod.entries,
        })
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        if self.n_rows == 0 || self.n_cols == 0 {
            return 0;
        }
        match (self.field.characteristic(), &self.entries) {
            (2, Entries::Residues(_)) => gf2::rank(self.bit_rows(), self.n_cols),
            (p, Entries::Residues(_)) => modp::rank(self.residue_rows(), self.n_cols, p),
            (_, Entries::Rationals(v)) => {
                let full = self.n_rows.min(self.n_cols);
                // rank mod q never exceeds rank over Q, so a full-rank
                // reduction certifies the answer without big-integer work.
                if let Some(reduced) = v
                    .iter()
                    .map(|q| rational_mod(q, SCREEN_PRIME))
                    .collect::<Option<Vec<u32>>>()
                {
                    let rows = split_rows(&reduced, self.n_rows, self.n_cols);
                    if modp::rank(rows, self.n_cols, SCREEN_PRIME) == full {
                        return full;
                    }
                }
                self.rank_fraction_free()
            }
        }
    }

    /// Rank over Q by Bareiss elimination alone, without modular screening.
    /// For prime fields this is the same as [`ExactMatrix::rank`].
    pub fn rank_fraction_free(&self) -> usize {
        match &self.entries {
            Entries::Rationals(_) => {
                rational::bareiss_rank(rational::integer_rows(&self.rational_rows()), self.n_cols)
            }
            Entries::Residues(_) => self.rank(),
        }
    }

    /// Reduced row-echelon form with its pivot columns. Zero rows are
    /// dropped, so the result has `rank` rows.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let n_cols = self.n_cols;
        let (entries, pivots) = match (self.field.characteristic(), &self.entries) {
            (2, Entries::Residues(_)) => {
                let (rows, pivots) = gf2::rref(self.bit_rows(), n_cols);
                let flat = rows.iter().flat_map(|r| r.to_residues(n_cols)).collect();
                (Entries::Residues(flat), pivots)
            }
            (p, Entries::Residues(_)) => {
                let (rows, pivots) = modp::rref(self.residue_rows(), n_cols, p);
                (Entries::Residues(rows.concat()), pivots)
            }
            (_, Entries::Rationals(_)) => {
                let (rows, pivots) = rational::rref(self.rational_rows(), n_cols);
                (Entries::Rationals(rows.concat()), pivots)
            }
        };
        let n_rows = pivots.len();
        (
            ExactMatrix {
                field: self.field,
                n_rows,
                n_cols,
                entries,
            },
            pivots,
        )
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let (reduced, pivots) = self.rref();
        let n = self.n_cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = self.field.zero_vec(n);
            v.set_one(f);
            for (r, &pc) in pivots.iter().enumerate() {
                let x = reduced.get(r, f);
                if !x.is_zero() {
                    v.set_neg(pc, &x);
                }
            }
            vectors.push(v.into_vector(self.field));
        }
        let basis = SubspaceBasis::span(self.field, n, &vectors)
            .expect("kernel vectors share field and length");
        debug_assert_eq!(pivots.len() + basis.dim(), n, "rank-nullity");
        basis
    }

    /// Basis of the span of the columns.
    pub fn column_space_basis(&self) -> SubspaceBasis {
        SubspaceBasis::from_row_space(&self.transpose())
    }

    /// Bytes a dense `n_rows x n_cols` matrix over `field` occupies.
    pub fn dense_bytes(field: FieldSpec, n_rows: u128, n_cols: u128) -> u128 {
        let per_entry = if field.is_rational() {
            std::mem::size_of::<BigRational>() as u128
        } else {
            4
        };
        n_rows.saturating_mul(n_cols).saturating_mul(per_entry)
    }

    fn bit_rows(&self) -> Vec<gf2::BitRow> {
        match &self.entries {
            Entries::Residues(v) => v
                .chunks(self.n_cols.max(1))
                .take(self.n_rows)
                .map(gf2::BitRow::from_residues)
                .collect(),
            Entries::Rationals(_) => unreachable!("GF(2) matrices hold residues"),
        }
    }

    fn residue_rows(&self) -> Vec<Vec<u32>> {
        match &self.entries {
            Entries::Residues(v) => split_rows(v, self.n_rows, self.n_cols),
            Entries::Rationals(_) => unreachable!("prime-field matrices hold residues"),
        }
    }

    fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        match &self.entries {
            Entries::Rationals(v) => split_rows(v, self.n_rows, self.n_cols),
            Entries::Residues(_) => unreachable!("rational matrices hold fractions"),
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn split_rows<T: Clone>(flat: &[T], n_rows: usize, n_cols: usize) -> Vec<Vec<T>> {
    (0..n_rows)
        .map(|r| flat[r * n_cols..(r + 1) * n_cols].to_vec())
        .collect()
}

/// Mutable scratch vector used while assembling kernel vectors.
enum Scratch {
    Residues(Vec<u32>, u32),
    Rationals(Vec<BigRational>),
}

impl FieldSpec {
    fn zero_vec(self, n: usize) -> Scratch {
        match self.characteristic() {
            0 => Scratch::Rationals(vec![BigRational::zero(); n]),
            p => Scratch::Residues(vec![0; n], p),
        }
    }
}

impl Scratch {
    fn set_one(&mut self, idx: usize) {
        match self {
            Scratch::Residues(v, _) => v[idx] = 1,
            Scratch::Rationals(v) => v[idx] = BigRational::one(),
        }
    }

    fn set_neg(&mut self, idx: usize, x: &Scalar) {
        match (self, x) {
            (Scratch::Residues(v, p), Scalar::Residue(r)) => v[idx] = (*p - r) % *p,
            (Scratch::Rationals(v), Scalar::Rational(q)) => v[idx] = -q.clone(),
            _ => unreachable!("scalar drawn from the same field"),
        }
    }

    fn into_vector(self, field: FieldSpec) -> ExactVector {
        let entries = match self {
            Scratch::Residues(v, _) => Entries::Residues(v),
            Scratch::Rationals(v) => Entries::Rationals(v),
        };
        ExactVector { field, entries }
    }
}
