use super::{ExactMatrix, ExactVector, FieldSpec};
use crate::error::{Error, Result};

/// A subspace of `field^ambient_dim`, held as the rows of its reduced
/// row-echelon basis. The echelon form is canonical, so two bases of the
/// same subspace compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: ExactMatrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: ExactMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[ExactVector]) -> Result<Self> {
        let m = ExactMatrix::from_rows(field, ambient_dim, vectors)?;
        Ok(Self::from_row_space(&m))
    }

    /// Span of the rows of `m`.
    pub fn from_row_space(m: &ExactMatrix) -> Self {
        let (basis, pivots) = m.rref();
        SubspaceBasis {
            ambient_dim: m.n_cols(),
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Basis vectors as the rows of a matrix in reduced row-echelon form.
    pub fn vectors(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &SubspaceBasis) -> Result<()> {
        self.field().check_same(other.field())?;
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::ShapeMismatch(format!(
                "subspaces of dimension-{} and dimension-{} spaces",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// `{x : <x, v> = 0 for every v in self}` under the standard bilinear
    /// form. It has dimension `ambient_dim - dim` over any field, hence
    /// taking it twice returns the original subspace.
    pub fn annihilator(&self) -> SubspaceBasis {
        if self.dim() == 0 {
            return SubspaceBasis::full(self.field(), self.ambient_dim);
        }
        self.basis.kernel_basis()
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_compatible(other)?;
        Ok(SubspaceBasis::from_row_space(
            &self.basis.vstack(&other.basis)?,
        ))
    }

    /// `self ∩ other`, computed as the annihilator of the sum of the two
    /// annihilators.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_compatible(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(SubspaceBasis::zero(self.field(), self.ambient_dim));
        }
        if self.dim() == self.ambient_dim {
            return Ok(other.clone());
        }
        if other.dim() == self.ambient_dim {
            return Ok(self.clone());
        }
        let both = self.annihilator().sum(&other.annihilator())?;
        Ok(both.annihilator())
    }

    pub fn contains(&self, v: &ExactVector) -> Result<bool> {
        self.field().check_same(v.field())?;
        if v.len() != self.ambient_dim {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in a dimension-{} space",
                v.len(),
                self.ambient_dim
            )));
        }
        let extended = self.basis.vstack(&v.as_row())?;
        Ok(extended.rank() == self.dim())
    }

    /// Image of the subspace under `map` (acting on column vectors).
    pub fn image(&self, map: &ExactMatrix) -> Result<SubspaceBasis> {
        let images = map.mat_mul(&self.basis.transpose())?;
        Ok(images.column_space_basis())
    }
}
