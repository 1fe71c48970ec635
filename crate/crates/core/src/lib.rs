//! Exact ranks of set-inclusion matrices.
//!
//! The inclusion matrix `A_i^n(m)` has rows indexed by the `i`-subsets of
//! `[m]`, columns by the `n`-subsets, and a 1 wherever the row subset is
//! contained in the column subset. This crate computes its rank over GF(p)
//! and Q two ways: by a closed-form sum over Specht-module dimensions
//! ([`wilson`]) and by exact Gaussian elimination ([`linalg`],
//! [`inclusion`]). The [`specht`] module rebuilds the closed form layer by
//! layer from polytabloids and the homomorphisms `ψ_j`, so every step of
//! the argument behind it can be checked numerically.
//!
//! Ranks depend only on the characteristic of the field, so prime fields
//! cover every finite field; extension fields are not modelled.

mod bignum;
pub mod combinatorics;
pub mod error;
pub mod inclusion;
pub mod linalg;
pub mod specht;
pub mod wilson;

pub use combinatorics::{
    binomial, p_divides_binomial, specht_dim, subset_rank, subset_unrank, subsets_iter, Subset,
    SubsetIndex,
};
pub use error::{Error, Result};
pub use inclusion::{
    build_inclusion_matrix, build_inclusion_matrix_with_budget, column_of, elimination_rank,
    normalize_params, streaming_rank, InclusionParams, MemoryBudget, NormalizedParams,
};
pub use linalg::{Entries, ExactMatrix, ExactVector, FieldSpec, Scalar, SubspaceBasis};
pub use specht::{
    check_psi_on_polytabloid, filtration_audit, polytabloid, psi_apply, specht_span_rank,
    stabilizer_transpositions, FiltrationLayer, FiltrationReport, ModuleVector, PsiVerdict,
    TwoRowTableau,
};
pub use wilson::{wilson_rank, RankBreakdown, RankTerm};
