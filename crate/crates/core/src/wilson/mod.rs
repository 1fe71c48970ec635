//! Closed-form rank of inclusion matrices over a field of characteristic
//! `p`: with `i <= min(n, m - n)`,
//!
//! ```text
//! rank A_i^n(m) = sum over j in 0..=i with p ∤ C(n-j, i-j) of C(m, j) - C(m, j-1)
//! ```
//!
//! The `j = i` term has `C(n-i, 0) = 1` and is therefore always included.
//! In characteristic 0 every term is included and the sum telescopes to
//! `C(m, i)`: the matrix has full rank.

mod table;

use num_bigint::BigUint;
use serde::Serialize;

pub use table::{rank_table, render_table, PairRule, TableFormat, TableRow, TableSpec};

use crate::combinatorics::{binomial, p_divides_binomial};
use crate::error::Result;
use crate::inclusion::{normalize_params, InclusionParams, NormalizedParams};

/// One `j` of the rank sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankTerm {
    pub j: u32,
    /// `p ∤ C(n-j, i-j)` for the normalized `(i, n)`.
    pub included: bool,
    /// `C(m, j) - C(m, j-1)`, whether or not it is included.
    #[serde(serialize_with = "crate::bignum::serialize")]
    pub value: BigUint,
}

/// The formula evaluated term by term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankBreakdown {
    pub raw: InclusionParams,
    pub normalized: NormalizedParams,
    pub terms: Vec<RankTerm>,
    #[serde(serialize_with = "crate::bignum::serialize")]
    pub total: BigUint,
}

impl RankBreakdown {
    /// Recomputes `total` from the included terms.
    pub fn sum_included(&self) -> BigUint {
        self.terms
            .iter()
            .filter(|t| t.included)
            .map(|t| &t.value)
            .sum()
    }
}

pub fn wilson_rank(raw: InclusionParams) -> Result<RankBreakdown> {
    let normalized = normalize_params(raw)?;
    let InclusionParams { m, i, n, field } = normalized.params;
    let p = u64::from(field.characteristic());
    let m64 = u64::from(m);
    let terms = (0..=i)
        .map(|j| {
            let included = !p_divides_binomial(p, u64::from(n - j), u64::from(i - j))?;
            let value = binomial(m64, i64::from(j)) - binomial(m64, i64::from(j) - 1);
            Ok(RankTerm { j, included, value })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = RankBreakdown {
        raw,
        normalized,
        terms,
        total: BigUint::default(),
    };
    out.total = out.sum_included();
    Ok(out)
}
