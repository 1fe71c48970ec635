//! Parameter ladders shared by the benchmarks.

use incrank_core::{FieldSpec, InclusionParams};

/// `A_i^n(m)` over GF(p) for each `m` in `ms`.
pub fn ladder(p: u64, i: u32, n: u32, ms: impl IntoIterator<Item = u32>) -> Vec<InclusionParams> {
    let field = FieldSpec::new(p).expect("prime characteristic");
    ms.into_iter()
        .map(|m| InclusionParams::new(m, i, n, field).expect("i <= n <= m"))
        .collect()
}
