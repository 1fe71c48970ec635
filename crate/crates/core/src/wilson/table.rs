use std::fmt::Write as _;

use serde::Serialize;

use super::{wilson_rank, RankBreakdown, RankTerm};
use crate::error::{Error, Result};
use crate::inclusion::{elimination_rank, InclusionParams, MemoryBudget};
use crate::linalg::FieldSpec;

/// Which `(n, i)` pairs a table covers for each `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    /// `i <= min(n, m - n)`.
    Normalized,
    /// Every `0 <= i <= n <= m`.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Markdown,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "md" | "markdown" => Ok(TableFormat::Markdown),
            other => Err(Error::InvalidParams(format!(
                "unknown table format `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TableSpec {
    pub field: FieldSpec,
    pub m_min: u32,
    pub m_max: u32,
    pub pairs: PairRule,
    /// Also compute the rank by elimination and compare.
    pub oracle: bool,
    pub budget: MemoryBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub breakdown: RankBreakdown,
    pub oracle_rank: Option<u64>,
}

impl TableRow {
    /// `None` when no oracle rank was computed.
    pub fn matches(&self) -> Option<bool> {
        self.oracle_rank
            .map(|r| self.breakdown.total == num_bigint::BigUint::from(r))
    }
}

/// Rows ordered by `m`, then `n`, then `i`. An empty `m` range gives no
/// rows.
pub fn rank_table(spec: &TableSpec) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for m in spec.m_min..=spec.m_max {
        for n in 0..=m {
            for i in 0..=n {
                if spec.pairs == PairRule::Normalized && i > n.min(m - n) {
                    continue;
                }
                let params = InclusionParams::new(m, i, n, spec.field)?;
                let breakdown = wilson_rank(params)?;
                let oracle_rank = if spec.oracle {
                    Some(elimination_rank(&params, spec.budget)? as u64)
                } else {
                    None
                };
                rows.push(TableRow {
                    breakdown,
                    oracle_rank,
                });
            }
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "m,n,i,p,formula_rank,oracle_rank,match";

#[derive(Serialize)]
struct JsonNormalized {
    m: u32,
    n: u32,
    i: u32,
    transposed: bool,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    m: u32,
    n: u32,
    i: u32,
    p: u32,
    #[serde(serialize_with = "crate::bignum::serialize")]
    formula_rank: &'a num_bigint::BigUint,
    oracle_rank: Option<u64>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    normalized: JsonNormalized,
    terms: &'a [RankTerm],
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn render_table(rows: &[TableRow], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in rows {
                let raw = &row.breakdown.raw;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    raw.m,
                    raw.n,
                    raw.i,
                    raw.p(),
                    row.breakdown.total,
                    opt(row.oracle_rank),
                    opt(row.matches())
                );
            }
        }
        TableFormat::Json => {
            let doc: Vec<JsonRow> = rows
                .iter()
                .map(|row| {
                    let raw = &row.breakdown.raw;
                    let norm = &row.breakdown.normalized;
                    JsonRow {
                        m: raw.m,
                        n: raw.n,
                        i: raw.i,
                        p: raw.p(),
                        formula_rank: &row.breakdown.total,
                        oracle_rank: row.oracle_rank,
                        matches: row.matches(),
                        normalized: JsonNormalized {
                            m: norm.params.m,
                            n: norm.params.n,
                            i: norm.params.i,
                            transposed: norm.transposed,
                        },
                        terms: &row.breakdown.terms,
                    }
                })
                .collect();
            out = serde_json::to_string_pretty(&doc).expect("table rows serialize");
            out.push('\n');
        }
        TableFormat::Markdown => {
            out.push_str("| m | n | i | p | formula_rank | oracle_rank | match |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            for row in rows {
                let raw = &row.breakdown.raw;
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    raw.m,
                    raw.n,
                    raw.i,
                    raw.p(),
                    row.breakdown.total,
                    opt(row.oracle_rank),
                    opt(row.matches())
                );
            }
        }
    }
    out
}
