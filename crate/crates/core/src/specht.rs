//! Two-row tableaux, polytabloids and the homomorphisms `ψ_j`, used to
//! rebuild the rank of an inclusion matrix layer by layer.
//!
//! A two-row tabloid is stored as the set of its second-row entries, so the
//! permutation module `M^(m-k, k)` is the space of coefficient vectors
//! indexed by `k`-subsets of `[m]` in colex order. Tableaux keep full row
//! orderings because a polytabloid depends on which entries share a column.
//!
//! `ψ_j` sends a `k`-subset to the sum of its `j`-subsets; its matrix is the
//! inclusion matrix `A_j^k(m)`. In particular `ψ_0` maps into the
//! one-dimensional module `M^(m)` as the sum-of-coefficients functional.
//!
//! The `j`-column stabiliser of a tableau is generated by the transpositions
//! swapping the top and bottom entries of its first `j` columns.
//!
//! Dimensions are all that is computed here, so which symmetric group acts
//! (the modules are `S_m`-modules) plays no role.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::combinatorics::{binomial_u64, specht_dim, subsets_iter, BinomialTable, Subset};
use crate::error::{Error, Result};
use crate::inclusion::{build_inclusion_matrix, normalize_params, InclusionParams};
use crate::linalg::{ExactMatrix, ExactVector, FieldSpec, Scalar, SubspaceBasis};
use crate::wilson::wilson_rank;

/// An arrangement of `[m]` in two rows. The second row may be longer than
/// the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoRowTableau {
    first_row: Vec<u32>,
    second_row: Vec<u32>,
}

impl TwoRowTableau {
    /// The rows must together be a permutation of `1..=m`.
    pub fn new(first_row: Vec<u32>, second_row: Vec<u32>) -> Result<Self> {
        let m = first_row.len() + second_row.len();
        let mut seen = vec![false; m + 1];
        for &e in first_row.iter().chain(&second_row) {
            let idx = e as usize;
            if idx == 0 || idx > m {
                return Err(Error::InvalidTableau(format!("entry {e} outside 1..={m}")));
            }
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::InvalidTableau(format!("entry {e} repeated")));
            }
        }
        Ok(TwoRowTableau {
            first_row,
            second_row,
        })
    }

    pub fn first_row(&self) -> &[u32] {
        &self.first_row
    }

    pub fn second_row(&self) -> &[u32] {
        &self.second_row
    }

    pub fn m(&self) -> u32 {
        (self.first_row.len() + self.second_row.len()) as u32
    }

    /// Number of full columns, `min` of the two row lengths.
    pub fn columns(&self) -> usize {
        self.first_row.len().min(self.second_row.len())
    }

    /// The tabloid `{t}`, as its second-row subset.
    pub fn tabloid(&self) -> Subset {
        Subset::from_unsorted(self.m(), self.second_row.clone()).expect("validated tableau")
    }

    /// Keeps the first `j` second-row entries in place and moves the rest,
    /// in order, to the end of the first row.
    pub fn moved(&self, j: usize) -> TwoRowTableau {
        let j = j.min(self.second_row.len());
        let mut first_row = self.first_row.clone();
        first_row.extend_from_slice(&self.second_row[j..]);
        TwoRowTableau {
            first_row,
            second_row: self.second_row[..j].to_vec(),
        }
    }
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |row: &[u32]| row.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "({} / {})",
            join(&self.first_row),
            join(&self.second_row)
        )
    }
}

/// An element of `M^(m-k, k)`: coefficients on the `k`-subsets of `[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    m: u32,
    k: u32,
    coeffs: ExactVector,
}

impl ModuleVector {
    pub fn new(m: u32, k: u32, coeffs: ExactVector) -> Result<Self> {
        let expected = binomial_u64(u64::from(m), u64::from(k))
            .ok_or_else(|| Error::InvalidParams("module too large".into()))?;
        if k > m || coeffs.len() as u64 != expected {
            return Err(Error::ShapeMismatch(format!(
                "M^({}, {k}) has dimension {expected}, got {} coefficients",
                i64::from(m) - i64::from(k),
                coeffs.len()
            )));
        }
        Ok(ModuleVector { m, k, coeffs })
    }

    pub fn zero(field: FieldSpec, m: u32, k: u32) -> Self {
        let len = binomial_u64(u64::from(m), u64::from(k)).expect("dimension fits") as usize;
        ModuleVector {
            m,
            k,
            coeffs: ExactVector::zeros(field, len),
        }
    }

    /// A single tabloid with coefficient 1.
    pub fn basis(field: FieldSpec, tabloid: &Subset) -> Self {
        let table = BinomialTable::new(tabloid.m());
        let mut v = ModuleVector::zero(field, tabloid.m(), tabloid.len() as u32);
        let mut ints = vec![0i64; v.coeffs.len()];
        ints[table.rank_sorted(tabloid.elements()) as usize] = 1;
        v.coeffs = ExactVector::from_integers(field, &ints);
        v
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs.field()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &ExactVector {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Nonzero terms as (tabloid, coefficient), in colex order.
    pub fn terms(&self) -> Vec<(Subset, Scalar)> {
        let tabloids: Vec<Subset> = subsets_iter(self.m, self.k).collect();
        self.coeffs
            .support()
            .into_iter()
            .map(|idx| (tabloids[idx].clone(), self.coeffs.get(idx)))
            .collect()
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (t, (s, c)) in terms.iter().enumerate() {
            if t > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{s}")?;
        }
        Ok(())
    }
}

/// Generators of the `j`-column stabiliser: the pairs
/// `(first_row[c], second_row[c])` for the first `j` columns.
pub fn stabilizer_transpositions(t: &TwoRowTableau, j: usize) -> Result<Vec<(u32, u32)>> {
    if j > t.columns() {
        return Err(Error::InvalidParams(format!(
            "j={j} exceeds the {} columns of {t}",
            t.columns()
        )));
    }
    Ok((0..j).map(|c| (t.first_row[c], t.second_row[c])).collect())
}

/// Integer coefficients of `e^j_t`, indexed by colex rank.
fn polytabloid_integers(t: &TwoRowTableau, j: usize, table: &BinomialTable) -> Vec<i64> {
    let k = t.second_row.len();
    let len = table.get(t.m(), k as u32) as usize;
    let mut coeffs = vec![0i64; len];
    let mut row = vec![0u32; k];
    for mask in 0u64..(1u64 << j) {
        row.copy_from_slice(&t.second_row);
        for (c, (slot, &head)) in row.iter_mut().zip(&t.first_row).take(j).enumerate() {
            if mask >> c & 1 == 1 {
                *slot = head;
            }
        }
        row.sort_unstable();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        coeffs[table.rank_sorted(&row) as usize] += sign;
    }
    coeffs
}

/// The `j`-polytabloid `e^j_t = κ_j(t){t}`: the signed sum over subsets `S`
/// of the first `j` columns of the tabloid obtained by swapping the entries
/// of every column in `S`, with sign `(-1)^|S|`. Signs are computed in the
/// integers and then reduced, so GF(2) needs no special case.
pub fn polytabloid(t: &TwoRowTableau, j: usize, field: FieldSpec) -> Result<ModuleVector> {
    stabilizer_transpositions(t, j)?;
    let table = BinomialTable::new(t.m());
    let ints = polytabloid_integers(t, j, &table);
    ModuleVector::new(
        t.m(),
        t.second_row.len() as u32,
        ExactVector::from_integers(field, &ints),
    )
}

/// The matrix of `ψ_j : M^(m-k, k) -> M^(m-j, j)`, which is `A_j^k(m)`.
pub fn psi_matrix(m: u32, k: u32, j: u32, field: FieldSpec) -> Result<ExactMatrix> {
    build_inclusion_matrix(&InclusionParams::new(m, j, k, field)?)
}

/// `ψ_j(v)`: each `k`-subset goes to the sum of its `j`-subsets.
pub fn psi_apply(v: &ModuleVector, j: u32) -> Result<ModuleVector> {
    if j > v.k {
        return Err(Error::InvalidParams(format!(
            "ψ_{j} is undefined on M^({}, {})",
            v.m - v.k,
            v.k
        )));
    }
    let psi = psi_matrix(v.m, v.k, j, v.field())?;
    ModuleVector::new(v.m, j, psi.mat_vec(&v.coeffs)?)
}

/// Outcome of checking `ψ_k(e^j_t)` against its predicted value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiVerdict {
    Pass,
    Fail {
        tabloid: Subset,
        expected: Scalar,
        actual: Scalar,
    },
}

impl PsiVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, PsiVerdict::Pass)
    }
}

/// Checks `ψ_k(e^j_t) = 0` for `k < j`, and `ψ_j(e^j_t) = e^j_{t'}` where
/// `t'` is `t` with the second-row entries past column `j` moved to the end
/// of the first row.
pub fn check_psi_on_polytabloid(
    t: &TwoRowTableau,
    j: usize,
    k: usize,
    field: FieldSpec,
) -> Result<PsiVerdict> {
    if k > j || j > t.columns() {
        return Err(Error::InvalidParams(format!(
            "need k <= j <= {} for {t}, got j={j} k={k}",
            t.columns()
        )));
    }
    let image = psi_apply(&polytabloid(t, j, field)?, k as u32)?;
    let expected = if k < j {
        ModuleVector::zero(field, t.m(), k as u32)
    } else {
        polytabloid(&t.moved(j), j, field)?
    };
    Ok(match image.coeffs.first_difference(&expected.coeffs) {
        None => PsiVerdict::Pass,
        Some(idx) => PsiVerdict::Fail {
            tabloid: subsets_iter(t.m(), k as u32)
                .nth(idx)
                .expect("index within the module"),
            expected: expected.coeffs.get(idx),
            actual: image.coeffs.get(idx),
        },
    })
}

fn check_partition(m: u32, jj: u32) -> Result<()> {
    if 2 * jj > m {
        return Err(Error::InvalidParams(format!(
            "({}, {jj}) is not a partition",
            i64::from(m) - i64::from(jj)
        )));
    }
    Ok(())
}

/// The tableau with second row `s` (increasing) and first row the
/// complement (increasing), so the smallest `|s|` complement elements head
/// the columns.
pub fn canonical_tableau(s: &Subset) -> TwoRowTableau {
    TwoRowTableau {
        first_row: s.complement(),
        second_row: s.elements().to_vec(),
    }
}

/// Rank of the span of the `jj`-polytabloids in `M^(m-jj, jj)`, which is
/// the Specht module `S^(m-jj, jj)`.
///
/// One generator per second row, from [`canonical_tableau`]. The family
/// contains every standard polytabloid, so it spans.
pub fn specht_span_rank(m: u32, jj: u32, field: FieldSpec) -> Result<usize> {
    check_partition(m, jj)?;
    let table = BinomialTable::new(m);
    let rows: Vec<ExactVector> = subsets_iter(m, jj)
        .map(|s| {
            let ints = polytabloid_integers(&canonical_tableau(&s), jj as usize, &table);
            ExactVector::from_integers(field, &ints)
        })
        .collect();
    let len = table.get(m, jj) as usize;
    Ok(ExactMatrix::from_rows(field, len, &rows)?.rank())
}

/// Like [`specht_span_rank`] but over every assignment of column heads:
/// for each second row, every ordered choice of `jj` distinct first-row
/// entries to sit above it. Grows factorially; meant for small `m`.
pub fn specht_span_rank_exhaustive(m: u32, jj: u32, field: FieldSpec) -> Result<usize> {
    check_partition(m, jj)?;
    let table = BinomialTable::new(m);
    let mut rows = Vec::new();
    for s in subsets_iter(m, jj) {
        let complement = s.complement();
        let mut heads = Vec::with_capacity(jj as usize);
        let mut used = vec![false; complement.len()];
        collect_head_assignments(&complement, &mut used, &mut heads, jj as usize, &mut |hs| {
            let mut first_row = hs.to_vec();
            first_row.extend(complement.iter().filter(|e| !hs.contains(e)));
            let t = TwoRowTableau {
                first_row,
                second_row: s.elements().to_vec(),
            };
            let ints = polytabloid_integers(&t, jj as usize, &table);
            rows.push(ExactVector::from_integers(field, &ints));
        });
    }
    let len = table.get(m, jj) as usize;
    Ok(ExactMatrix::from_rows(field, len, &rows)?.rank())
}

fn collect_head_assignments(
    pool: &[u32],
    used: &mut [bool],
    heads: &mut Vec<u32>,
    want: usize,
    emit: &mut dyn FnMut(&[u32]),
) {
    if heads.len() == want {
        emit(heads);
        return;
    }
    for idx in 0..pool.len() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        heads.push(pool[idx]);
        collect_head_assignments(pool, used, heads, want, emit);
        heads.pop();
        used[idx] = false;
    }
}

/// `∩_{k<j} ker(ψ_k : M^(m-i, i) -> M^(m-k, k))`; the whole module when
/// `j = 0`.
pub fn psi_kernel_intersection(m: u32, i: u32, j: u32, field: FieldSpec) -> Result<SubspaceBasis> {
    if j > i + 1 || i > m {
        return Err(Error::InvalidParams(format!(
            "need j <= i + 1 and i <= m, got m={m} i={i} j={j}"
        )));
    }
    let ambient = binomial_u64(u64::from(m), u64::from(i)).expect("dimension fits") as usize;
    if j == 0 {
        return Ok(SubspaceBasis::full(field, ambient));
    }
    let mut stacked = ExactMatrix::zeros(field, 0, ambient);
    for k in 0..j {
        stacked = stacked.vstack(&psi_matrix(m, i, k, field)?)?;
    }
    Ok(stacked.kernel_basis())
}

/// Whether `ψ_j` kills every column of `A_i^n(m)`, i.e.
/// `A_j^i(m) · A_i^n(m) = 0` over the field.
pub fn psi_annihilates_columns(params: &InclusionParams, j: u32) -> Result<bool> {
    if j > params.i {
        return Err(Error::InvalidParams(format!(
            "j={j} exceeds i={}",
            params.i
        )));
    }
    let a = build_inclusion_matrix(params)?;
    let psi = psi_matrix(params.m, params.i, j, params.field)?;
    Ok(psi.mat_mul(&a)?.is_zero())
}

/// One step of the column-space filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationLayer {
    pub j: u32,
    /// `dim P_j`, where `P_j = P ∩ ker ψ_0 ∩ ... ∩ ker ψ_{j-1}`.
    #[serde(rename = "dim_P")]
    pub dim_p: usize,
    /// `dim ψ_j(P_j)`.
    #[serde(rename = "dim_L")]
    pub dim_l: usize,
    /// `dim S^(m-j, j)` when included, else 0.
    #[serde(rename = "predicted_L")]
    pub predicted_l: usize,
    pub included: bool,
}

/// Layer dimensions of the column space `P` of `A_i^n(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    #[serde(flatten)]
    pub params: InclusionParams,
    /// Whether the input was transposed to reach `i <= min(n, m - n)`.
    pub transposed: bool,
    pub layers: Vec<FiltrationLayer>,
    /// `Σ dim_L`.
    pub total: usize,
    #[serde(serialize_with = "crate::bignum::serialize")]
    pub formula_total: BigUint,
    /// Every layer matches its prediction and the total matches the formula.
    #[serde(rename = "match")]
    pub matches: bool,
}

impl FiltrationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Computes `P = colspace A_i^n(m)`, the chain `P_j` obtained by
/// intersecting with kernels of `ψ_0, ψ_1, ...` in increasing order, and
/// `L_j = ψ_j(P_j)`. Each `L_j` is predicted to be 0 when
/// `p | C(n-j, i-j)` and the whole Specht module `S^(m-j, j)` otherwise.
///
/// Parameters outside `i <= min(n, m - n)` are first transposed. Returns an
/// [`Error::Invariant`] if the layers fail to account for `P`.
pub fn filtration_audit(params: &InclusionParams) -> Result<FiltrationReport> {
    let norm = normalize_params(*params)?;
    let p = norm.params;
    let (m, i, field) = (p.m, p.i, p.field);
    let breakdown = wilson_rank(p)?;

    let column_space = build_inclusion_matrix(&p)?.column_space_basis();
    let ambient = column_space.ambient_dim();
    let mut kernels = ExactMatrix::zeros(field, 0, ambient);
    let mut layers = Vec::with_capacity(i as usize + 1);
    for (j, term) in (0..=i).zip(&breakdown.terms) {
        let p_j = if j == 0 {
            column_space.clone()
        } else {
            column_space.intersect(&kernels.kernel_basis())?
        };
        let psi = psi_matrix(m, i, j, field)?;
        let dim_l = p_j.image(&psi)?.dim();
        let predicted_l = if term.included {
            usize::try_from(specht_dim(m, j)?).expect("dimension fits")
        } else {
            0
        };
        layers.push(FiltrationLayer {
            j,
            dim_p: p_j.dim(),
            dim_l,
            predicted_l,
            included: term.included,
        });
        kernels = kernels.vstack(&psi)?;
    }

    let total: usize = layers.iter().map(|l| l.dim_l).sum();
    if layers.windows(2).any(|w| w[1].dim_p > w[0].dim_p) {
        return Err(Error::Invariant(format!(
            "filtration of {p} is not descending"
        )));
    }
    if total != column_space.dim() {
        return Err(Error::Invariant(format!(
            "layers of {p} sum to {total}, column space has dimension {}",
            column_space.dim()
        )));
    }
    let matches =
        layers.iter().all(|l| l.dim_l == l.predicted_l) && BigUint::from(total) == breakdown.total;
    Ok(FiltrationReport {
        params: p,
        transposed: norm.transposed,
        layers,
        total,
        formula_total: breakdown.total,
        matches,
    })
}
