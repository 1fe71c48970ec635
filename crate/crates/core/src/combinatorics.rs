//! Binomial coefficients, colexicographic subset indexing and prime
//! divisibility of binomials.
//!
//! Every matrix in the crate is indexed by subsets of `[m] = {1, ..., m}`
//! listed in colexicographic order: subsets are compared by their largest
//! element first. Equivalently, a subset's colex position among the
//! `k`-subsets is the numeric order of its bitmask. The rank of
//! `e_1 < ... < e_k` is `sum_t C(e_t - 1, t)`, which does not depend on `m`,
//! so layouts extend cleanly as the ground set grows.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(a, b)` as an arbitrary-precision integer, with `C(a, b) = 0` for
/// `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for t in 0..b {
        acc *= a - t;
        acc /= t + 1;
    }
    acc
}

/// `C(a, b)` if it fits in a `u64`.
pub fn binomial_u64(a: u64, b: u64) -> Option<u64> {
    if b > a {
        return Some(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for t in 0..b {
        // acc * (a - t) / (t + 1) is exact at every step.
        acc = acc.checked_mul(u128::from(a - t))? / u128::from(t + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Pascal table of `C(a, b)` for `a <= max`, saturating at `u64::MAX`.
///
/// Used on hot indexing paths where recomputing binomials per subset would
/// dominate.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    pub fn new(max: u32) -> Self {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max as usize + 1);
        for a in 0..=max as usize {
            let mut row = vec![1u64; a + 1];
            for b in 1..a {
                row[b] = rows[a - 1][b - 1].saturating_add(rows[a - 1][b]);
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    #[inline]
    pub fn get(&self, a: u32, b: u32) -> u64 {
        if b > a {
            0
        } else {
            self.rows[a as usize][b as usize]
        }
    }

    /// Colex rank of a sorted subset, without validation.
    #[inline]
    pub fn rank_sorted(&self, elements: &[u32]) -> u64 {
        elements
            .iter()
            .enumerate()
            .map(|(t, &e)| self.get(e - 1, t as u32 + 1))
            .sum()
    }
}

/// A subset of `[m]`, stored as its elements in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset {
    elements: Vec<u32>,
    m: u32,
}

impl Subset {
    /// Validates that `elements` is strictly increasing and inside `1..=m`.
    pub fn new(m: u32, elements: Vec<u32>) -> Result<Self> {
        let malformed = |reason| Error::MalformedSubset {
            elements: elements.clone(),
            m,
            reason,
        };
        if elements.iter().any(|&e| e == 0 || e > m) {
            return Err(malformed("element outside 1..=m"));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(malformed("elements not strictly increasing"));
        }
        Ok(Subset { elements, m })
    }

    /// Sorts and deduplicates-checks an arbitrary list of elements.
    pub fn from_unsorted(m: u32, mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        Subset::new(m, elements)
    }

    pub(crate) fn new_unchecked(m: u32, elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.iter().all(|&e| e >= 1 && e <= m));
        Subset { elements, m }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// Elements of `[m]` not in this subset, increasing.
    pub fn complement(&self) -> Vec<u32> {
        (1..=self.m).filter(|&e| !self.contains(e)).collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (t, e) in self.elements.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Colex position of a `k`-subset of `[m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetIndex {
    pub rank: u64,
    pub k: u32,
    pub m: u32,
}

/// Colex rank of `s` among the `|s|`-subsets of `[m]`.
pub fn subset_rank(s: &Subset) -> SubsetIndex {
    let rank = s
        .elements
        .iter()
        .enumerate()
        .map(|(t, &e)| {
            binomial_u64(u64::from(e) - 1, t as u64 + 1).expect("colex rank exceeds u64")
        })
        .sum();
    SubsetIndex {
        rank,
        k: s.len() as u32,
        m: s.m,
    }
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(idx: SubsetIndex) -> Result<Subset> {
    let SubsetIndex { rank, k, m } = idx;
    let out_of_range = Error::RankOutOfRange { rank, k, m };
    if k > m {
        return Err(out_of_range);
    }
    match binomial_u64(u64::from(m), u64::from(k)) {
        Some(total) if rank < total => {}
        // C(m, k) beyond u64 means every u64 rank is in range.
        None => {}
        _ => return Err(out_of_range),
    }
    let mut remaining = rank;
    let mut elements = vec![0u32; k as usize];
    let mut upper = m;
    for t in (1..=k).rev() {
        // Largest e <= upper with C(e - 1, t) <= remaining.
        let mut e = upper;
        loop {
            let c = binomial_u64(u64::from(e) - 1, u64::from(t)).unwrap_or(u64::MAX);
            if c <= remaining {
                remaining -= c;
                break;
            }
            e -= 1;
        }
        elements[t as usize - 1] = e;
        upper = e - 1;
    }
    Ok(Subset::new_unchecked(m, elements))
}

/// All `k`-subsets of `[m]` in colex order; the `t`-th item has rank `t`.
pub fn subsets_iter(m: u32, k: u32) -> Subsets {
    Subsets {
        m,
        current: if k <= m {
            Some((1..=k).collect())
        } else {
            None
        },
    }
}

/// Iterator returned by [`subsets_iter`].
#[derive(Debug, Clone)]
pub struct Subsets {
    m: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let current = self.current.take()?;
        let k = current.len();
        let mut next = current.clone();
        // Colex successor: bump the lowest element that has room, reset the
        // ones below it to 1, 2, ...
        let bump = (0..k).find(|&t| {
            let ceiling = if t + 1 < k { next[t + 1] } else { self.m + 1 };
            next[t] + 1 < ceiling
        });
        if let Some(t) = bump {
            next[t] += 1;
            for (s, slot) in next.iter_mut().enumerate().take(t) {
                *slot = s as u32 + 1;
            }
            self.current = Some(next);
        }
        Some(Subset::new_unchecked(self.m, current))
    }
}

/// Deterministic primality test valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mul = |a: u64, b: u64| (u128::from(a) * u128::from(b) % u128::from(n)) as u64;
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // These twelve bases are a deterministic witness set below 3.3e24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Whether `p` divides `C(a, b)`, by comparing base-`p` digits (Lucas).
///
/// `p = 0` encodes characteristic zero, where no nonzero integer counts as
/// divisible, so the answer is always `false`.
pub fn p_divides_binomial(p: u64, a: u64, b: u64) -> Result<bool> {
    if p == 0 {
        return Ok(false);
    }
    if !is_prime(p) {
        return Err(Error::InvalidCharacteristic(p));
    }
    let (mut a, mut b) = (a, b);
    while b > 0 {
        if b % p > a % p {
            return Ok(true);
        }
        a /= p;
        b /= p;
    }
    Ok(false)
}

/// Dimension of the two-row Specht module `S^(m-j, j)`:
/// `C(m, j) - C(m, j - 1)`.
pub fn specht_dim(m: u32, j: u32) -> Result<BigUint> {
    if 2 * j > m {
        return Err(Error::InvalidParams(format!(
            "({}, {j}) is not a partition: need j <= m/2",
            i64::from(m) - i64::from(j)
        )));
    }
    Ok(binomial(u64::from(m), i64::from(j)) - binomial(u64::from(m), i64::from(j) - 1))
}
