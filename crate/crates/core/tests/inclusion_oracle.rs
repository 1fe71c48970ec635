mod support;

use incrank_core::combinatorics::binomial_u64;
use incrank_core::{
    build_inclusion_matrix, column_of, streaming_rank, subset_rank, subset_unrank, subsets_iter,
    wilson_rank, FieldSpec, InclusionParams, Scalar, Subset, SubsetIndex,
};
use num_bigint::BigUint;

fn params(m: u32, i: u32, n: u32, p: u64) -> InclusionParams {
    InclusionParams::new(m, i, n, FieldSpec::new(p).unwrap()).unwrap()
}

#[test]
fn colex_order_matches_brute_force() {
    for m in 0..=10usize {
        for k in 0..=m {
            let expected: Vec<Vec<u32>> = support::colex_masks(m, k)
                .into_iter()
                .map(support::mask_to_elements)
                .collect();
            let got: Vec<Vec<u32>> = subsets_iter(m as u32, k as u32)
                .map(|s| s.elements().to_vec())
                .collect();
            assert_eq!(got, expected, "m={m} k={k}");
            for (r, e) in expected.iter().enumerate() {
                let s = Subset::new(m as u32, e.clone()).unwrap();
                assert_eq!(subset_rank(&s).rank, r as u64);
                let idx = SubsetIndex {
                    rank: r as u64,
                    k: k as u32,
                    m: m as u32,
                };
                assert_eq!(subset_unrank(idx).unwrap(), s);
            }
        }
    }
}

#[test]
fn round_trip_up_to_16() {
    for m in 0..=16u32 {
        for k in 0..=m {
            let total = binomial_u64(u64::from(m), u64::from(k)).unwrap();
            for rank in 0..total {
                let idx = SubsetIndex { rank, k, m };
                assert_eq!(subset_rank(&subset_unrank(idx).unwrap()), idx);
            }
        }
    }
}

#[test]
fn binomials_match_pascal() {
    let table = support::pascal(60);
    for a in 0..=60u64 {
        for b in -1..=(a as i64 + 1) {
            let expected = if b < 0 || b as u64 > a {
                0
            } else {
                table[a as usize][b as usize]
            };
            assert_eq!(incrank_core::binomial(a, b), BigUint::from(expected));
        }
    }
}

#[test]
fn lucas_matches_remainder() {
    for p in [2u64, 3, 5, 7, 11] {
        for a in 0..=40usize {
            for b in 0..=a {
                assert_eq!(
                    incrank_core::p_divides_binomial(p, a as u64, b as u64).unwrap(),
                    support::divides_binomial(u128::from(p), a, b),
                    "p={p} a={a} b={b}"
                );
            }
        }
    }
}

#[test]
fn matrices_match_brute_force() {
    for m in 0..=8u32 {
        for n in 0..=m {
            for i in 0..=n {
                let naive = support::naive_inclusion(m as usize, i as usize, n as usize);
                let built = build_inclusion_matrix(&params(m, i, n, 2)).unwrap();
                assert_eq!(built.n_rows(), naive.len());
                for (r, row) in naive.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        assert_eq!(built.get(r, c), Scalar::Residue(v as u32));
                    }
                }
            }
        }
    }
}

#[test]
fn transpose_identity() {
    for m in 0..=10u32 {
        for n in 0..=m {
            for i in 0..=n {
                let a = build_inclusion_matrix(&params(m, i, n, 3)).unwrap();
                let b = build_inclusion_matrix(&params(m, m - n, m - i, 3)).unwrap();
                // Rows and columns correspond through X -> [m] \ X, which
                // reverses colex order (it complements the bitmask).
                let at = a.transpose();
                assert_eq!((at.n_rows(), at.n_cols()), (b.n_rows(), b.n_cols()));
                let (rows, cols) = (b.n_rows(), b.n_cols());
                for r in 0..rows {
                    for c in 0..cols {
                        assert_eq!(
                            at.get(r, c),
                            b.get(rows - 1 - r, cols - 1 - c),
                            "m={m} i={i} n={n}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn row_and_column_weights() {
    for m in 0..=10u32 {
        for n in 0..=m {
            for i in 0..=n {
                let a = build_inclusion_matrix(&params(m, i, n, 5)).unwrap();
                let col_w = binomial_u64(u64::from(n), u64::from(i)).unwrap() as usize;
                let row_w = binomial_u64(u64::from(m - i), u64::from(n - i)).unwrap() as usize;
                assert!((0..a.n_cols()).all(|c| a.column_weight(c) == col_w));
                assert!((0..a.n_rows()).all(|r| a.row_weight(r) == row_w));
            }
        }
    }
}

#[test]
fn column_of_matches_dense_column() {
    let p = params(7, 2, 4, 2);
    let a = build_inclusion_matrix(&p).unwrap();
    for (c, y) in subsets_iter(7, 4).enumerate() {
        let rows = column_of(&p, &y).unwrap();
        let dense: Vec<usize> = (0..a.n_rows())
            .filter(|&r| !a.get(r, c).is_zero())
            .collect();
        assert_eq!(rows, dense);
    }
}

#[test]
fn streaming_matches_dense() {
    for p in [2u64, 3, 5] {
        for m in 0..=10u32 {
            for n in 0..=m {
                for i in 0..=n {
                    let pr = params(m, i, n, p);
                    let dense = build_inclusion_matrix(&pr).unwrap().rank();
                    assert_eq!(streaming_rank(&pr).unwrap(), dense, "{pr}");
                }
            }
        }
    }
}

#[test]
fn formula_matches_naive_elimination_small() {
    // Independent of the optimized kernels: brute-force matrix, textbook
    // elimination.
    for p in [2i64, 3, 5, 7] {
        for m in 0..=7usize {
            for n in 0..=m {
                for i in 0..=n {
                    let naive = support::naive_rank_mod(&support::naive_inclusion(m, i, n), p);
                    let formula = wilson_rank(params(m as u32, i as u32, n as u32, p as u64))
                        .unwrap()
                        .total;
                    assert_eq!(formula, BigUint::from(naive), "m={m} n={n} i={i} p={p}");
                }
            }
        }
    }
}

#[test]
fn formula_matches_naive_rational_elimination_small() {
    for m in 0..=6usize {
        for n in 0..=m {
            for i in 0..=n {
                let naive = support::naive_rank_rational(&support::naive_inclusion(m, i, n));
                let formula = wilson_rank(params(m as u32, i as u32, n as u32, 0))
                    .unwrap()
                    .total;
                assert_eq!(formula, BigUint::from(naive));
            }
        }
    }
}
