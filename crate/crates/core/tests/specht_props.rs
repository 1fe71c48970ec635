use incrank_core::combinatorics::binomial_u64;
use incrank_core::specht::{psi_annihilates_columns, psi_kernel_intersection};
use incrank_core::{
    check_psi_on_polytabloid, filtration_audit, p_divides_binomial, polytabloid, psi_apply,
    specht_dim, wilson_rank, FieldSpec, InclusionParams, TwoRowTableau,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

/// A permutation of 1..=m split after `first_len` entries.
fn tableau_strategy() -> impl Strategy<Value = TwoRowTableau> {
    (1u32..=8)
        .prop_flat_map(|m| {
            (
                Just(m),
                Just((1..=m).collect::<Vec<u32>>()).prop_shuffle(),
                0..=m,
            )
        })
        .prop_map(|(_, perm, split)| {
            let (a, b) = perm.split_at(split as usize);
            TwoRowTableau::new(a.to_vec(), b.to_vec()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_below_j_vanishes(t in tableau_strategy(), pi in 0usize..4) {
        let f = field([0, 2, 3, 5][pi]);
        for j in 0..=t.columns() {
            for k in 0..j {
                let image = psi_apply(&polytabloid(&t, j, f).unwrap(), k as u32).unwrap();
                prop_assert!(image.is_zero(), "t={} j={} k={}", t, j, k);
            }
        }
    }

    #[test]
    fn psi_at_j_is_moved_polytabloid(t in tableau_strategy(), pi in 0usize..4) {
        let f = field([0, 2, 3, 5][pi]);
        for j in 0..=t.columns() {
            let image = psi_apply(&polytabloid(&t, j, f).unwrap(), j as u32).unwrap();
            prop_assert_eq!(&image, &polytabloid(&t.moved(j), j, f).unwrap());
            prop_assert!(check_psi_on_polytabloid(&t, j, j, f).unwrap().passed());
        }
    }
}

#[test]
fn zero_map_criterion() {
    for p in [2u64, 3, 5] {
        for m in 0..=8u32 {
            for n in 0..=m {
                for i in 0..=n {
                    let params = InclusionParams::new(m, i, n, field(p)).unwrap();
                    for j in 0..=i {
                        if p_divides_binomial(p, u64::from(n - j), u64::from(i - j)).unwrap() {
                            assert!(
                                psi_annihilates_columns(&params, j).unwrap(),
                                "{params} j={j}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_intersection_dimensions_over_q() {
    let q = FieldSpec::RATIONALS;
    for m in 0..=8u32 {
        for i in 0..=m / 2 {
            for j in 0..=i + 1 {
                let dim = psi_kernel_intersection(m, i, j, q).unwrap().dim();
                let removed: BigUint = (0..j).map(|k| specht_dim(m, k).unwrap()).sum();
                let expected =
                    BigUint::from(binomial_u64(u64::from(m), u64::from(i)).unwrap()) - removed;
                assert_eq!(BigUint::from(dim), expected, "m={m} i={i} j={j}");
            }
        }
    }
}

#[test]
fn filtration_accounts_for_rank_small() {
    for p in [0u64, 2, 3, 5, 7] {
        for m in 0..=7u32 {
            for n in 0..=m {
                for i in 0..=n.min(m - n) {
                    let params = InclusionParams::new(m, i, n, field(p)).unwrap();
                    let report = filtration_audit(&params).unwrap();
                    assert!(report.matches, "{params}: {report:?}");
                    assert_eq!(
                        BigUint::from(report.total),
                        wilson_rank(params).unwrap().total
                    );
                    assert_eq!(
                        report.layers[0].dim_p,
                        incrank_core::build_inclusion_matrix(&params)
                            .unwrap()
                            .rank()
                    );
                }
            }
        }
    }
}
