mod common;

use common::{ctx, cube_by_subsets, for_each_multiset, multiset};
use cubefree::group::scale_multiset;
use cubefree::sumset::{
    incremental_sumset, incremental_sumset_sorted, iterated_sumset, projective_cube,
};
use proptest::prelude::*;

#[test]
fn fold_matches_subset_enumeration_exhaustively() {
    for (n, max_len) in [(1, 6), (2, 6), (3, 6), (4, 6), (5, 4), (6, 3)] {
        let c = ctx(n);
        let pool: Vec<u64> = (0..c.modulus()).collect();
        for len in 1..=max_len {
            for_each_multiset(&pool, len, &mut |gens| {
                let fold = projective_cube(&multiset(&c, gens)).unwrap();
                assert_eq!(fold, cube_by_subsets(&c, gens), "n={n} S={gens:?}");
            });
        }
    }
}

#[test]
fn stall_means_half_is_reached() {
    // when c ≠ 0 adds nothing, P is closed under +c, so it holds <c> ∋ 2^{n-1}
    for n in 1..=5u32 {
        let c = ctx(n);
        let pool: Vec<u64> = (0..c.modulus()).collect();
        for len in 1..=5 {
            for_each_multiset(&pool, len, &mut |gens| {
                let ms = multiset(&c, gens);
                let trace = incremental_sumset_sorted(&ms);
                for (i, &g) in trace.growth.iter().enumerate() {
                    if g == 0 && gens[i] != 0 {
                        let prefix = multiset(&c, &gens[..=i]);
                        let p = iterated_sumset(&prefix);
                        assert!(p.contains(1 << (n - 1)), "n={n} S={gens:?} step {i}");
                        let a = gens[i];
                        assert!((1..=c.modulus()).all(|j| p.contains(c.mul(j, a))));
                    }
                }
            });
        }
    }
}

#[test]
fn growth_can_stall_on_a_nonzero_element() {
    // {4, 4} mod 8: the second 4 adds nothing
    let c = ctx(3);
    let trace = incremental_sumset_sorted(&multiset(&c, &[4, 4]));
    assert_eq!(trace.growth, vec![1, 0]);
    assert_eq!(trace.first_stall(), Some(1));
}

fn small_multiset() -> impl Strategy<Value = (u32, Vec<u64>)> {
    (1u32..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(0..1u64 << n, 1..=6)))
}

proptest! {
    #[test]
    fn fold_matches_enumeration((n, xs) in small_multiset()) {
        let c = ctx(n);
        prop_assert_eq!(projective_cube(&multiset(&c, &xs)).unwrap(), cube_by_subsets(&c, &xs));
    }

    #[test]
    fn iterated_adds_zero((n, xs) in small_multiset()) {
        let c = ctx(n);
        let ms = multiset(&c, &xs);
        let mut cube = projective_cube(&ms).unwrap();
        cube.insert(0);
        prop_assert_eq!(iterated_sumset(&ms), cube);
    }

    #[test]
    fn monotone_in_the_multiset((n, xs) in small_multiset(), cut in 0usize..6) {
        let c = ctx(n);
        let sub = &xs[..cut.min(xs.len() - 1) + 1];
        let small = projective_cube(&multiset(&c, sub)).unwrap();
        let big = projective_cube(&multiset(&c, &xs)).unwrap();
        prop_assert!(small.is_subset_of(&big));
    }

    #[test]
    fn odd_scaling_commutes((n, xs) in small_multiset(), half in 0u64..512) {
        let c = ctx(n);
        let lambda = 2 * half + 1;
        let ms = multiset(&c, &xs);
        let scaled = projective_cube(&scale_multiset(lambda, &ms).unwrap()).unwrap();
        prop_assert_eq!(scaled, projective_cube(&ms).unwrap().scaled(lambda));
    }

    #[test]
    fn order_does_not_change_the_final_sumset((n, xs) in small_multiset(), seed in any::<u64>()) {
        let c = ctx(n);
        let ms = multiset(&c, &xs);
        let mut order: Vec<usize> = (0..xs.len()).collect();
        // a seeded rotation and reversal of the identity
        order.rotate_left(seed as usize % xs.len());
        if seed & 1 == 1 {
            order.reverse();
        }
        let trace = incremental_sumset(&ms, &order).unwrap();
        prop_assert_eq!(*trace.prefix_sizes.last().unwrap(), iterated_sumset(&ms).len());
        prop_assert!(trace.prefix_sizes.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(trace.growth.iter().sum::<u64>() + 1, iterated_sumset(&ms).len());
    }
}
