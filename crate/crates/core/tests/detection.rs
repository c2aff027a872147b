mod common;

use common::{ctx, has_cube_naive};
use cubefree::detection::{find_d_cube, find_d_cube_in_layer_union, is_d_cube_free};
use cubefree::sumset::projective_cube;
use cubefree::ResidueSet;
use proptest::prelude::*;

#[test]
fn agrees_with_naive_on_every_subset_up_to_n3() {
    for n in 1..=3u32 {
        let c = ctx(n);
        for mask in 0..1u64 << c.modulus() {
            let set = ResidueSet::from_mask(c, mask);
            for d in 1..=4 {
                let fast = find_d_cube(&set, d);
                assert_eq!(
                    fast.is_some(),
                    has_cube_naive(&set, d),
                    "n={n} A={set} d={d}"
                );
            }
        }
    }
}

#[test]
fn agrees_with_naive_on_every_subset_at_n4_d3() {
    let c = ctx(4);
    for mask in (0..1u64 << 16).step_by(7) {
        let set = ResidueSet::from_mask(c, mask);
        assert_eq!(
            find_d_cube(&set, 3).is_some(),
            has_cube_naive(&set, 3),
            "A={set}"
        );
    }
}

fn random_set() -> impl Strategy<Value = ResidueSet> {
    (3u32..=5, any::<u64>(), any::<u64>()).prop_map(|(n, a, b)| {
        // bias towards dense sets, where cubes are common
        ResidueSet::from_mask(ctx(n), a | b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn completeness(set in random_set(), d in 1usize..=4) {
        prop_assert_eq!(find_d_cube(&set, d).is_some(), has_cube_naive(&set, d));
    }

    #[test]
    fn witnesses_are_sound(set in random_set(), d in 1usize..=5) {
        if let Some(w) = find_d_cube(&set, d) {
            prop_assert_eq!(w.generators.len(), d);
            prop_assert!(w.generators.elements().iter().all(|&g| set.contains(g)));
            prop_assert_eq!(&projective_cube(&w.generators).unwrap(), &w.cube);
            prop_assert!(w.cube.is_subset_of(&set));
        }
    }

    #[test]
    fn monotone_under_inclusion(set in random_set(), extra in any::<u64>(), d in 1usize..=5) {
        let bigger = set.union(&ResidueSet::from_mask(set.context(), extra));
        if !is_d_cube_free(&set, d) {
            prop_assert!(!is_d_cube_free(&bigger, d));
        }
    }

    #[test]
    fn odd_units_preserve_freeness(set in random_set(), half in 0u64..64, d in 1usize..=4) {
        prop_assert_eq!(is_d_cube_free(&set, d), is_d_cube_free(&set.scaled(2 * half + 1), d));
    }

    #[test]
    fn layer_union_search_matches(n in 2u32..=6, bits in any::<u8>(), d in 1usize..=5) {
        let c = ctx(n);
        let layers: Vec<u32> = (1..=n + 1).filter(|&i| bits >> (i - 1) & 1 == 1).collect();
        let set = cubefree::group::layer_union(&layers, &c).unwrap();
        let reduced = find_d_cube_in_layer_union(&layers, &c, d).unwrap();
        prop_assert_eq!(reduced.is_some(), find_d_cube(&set, d).is_some());
    }
}
