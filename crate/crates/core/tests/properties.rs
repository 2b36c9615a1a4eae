use std::sync::OnceLock;

use proptest::prelude::*;

use regmap::census::dedup_by_isomorphism;
use regmap::families::{build_group, family_candidates};
use regmap::maps::{build_map, invariants, is_isomorphic, AlgebraicMap};

fn maps_3_3() -> &'static [AlgebraicMap] {
    static MAPS: OnceLock<Vec<AlgebraicMap>> = OnceLock::new();
    MAPS.get_or_init(|| {
        family_candidates(3, 3)
            .unwrap()
            .iter()
            .map(|p| AlgebraicMap::from_family(&build_group(p).unwrap()).unwrap())
            .collect()
    })
}

#[test]
fn isomorphism_is_an_equivalence_relation() {
    let maps = maps_3_3();
    for x in maps {
        assert!(is_isomorphic(x, x));
        for y in maps {
            assert_eq!(is_isomorphic(x, y), is_isomorphic(y, x));
            for z in maps {
                if is_isomorphic(x, y) && is_isomorphic(y, z) {
                    assert!(is_isomorphic(x, z));
                }
            }
        }
    }
}

#[test]
fn isomorphic_maps_share_invariants() {
    let maps = maps_3_3();
    for class in dedup_by_isomorphism(maps) {
        let rep = invariants(&maps[class.representative]);
        for &i in &class.members {
            assert_eq!(invariants(&maps[i]), rep);
        }
    }
}

#[test]
fn chiral_maps_differ_from_their_mirrors() {
    for map in maps_3_3() {
        let inv = invariants(map);
        let mirror = map.mirror();
        assert_eq!(invariants(&mirror).genus, inv.genus);
        assert_eq!(is_isomorphic(map, &mirror), map.is_reflexible());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Conjugating the distinguished pair gives an isomorphic map.
    #[test]
    fn conjugate_pairs_are_isomorphic(which in 0usize..5, g in 0usize..54) {
        let map = &maps_3_3()[which];
        let x = &map.group().elements()[g % map.dart_count()];
        let conj = build_map(map.shared_group(), map.a().conj(x), map.b().conj(x)).unwrap();
        prop_assert!(is_isomorphic(map, &conj));
        prop_assert_eq!(invariants(map), invariants(&conj));
    }

    /// Euler's formula ties the counts to the genus for every candidate.
    #[test]
    fn euler_characteristic_matches_genus(which in 0usize..5) {
        let inv = invariants(&maps_3_3()[which]);
        prop_assert_eq!(inv.vertices as i64 - inv.edges as i64 + inv.faces as i64, 2 - 2 * inv.genus as i64);
        prop_assert_eq!(inv.edges, 27);
    }
}
