use ltoral::families::{family_a_spec, family_a_spec_on, family_b_preset, Lattice};
use ltoral::tower::{build_s, m_count, r_count, torus_level};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn materialized_levels_agree(ell in prop::sample::select(vec![3u64, 5]), n in 1u32..3) {
        for spec in [family_a_spec(ell).unwrap(), family_b_preset("G2").unwrap()] {
            let lv = build_s(&spec, n).unwrap();
            if let Some(cc) = lv.cross_check {
                prop_assert!(cc.agrees, "{:?}", cc);
            }
        }
    }

    #[test]
    fn center_and_abelianization_are_stable(ell in prop::sample::select(vec![3u64, 5, 7]), n in 1u32..5) {
        let a = torus_level(&family_a_spec(ell).unwrap().action, 1).unwrap();
        let b = torus_level(&family_a_spec(ell).unwrap().action, n).unwrap();
        prop_assert_eq!(a.center().len(), b.center().len());
        prop_assert_eq!(a.abelianization_invariants(), b.abelianization_invariants());
    }
}

/// Passing to the dual lattice exchanges the two sides of the count.
#[test]
fn lattice_duality_swaps_m_and_r() {
    for ell in [3, 5] {
        let root = family_a_spec(ell).unwrap();
        let cow = family_a_spec_on(ell, None, Lattice::Coweight).unwrap();
        assert_eq!(m_count(&root, 1).unwrap(), r_count(&cow, 1).unwrap());
        assert_eq!(r_count(&root, 1).unwrap(), m_count(&cow, 1).unwrap());
    }
}

#[test]
fn g2_counts_agree_across_levels() {
    let g2 = family_b_preset("G2").unwrap();
    for n in 1..=3 {
        assert_eq!(m_count(&g2, n).unwrap(), r_count(&g2, n).unwrap());
    }
}
