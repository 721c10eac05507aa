use ltoral::group::{build_group, conjugacy_classes, is_normal, sylow, GroupSpec};
use proptest::prelude::*;

fn small_spec() -> impl Strategy<Value = GroupSpec> {
    let primes = prop::sample::select(vec![3u64, 5, 7]);
    prop_oneof![
        (1u64..40).prop_map(GroupSpec::Cyclic),
        (3u64..30).prop_map(|n| GroupSpec::Dihedral(2 * n)),
        (1usize..6).prop_map(GroupSpec::Symmetric),
        (3usize..6).prop_map(GroupSpec::Alternating),
        primes.clone().prop_map(GroupSpec::Sl2),
        primes.clone().prop_map(GroupSpec::Ngl2u),
        primes.prop_flat_map(|p| {
            let ds: Vec<u64> = (1..p).filter(|d| (p - 1) % d == 0).collect();
            prop::sample::select(ds).prop_map(move |d| GroupSpec::Frobenius { ell: p, d })
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(s in small_spec(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let g = build_group(&s).unwrap();
        let [a, b, c] = [0, 1, 2].map(|i| picks[i].index(g.order()));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), b), b);
        prop_assert_eq!(g.order() as u64 % g.element_order(c), 0);
    }

    #[test]
    fn classes_partition_the_group(s in small_spec()) {
        let g = build_group(&s).unwrap();
        let cl = conjugacy_classes(&g);
        let total: usize = (0..cl.len()).map(|c| cl.size(c)).sum();
        prop_assert_eq!(total, g.order());
        for c in 0..cl.len() {
            prop_assert_eq!(g.order() % cl.size(c), 0);
        }
    }

    #[test]
    fn sylow_subgroups_have_full_order(s in small_spec(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let g = build_group(&s).unwrap();
        let mut n = g.order() as u64;
        let mut pk = 1;
        while n.is_multiple_of(p) {
            n /= p;
            pk *= p;
        }
        prop_assert_eq!(sylow(&g, p).order() as u64, pk);
    }

    #[test]
    fn direct_product_orders(a in small_spec(), b in small_spec()) {
        let (ga, gb) = (build_group(&a).unwrap(), build_group(&b).unwrap());
        prop_assume!(ga.order() * gb.order() <= 5000);
        let g = build_group(&GroupSpec::Direct(vec![a, b])).unwrap();
        prop_assert_eq!(g.order(), ga.order() * gb.order());
    }
}

#[test]
fn fiber_products_have_index_e() {
    for (x1, ell, e) in [(GroupSpec::Cyclic(2), 3, 2), (GroupSpec::Cyclic(4), 5, 4), (GroupSpec::Symmetric(3), 5, 2)] {
        let x2 = GroupSpec::Gl2(ell);
        let full = build_group(&x1).unwrap().order() * build_group(&x2).unwrap().order();
        let h = build_group(&GroupSpec::Fiber { left: Box::new(x1), right: Box::new(x2), e }).unwrap();
        assert_eq!(h.order() as u64 * e, full as u64);
    }
}

#[test]
fn sylow_of_prime_order_is_normal_in_frobenius() {
    let g = build_group(&GroupSpec::Frobenius { ell: 7, d: 6 }).unwrap();
    assert!(is_normal(&g, &sylow(&g, 7)));
}
