use ltoral::group::{build_group, GroupSpec};
use ltoral_cli::error::CliError;
use ltoral_cli::{parse_group_spec, GroupExpr};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = GroupExpr> {
    let primes = prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]);
    prop_oneof![
        Just(GroupSpec::Trivial),
        (1u64..500).prop_map(GroupSpec::Cyclic),
        (3u64..200).prop_map(|n| GroupSpec::Dihedral(2 * n)),
        (1usize..12).prop_map(GroupSpec::Symmetric),
        (1usize..12).prop_map(GroupSpec::Alternating),
        primes.clone().prop_map(GroupSpec::Sl2),
        primes.clone().prop_map(GroupSpec::Gl2),
        primes.clone().prop_map(GroupSpec::Ngl2u),
        (primes, 1u64..12).prop_map(|(ell, d)| GroupSpec::Frobenius { ell, d }),
    ]
    .prop_map(GroupExpr::Atom)
}

fn file() -> impl Strategy<Value = GroupExpr> {
    "[a-z][a-z0-9_/.-]{0,12}\\.json".prop_map(GroupExpr::File)
}

fn expr() -> impl Strategy<Value = GroupExpr> {
    let leaf = prop_oneof![4 => atom(), 1 => file()];
    leaf.prop_recursive(3, 24, 4, |inner| {
        let factor = inner.clone().prop_filter("products are flat", |e| !matches!(e, GroupExpr::Product(_)));
        prop_oneof![
            prop::collection::vec(factor, 2..5).prop_map(GroupExpr::Product),
            (inner.clone(), inner, 1u64..10).prop_map(|(l, r, e)| GroupExpr::Fiber {
                left: Box::new(l),
                right: Box::new(r),
                e
            }),
        ]
    })
}

proptest! {
    #[test]
    fn parse_print_round_trip(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_group_spec(&text).unwrap(), e.clone());
        // spacing around x is optional except after a file path, which runs to whitespace
        if !text.contains('@') {
            let squeezed = text.replace(" x ", "x");
            prop_assert_eq!(parse_group_spec(&squeezed).unwrap(), e);
        }
    }

    #[test]
    fn garbage_is_rejected_with_a_position(s in "[A-Za-z0-9(),= x@]{0,20}") {
        match parse_group_spec(&s) {
            Ok(e) => prop_assert_eq!(parse_group_spec(&e.to_string()).unwrap(), e),
            Err(CliError::Parse { pos, .. }) | Err(CliError::UnknownAtom { pos, .. }) => prop_assert!(pos <= s.len()),
            Err(other) => prop_assert!(false, "unexpected error {other:?}"),
        }
    }
}

fn order(text: &str) -> usize {
    let spec = parse_group_spec(text).unwrap().to_spec(std::path::Path::new(".")).unwrap();
    build_group(&spec).unwrap().order()
}

#[test]
fn documented_orders() {
    assert_eq!(order("C3"), 3);
    assert_eq!(order("C2 x SL2(5)"), 240);
    assert_eq!(order("fiber(C2,GL2(3),e=2)"), 48);
    assert_eq!(order("D8 x (C2 x C3)"), 48);
    assert_eq!(order("Frob(7,3) x 1"), 21);
}
