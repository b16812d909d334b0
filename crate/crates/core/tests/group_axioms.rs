//! Group axioms on saturated automorphism groups, checked on random
//! elements: closure against tuple composition, associativity, identity,
//! inverses, centrality of β and the kernel of the map to H.

use std::collections::HashMap;
use std::sync::OnceLock;

use dp1::autgroup::{default_start, is_automorphism, saturate, tuple_key, AutGroupResult, HElement};
use dp1::normalform::build;
use dp1::verify::{find_spec, sample_row};
use proptest::prelude::*;

const LABELS: [&str; 10] =
    ["1a-iii", "1a-iv", "2d-i", "2f-i", "3-ii", "3-v", "4-i", "5-i", "1c-generic", "5-generic"];

struct Fixture {
    res: AutGroupResult,
    index: HashMap<Vec<u64>, u32>,
}

fn fixtures() -> &'static Vec<Fixture> {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        LABELS
            .iter()
            .map(|l| {
                let row = find_spec(l).unwrap();
                let res = (0..32)
                    .map(|a| {
                        let s = build(&sample_row(&row, 7, a).unwrap()).unwrap();
                        saturate(&s, default_start(&s), 48).unwrap()
                    })
                    .find(|r| r.saturated)
                    .unwrap_or_else(|| panic!("{l} never saturated"));
                assert_eq!(res.order(), row.aut.order(), "{l}");
                let index = res.elements.iter().enumerate().map(|(i, t)| (tuple_key(t), i as u32)).collect();
                Fixture { res, index }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn axioms_on_random_elements(which in 0..LABELS.len(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let f = &fixtures()[which];
        let (res, g) = (&f.res, &f.res.group);
        let n = res.order() as u32;
        let (a, b, c) = (x % n, y % n, z % n);
        let (ta, tb) = (&res.elements[a as usize], &res.elements[b as usize]);

        // The table agrees with composing tuples, and the composite is an automorphism.
        let ab = ta.compose(tb);
        prop_assert!(is_automorphism(&res.surface, &ab));
        prop_assert_eq!(f.index.get(&tuple_key(&ab)).copied(), Some(g.mul(a, b)));

        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(res.identity, a), a);
        prop_assert_eq!(g.mul(a, res.identity), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), res.identity);
        prop_assert_eq!(f.index.get(&tuple_key(&ta.inverse())).copied(), Some(g.inv(a)));

        prop_assert_eq!(g.mul(res.bertini, a), g.mul(a, res.bertini));
    }
}

#[test]
fn bertini_is_central_involution_and_h_kernel() {
    for (l, f) in LABELS.iter().zip(fixtures()) {
        let res = &f.res;
        assert_ne!(res.bertini, res.identity, "{l}");
        assert_eq!(res.group.element_order(res.bertini), 2, "{l}");
        assert!(res.group.is_central(res.bertini), "{l}");
        let mut want = vec![res.identity, res.bertini];
        want.sort();
        assert_eq!(res.h_kernel(), want, "{l}");
        let image: std::collections::HashSet<HElement> = res.elements.iter().map(HElement::of).collect();
        assert_eq!(image.len() * 2, res.order(), "{l}");
    }
}
