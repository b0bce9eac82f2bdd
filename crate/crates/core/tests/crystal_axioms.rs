use cs_crystal::crystal::{e_op, enumerate_crystal, epsilon, f_op, phi};
use cs_crystal::par::Strategy as Exec;
use cs_crystal::rootsys::{simple_root, Shape};
use cs_crystal::tableaux::Tableau;
use proptest::prelude::*;

fn shape_strategy() -> impl Strategy<Value = Shape> {
    (1usize..=3).prop_flat_map(|r| {
        proptest::collection::vec(0usize..=3, r + 1).prop_map(move |mut parts| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            Shape::new(parts, r).unwrap()
        })
    })
}

fn element_strategy() -> impl Strategy<Value = Tableau> {
    shape_strategy().prop_flat_map(|shape| {
        let elements = enumerate_crystal(&shape, Exec::Sequential);
        proptest::sample::select(elements)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn string_lengths_match_the_weight(t in element_strategy()) {
        let w = t.content();
        for i in 1..=t.rank() {
            prop_assert_eq!(phi(&t, i) as i64 - epsilon(&t, i) as i64, w.pair_coroot(i));
        }
    }

    #[test]
    fn raising_and_lowering_are_inverse(t in element_strategy()) {
        for i in 1..=t.rank() {
            if let Some(up) = e_op(&t, i) {
                prop_assert_eq!(f_op(&up, i), Some(t.clone()));
                prop_assert_eq!(&up.content() - &t.content(), simple_root(i, t.rank()).unwrap());
                prop_assert_eq!(epsilon(&up, i) + 1, epsilon(&t, i));
            }
            if let Some(down) = f_op(&t, i) {
                prop_assert_eq!(e_op(&down, i), Some(t.clone()));
                prop_assert_eq!(phi(&down, i) + 1, phi(&t, i));
            }
            prop_assert_eq!(e_op(&t, i).is_none(), epsilon(&t, i) == 0);
            prop_assert_eq!(f_op(&t, i).is_none(), phi(&t, i) == 0);
        }
    }

    #[test]
    fn operators_preserve_semistandardness(t in element_strategy()) {
        for i in 1..=t.rank() {
            for s in [e_op(&t, i), f_op(&t, i)].into_iter().flatten() {
                prop_assert!(Tableau::new(s.rank(), s.rows().to_vec()).is_ok());
                prop_assert_eq!(s.shape(), t.shape());
            }
        }
    }
}
