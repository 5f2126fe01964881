//! Property-based tests for the exact-arithmetic invariants.

use proptest::prelude::*;

use ndslab::maps::PLMap;
use ndslab::rational::{rat, Rational};
use ndslab::space::{cantor_metric, circle_metric, CantorWord, CirclePoint, RationalInterval};

fn small_rational() -> impl Strategy<Value = Rational> {
    (0i64..=256, 1u32..=8).prop_map(|(n, d)| rat(n.min(1 << d), 1 << d))
}

fn pl_map() -> impl Strategy<Value = PLMap> {
    (
        proptest::collection::btree_set(1i64..64, 1..4),
        proptest::collection::vec(0i64..=32, 5),
    )
        .prop_map(|(cuts, values)| {
            let mut breakpoints = vec![Rational::zero()];
            breakpoints.extend(cuts.iter().map(|c| rat(*c, 64)));
            breakpoints.push(Rational::one());
            let values = values.into_iter().take(breakpoints.len()).map(|v| rat(v, 32)).collect();
            PLMap::new(breakpoints, values).expect("generated map is valid")
        })
}

fn word_pair() -> impl Strategy<Value = (CantorWord, CantorWord)> {
    (1usize..24).prop_flat_map(|len| {
        (
            proptest::collection::vec(0u8..2, len),
            proptest::collection::vec(0u8..2, len),
        )
            .prop_map(|(a, b)| (CantorWord::new(a).unwrap(), CantorWord::new(b).unwrap()))
    })
}

proptest! {
    #[test]
    fn rational_display_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        prop_assert_eq!(Rational::parse(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn circle_metric_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        let (p, q, r) = (CirclePoint::new(a), CirclePoint::new(b), CirclePoint::new(c));
        prop_assert_eq!(circle_metric(&p, &q), circle_metric(&q, &p));
        prop_assert!(circle_metric(&p, &r) <= circle_metric(&p, &q) + circle_metric(&q, &r));
        prop_assert!(circle_metric(&p, &q) <= rat(1, 2));
        prop_assert_eq!(circle_metric(&p, &q).is_zero(), p == q);
    }

    #[test]
    fn cantor_metric_values_are_unit_fractions((a, b) in word_pair()) {
        let d = cantor_metric(&a, &b);
        prop_assert!(d.is_zero() || d.numer() == &num_bigint_one());
        prop_assert_eq!(cantor_metric(&a, &b), cantor_metric(&b, &a));
    }

    #[test]
    fn pl_evaluate_matches_preimage(f in pl_map(), x in small_rational()) {
        let y = f.evaluate(&x).unwrap();
        let pre = f.preimage(&y).unwrap();
        prop_assert!(
            pre.points.contains(&x) || pre.plateaus.iter().any(|iv| iv.contains(&x)),
            "x = {x} missing from the preimage of f(x) = {y}"
        );
    }

    #[test]
    fn pl_compose_agrees_pointwise(f in pl_map(), g in pl_map(), x in small_rational()) {
        let composed = g.compose_after(&f);
        let direct = g.evaluate(&f.evaluate(&x).unwrap()).unwrap();
        prop_assert_eq!(composed.evaluate(&x).unwrap(), direct);
    }

    #[test]
    fn pl_image_covers_grid_values(f in pl_map(), lo in small_rational(), hi in small_rational()) {
        prop_assume!(lo < hi);
        let span = RationalInterval::new(lo.clone(), hi.clone()).unwrap();
        let image = f.image_of_interval(&span);
        for i in 0..=8i64 {
            let x = &lo + (&hi - &lo) * rat(i, 8);
            let y = f.evaluate(&x).unwrap();
            prop_assert!(image.contains(&y), "f({x}) = {y} outside image {image:?}");
        }
    }

    #[test]
    fn sup_distance_dominates_pointwise(f in pl_map(), g in pl_map(), x in small_rational()) {
        let d = f.sup_distance(&g);
        let pointwise = (f.evaluate(&x).unwrap() - g.evaluate(&x).unwrap()).abs();
        prop_assert!(pointwise <= d);
    }

    #[test]
    fn map_spec_serde_roundtrip(f in pl_map()) {
        use ndslab::maps::{Map, MapSpec};
        let spec = Map::Pl(f).to_spec(0);
        let json = serde_json::to_string(&spec).unwrap();
        let back: MapSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, spec);
    }
}

fn num_bigint_one() -> num_bigint::BigInt {
    num_bigint::BigInt::from(1)
}
