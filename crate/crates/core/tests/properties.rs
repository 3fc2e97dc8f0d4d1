use proptest::prelude::*;
use weilkit::algebra::Rational;
use weilkit::fat::simplex_integral;
use weilkit::groupoid::{coboundary, cup, nerve, Cochain, FiniteGroup, FiniteGroupoid};
use weilkit::io::{element_from_doc, element_to_doc, parse_rational};
use weilkit::lie::LieAlgebraData;
use weilkit::sample;
use weilkit::simplicial::SimplicialGda;
use weilkit::weil::weil_algebra;

fn lie(k: usize) -> LieAlgebraData {
    match k % 3 {
        0 => LieAlgebraData::u1(),
        1 => LieAlgebraData::so3(),
        _ => LieAlgebraData::heisenberg(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(seed: u64, k in 0usize..3, degree in 1u32..5) {
        let w = weil_algebra(&lie(k));
        let mut rng = sample::rng(seed);
        let x = sample::homogeneous(w.table(), degree, 4, &mut rng);
        prop_assert!(w.d(&w.d(&x)).is_zero());
    }

    #[test]
    fn contractions_anticommute(seed: u64, degree in 1u32..5, j in 0usize..3, l in 0usize..3) {
        let w = weil_algebra(&LieAlgebraData::so3());
        let mut rng = sample::rng(seed);
        let x = sample::homogeneous(w.table(), degree, 4, &mut rng);
        let a = w.contract(j, &w.contract(l, &x));
        let b = w.contract(l, &w.contract(j, &x));
        prop_assert_eq!(a, -b);
    }

    #[test]
    fn products_are_graded_commutative(seed: u64, da in 1u32..4, db in 1u32..4) {
        let w = weil_algebra(&LieAlgebraData::sl2());
        let mut rng = sample::rng(seed);
        let a = sample::homogeneous(w.table(), da, 3, &mut rng);
        let b = sample::homogeneous(w.table(), db, 3, &mut rng);
        let ab = &a * &b;
        let ba = &b * &a;
        prop_assert_eq!(ab, if (da * db) % 2 == 0 { ba } else { -ba });
    }

    #[test]
    fn delta_squared_vanishes(seed: u64, k in 0usize..2, total in 1u32..4) {
        let s = SimplicialGda::tensor_power(&weil_algebra(&lie(k)));
        let mut rng = sample::rng(seed);
        let x = sample::bigraded(&s, total, 2, 3, &mut rng);
        prop_assert!(s.delta(&s.delta(&x)).is_zero());
    }

    #[test]
    fn elements_round_trip_through_json(seed: u64, degree in 0u32..5) {
        let w = weil_algebra(&LieAlgebraData::so3());
        let mut rng = sample::rng(seed);
        let x = sample::homogeneous(w.table(), degree, 5, &mut rng);
        let doc = element_to_doc(&x);
        let text = serde_json::to_string(&doc).unwrap();
        let back = element_from_doc(w.table(), &serde_json::from_str::<Vec<_>>(&text).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rationals_round_trip(n: i64, d in 1i64..1_000_000) {
        let r = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn simplex_integral_is_symmetric(a in proptest::collection::vec(0u32..5, 1..4), rot in 0usize..3) {
        let mut b = a.clone();
        b.rotate_left(rot % a.len());
        prop_assert_eq!(simplex_integral(&a), simplex_integral(&b));
    }

    #[test]
    fn groupoid_cup_is_associative(values in proptest::collection::vec(-5i64..5, 3 + 9 + 27)) {
        let g = FiniteGroupoid::pair(3);
        let n = nerve(&g, 3);
        let q = |v: &[i64], level| Cochain { level, values: v.iter().map(|&x| Rational::from_integer(x.into())).collect() };
        let a = q(&values[..3], 0);
        let b = q(&values[3..12], 1);
        let c = q(&values[..3], 0);
        prop_assert_eq!(cup(&n, &cup(&n, &a, &b), &c), cup(&n, &a, &cup(&n, &b, &c)));
        let e = q(&values[12..], 2);
        prop_assert!(coboundary(&n, &coboundary(&n, &b)).is_zero());
        prop_assert_eq!(cup(&n, &b, &a).level, 1);
        prop_assert_eq!(coboundary(&n, &e).level, 3);
    }

    #[test]
    fn cyclic_groups_are_groups(n in 1usize..9) {
        let g = FiniteGroup::cyclic(n);
        prop_assert!(FiniteGroup::new(g.names().to_vec(), g.table().to_vec()).is_ok());
        prop_assert!(FiniteGroupoid::from_group(&g).validate().is_ok());
    }
}
