mod common;

use common::rng;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use sl3web::fixtures;
use sl3web::foam::{parse_foams, theta_value, write_foam, Facet, FoamError, PreFoam, SingularCircle};
use sl3web::random::pre_foam;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn closed_surface(genus: usize, dots: usize) -> PreFoam {
    PreFoam {
        facets: vec![Facet {
            name: "s".into(),
            genus,
            dots,
            slots: 0,
        }],
        singular: Vec::new(),
    }
}

#[test]
fn bundled_values() {
    let spheres: Vec<BigRational> = fixtures::spheres().iter().map(|(_, f)| f.evaluate().unwrap()).collect();
    assert_eq!(spheres, vec![int(0), int(0), int(-1)]);
    assert_eq!(fixtures::torus().evaluate().unwrap(), int(3));
    assert_eq!(fixtures::foam_t().evaluate().unwrap(), int(-2));
    assert_eq!(fixtures::theta_foam().evaluate().unwrap(), int(1));
}

#[test]
fn closed_surfaces() {
    // Genus g with d dots: the trace of X^d (-3X^2)^g.
    assert_eq!(closed_surface(2, 0).evaluate().unwrap(), int(0));
    assert_eq!(closed_surface(1, 1).evaluate().unwrap(), int(0));
    assert_eq!(closed_surface(0, 3).evaluate().unwrap(), int(0));
}

#[test]
fn theta_foams_match_the_table() {
    for dots in itertools::iproduct!(0..3usize, 0..3usize, 0..3usize) {
        let facets = [dots.0, dots.1, dots.2]
            .iter()
            .enumerate()
            .map(|(i, &d)| Facet {
                name: format!("f{i}"),
                genus: 0,
                dots: d,
                slots: 1,
            })
            .collect();
        let f = PreFoam {
            facets,
            singular: vec![SingularCircle {
                name: "s".into(),
                legs: [(0, 0), (1, 0), (2, 0)],
            }],
        };
        assert_eq!(f.evaluate().unwrap(), int(theta_value(dots.0, dots.1, dots.2)), "{dots:?}");
    }
}

#[test]
fn open_slots_are_rejected() {
    let f = PreFoam {
        facets: vec![Facet {
            name: "a".into(),
            genus: 0,
            dots: 0,
            slots: 1,
        }],
        singular: Vec::new(),
    };
    assert_eq!(
        f.evaluate(),
        Err(FoamError::NotClosed {
            facet: "a".into(),
            slot: 0
        })
    );
}

#[test]
fn nonzero_degree_evaluates_to_zero() {
    let mut r = rng(99);
    let mut seen = 0;
    while seen < 100 {
        let f = pre_foam(&mut r, 6);
        if f.degree() != 0 {
            assert!(f.evaluate().unwrap().is_zero(), "degree {}: {}", f.degree(), write_foam("f", &f));
            seen += 1;
        }
    }
}

#[test]
fn text_round_trip() {
    let mut r = rng(5);
    for _ in 0..50 {
        let f = pre_foam(&mut r, 5);
        let back = parse_foams(&write_foam("f", &f)).unwrap();
        assert_eq!(back, vec![("f".to_string(), f)]);
    }
}

proptest! {
    #[test]
    fn cyclic_rotation_keeps_the_value(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = pre_foam(&mut r, 5);
        let v = f.evaluate().unwrap();
        let mut rotated = f.clone();
        for c in &mut rotated.singular {
            c.legs.rotate_left(1);
        }
        prop_assert_eq!(rotated.evaluate().unwrap(), v.clone());
        if let Some(c) = f.singular.first() {
            let mut swapped = f.clone();
            swapped.singular[0].legs = [c.legs[1], c.legs[0], c.legs[2]];
            prop_assert_eq!(swapped.evaluate().unwrap(), -v);
        }
    }

    #[test]
    fn contraction_order_is_irrelevant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = pre_foam(&mut r, 6);
        let mut order: Vec<usize> = (0..f.singular.len()).collect();
        order.shuffle(&mut r);
        prop_assert_eq!(f.evaluate_with_order(&order).unwrap(), f.evaluate().unwrap());
    }

    #[test]
    fn union_multiplies(a in any::<u64>(), b in any::<u64>()) {
        let f = pre_foam(&mut rng(a), 4);
        let g = pre_foam(&mut rng(b), 4);
        prop_assert_eq!(f.union(&g).evaluate().unwrap(), f.evaluate().unwrap() * g.evaluate().unwrap());
        prop_assert_eq!(f.union(&g).degree(), f.degree() + g.degree());
    }
}
