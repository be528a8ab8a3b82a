mod common;

use common::*;
use proptest::prelude::*;
use sl3web::skein::{apply, find_reducible, ReducibleKind};
use sl3web::{fixtures, glue, kuperberg_bracket, LaurentPoly};

#[test]
fn local_relations() {
    assert_eq!(kuperberg_bracket(&fixtures::circle()).unwrap(), q(3));
    assert_eq!(kuperberg_bracket(&fixtures::theta()).unwrap(), &q(2) * &q(3));
    let cube = fixtures::cube();
    let r = find_reducible(&cube).unwrap();
    assert_eq!(r.kind, ReducibleKind::Square);
    let split = apply(&cube, r).unwrap();
    // Both resolutions of a cube face are the same web, so they merge.
    let weight: i64 = split.terms().map(|(_, c)| i64::try_from(c.eval_one()).unwrap()).sum();
    assert_eq!(weight, 2);
    let sum = split
        .terms()
        .fold(LaurentPoly::zero(), |acc, (w, c)| &acc + &(c * &surgery_bracket(w)));
    assert_eq!(kuperberg_bracket(&cube).unwrap(), sum);
}

#[test]
fn cube_value() {
    let expected = &LaurentPoly::constant(2) * &(&q(2).pow(2) * &q(3));
    assert_eq!(kuperberg_bracket(&fixtures::cube()).unwrap(), expected);
}

#[test]
fn golden_pairings() {
    let w0 = fixtures::kk_w0();
    assert_eq!(kuperberg_bracket(&glue(&w0, &w0).unwrap()).unwrap(), q(3).pow(6));
    let w = fixtures::kk_w();
    let expected = LaurentPoly::from_terms(
        [2, 80, 902, 4604, 13158, 23684, 28612, 23684, 13158, 4604, 902, 80, 2]
            .into_iter()
            .enumerate()
            .map(|(i, c)| (12 - 2 * i as i64, c)),
    );
    assert_eq!(kuperberg_bracket(&glue(&w, &w).unwrap()).unwrap(), expected);
}

#[test]
fn random_policies_are_confluent() {
    let t = confluence(&closed_corpus(), 20);
    assert!(t.ok(), "{:?}", t.violations);
}

#[test]
fn planar_rewriting_matches_engine() {
    let corpus = closed_corpus();
    for w in corpus.iter().filter(|w| w.vertex_count() <= 14) {
        assert_eq!(surgery_bracket(w), kuperberg_bracket(w).unwrap());
    }
}

#[test]
fn symmetric_with_nonnegative_coefficients() {
    let t = symmetry_and_positivity(&closed_corpus());
    assert!(t.ok(), "{:?}", t.violations);
}

#[test]
fn pairing_is_symmetric_in_its_arguments() {
    let t = transpose(100, 11);
    assert!(t.ok(), "{:?}", t.violations);
}

#[test]
fn value_at_one_counts_tait_colourings() {
    for w in closed_corpus().iter().take(60) {
        let b = kuperberg_bracket(w).unwrap();
        assert_eq!(b.eval_one(), tait_colourings(w).into());
    }
    let w = fixtures::kk_w();
    assert_eq!(kuperberg_bracket(&glue(&w, &w).unwrap()).unwrap().eval_one(), 113472.into());
}

#[test]
fn mirror_and_disjoint_union() {
    let corpus = closed_corpus();
    for pair in corpus.chunks(2).take(30) {
        let (a, b) = (&pair[0], &pair[1]);
        let ba = kuperberg_bracket(a).unwrap();
        assert_eq!(kuperberg_bracket(&a.mirror()).unwrap(), ba);
        let u = a.disjoint_union(b, None).unwrap();
        assert_eq!(kuperberg_bracket(&u).unwrap(), &ba * &kuperberg_bracket(b).unwrap());
    }
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn random_closed_webs_are_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = sl3web::random::closed_web(&mut r, 6, 6);
        let b = kuperberg_bracket(&w).unwrap();
        prop_assert!(b.is_symmetric() && b.has_nonnegative_coefficients());
    }
}
