mod common;

use common::*;
use sl3web::classify::{is_1_elliptic, is_semi_superficial};
use sl3web::enumerate::enumerate_non_elliptic;
use sl3web::skein::reduce_to_nonelliptic;
use sl3web::{fixtures, glue, kuperberg_bracket, LaurentPoly};

#[test]
fn generator_finds_semi_non_elliptic_inputs() {
    assert!(semi_non_elliptic_inputs(40, 3).len() >= 40);
}

#[test]
fn semi_non_elliptic_webs_reduce_with_positive_integers() {
    let inputs = semi_non_elliptic_inputs(150, 5);
    let t = semi_non_elliptic_shape(&inputs);
    assert!(t.ok(), "{:?}", t.violations);
}

#[test]
fn one_elliptic_webs_reduce_with_degree_one_coefficients() {
    let inputs = one_elliptic_inputs(40, 9);
    assert!(!inputs.is_empty());
    let t = degree_one_shape(&inputs);
    assert!(t.ok(), "{:?}", t.violations);
}

#[test]
fn semi_superficial_fixture() {
    let w = fixtures::semi_superficial();
    assert!(is_semi_superficial(&w) && is_1_elliptic(&w));
    let t = degree_one_shape(&[w]);
    assert!(t.ok(), "{:?}", t.violations);
}

#[test]
fn reduction_preserves_pairings() {
    // Pairing against the reduced form gives the same bracket.
    for w in semi_non_elliptic_inputs(30, 17) {
        let r = reduce_to_nonelliptic(&w);
        let eps = w.boundary().clone();
        let probes = enumerate_non_elliptic(&eps, 2 * eps.len() * eps.len()).unwrap();
        for probe in std::iter::once(&w).chain(probes.iter().take(4)) {
            let probe = probe.clone();
            let direct = kuperberg_bracket(&glue(&probe, &w).unwrap()).unwrap();
            let via = r.terms().fold(LaurentPoly::zero(), |acc, (x, c)| {
                &acc + &(c * &kuperberg_bracket(&glue(&probe, x).unwrap()).unwrap())
            });
            assert_eq!(direct, via);
        }
    }
}
