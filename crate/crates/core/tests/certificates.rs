use sl3web::certify::{
    certify_indecomposable, certify_not_isomorphic, is_nice, verify_key_lemma, CertifyError, Question, Verdict,
};
use sl3web::classify::{is_non_elliptic, is_superficial, Classification};
use sl3web::enumerate::enumerate_superficial_non_elliptic;
use sl3web::laurent::Degree;
use sl3web::{fixtures, SignSequence};

#[test]
fn fixture_webs() {
    let w0 = fixtures::kk_w0();
    let c = certify_indecomposable(&w0).unwrap();
    assert_eq!(c.verdict, Verdict::Indecomposable);
    assert!(c.recheck());

    let w = fixtures::kk_w();
    let c = certify_indecomposable(&w).unwrap();
    assert_eq!(c.verdict, Verdict::Inconclusive);
    assert_eq!(c.witness.leading_coefficient(), 2.into());
    assert!(c.recheck());

    let cw = Classification::of(&w);
    assert!(cw.non_elliptic && !cw.superficial);
    assert_eq!(cw.nested_faces, vec![6]);
    let c0 = Classification::of(&w0);
    assert!(c0.non_elliptic && c0.superficial);
}

#[test]
fn pairing_of_the_two_fixtures_reaches_top_degree() {
    // The module of w0 is a summand of the one of w, so no certificate.
    let c = certify_not_isomorphic(&fixtures::kk_w(), &fixtures::kk_w0()).unwrap();
    assert_eq!(c.question, Question::NotIsomorphic);
    assert_eq!(c.verdict, Verdict::Inconclusive);
    assert_eq!(c.witness.degree(), Degree::Finite(12));
    assert!(c.recheck());
}

#[test]
fn nice_requires_superficial() {
    let w = fixtures::kk_w();
    assert!(matches!(is_nice(&w, &w), Err(CertifyError::NotSuperficial { index: 0 })));
}

#[test]
fn superficial_webs_are_indecomposable_and_distinct() {
    let eps: SignSequence = "+-+-+-".parse().unwrap();
    let webs = enumerate_superficial_non_elliptic(&eps, 72).unwrap();
    assert!(webs.iter().all(|w| is_superficial(w) && is_non_elliptic(w)));
    for (i, a) in webs.iter().enumerate() {
        assert_eq!(certify_indecomposable(a).unwrap().verdict, Verdict::Indecomposable);
        for b in &webs[i + 1..] {
            assert_eq!(certify_not_isomorphic(a, b).unwrap().verdict, Verdict::NotIsomorphic);
        }
    }
}

#[test]
fn tampered_certificate_fails_recheck() {
    let mut c = certify_indecomposable(&fixtures::y()).unwrap();
    c.witness = c.witness.shift(2);
    assert!(!c.recheck());
}

#[test]
fn key_lemma_up_to_four() {
    let r = verify_key_lemma(4, None).unwrap();
    assert!(r.all_nice());
    assert_eq!(r.pairs, r.boundaries.iter().map(|b| b.webs * b.webs).sum::<usize>());
}
