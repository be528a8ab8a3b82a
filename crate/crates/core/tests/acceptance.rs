//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_rational::BigRational;
use num_traits::Zero;
use sl3web::certify::{certify_indecomposable, verify_key_lemma, Verdict};
use sl3web::classify::Classification;
use sl3web::foam::PreFoam;
use sl3web::random::pre_foam;
use sl3web::skein::{apply, find_reducible, ReducibleKind};
use sl3web::{fixtures, glue, kuperberg_bracket, LaurentPoly};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn relations() -> Outcome {
    let circle = kuperberg_bracket(&fixtures::circle()).unwrap();
    let theta = kuperberg_bracket(&fixtures::theta()).unwrap();
    let cube = fixtures::cube();
    let r = find_reducible(&cube).unwrap();
    let split = apply(&cube, r).unwrap();
    let resolved = split
        .terms()
        .fold(LaurentPoly::zero(), |acc, (w, c)| &acc + &(c * &surgery_bracket(w)));
    let whole = kuperberg_bracket(&cube).unwrap();
    let pass = r.kind == ReducibleKind::Square && circle == q(3) && theta == &q(2) * &q(3) && whole == resolved;
    outcome(pass, format!("circle = {circle}; theta = {theta}; cube = {whole} = sum of resolutions {resolved}"))
}

fn pairing(w: &sl3web::Web) -> LaurentPoly {
    kuperberg_bracket(&glue(w, w).unwrap()).unwrap()
}

fn palindrome(top: &[i64]) -> LaurentPoly {
    let n = top.len() as i64 - 1;
    let coeffs = top.iter().chain(top.iter().rev().skip(1));
    LaurentPoly::from_terms(coeffs.enumerate().map(|(i, &c)| (2 * n - 2 * i as i64, c)))
}

fn w0_pairing() -> Outcome {
    let got = pairing(&fixtures::kk_w0());
    let expected = palindrome(&[1, 6, 21, 50, 90, 126, 141]);
    outcome(got == expected && got == q(3).pow(6), format!("{got}"))
}

fn w_pairing() -> Outcome {
    let got = pairing(&fixtures::kk_w());
    let expected = palindrome(&[2, 80, 902, 4604, 13158, 23684, 28612]);
    outcome(got == expected, format!("{got}"))
}

fn certificates() -> Outcome {
    let c0 = certify_indecomposable(&fixtures::kk_w0()).unwrap();
    let c = certify_indecomposable(&fixtures::kk_w()).unwrap();
    let cw = Classification::of(&fixtures::kk_w());
    let cw0 = Classification::of(&fixtures::kk_w0());
    let pass = c0.verdict == Verdict::Indecomposable
        && c.verdict == Verdict::Inconclusive
        && c.witness.leading_coefficient() == 2.into()
        && !cw.superficial
        && cw0.superficial
        && c0.recheck()
        && c.recheck();
    outcome(
        pass,
        format!(
            "w0: {}; w: {} (leading coefficient {}); w superficial: {}; w0 superficial: {}, non-elliptic: {}",
            c0.verdict,
            c.verdict,
            c.witness.leading_coefficient(),
            cw.superficial,
            cw0.superficial,
            cw0.non_elliptic
        ),
    )
}

fn foam_values() -> Outcome {
    let values: Vec<BigRational> = fixtures::spheres().iter().map(|(_, f)| f.evaluate().unwrap()).collect();
    let torus = fixtures::torus().evaluate().unwrap();
    let t = fixtures::foam_t().evaluate().unwrap();
    let int = |n: i64| BigRational::from_integer(n.into());
    let pass = values == [int(0), int(0), int(-1)] && torus == int(3) && t == int(-2);
    outcome(
        pass,
        format!("spheres with 0, 1, 2 dots = {}, {}, {}; torus = {torus}; t = {t}", values[0], values[1], values[2]),
    )
}

fn key_lemma() -> Outcome {
    let r = verify_key_lemma(6, None).unwrap();
    let webs: usize = r.boundaries.iter().map(|b| b.webs).sum();
    outcome(
        r.all_nice(),
        format!(
            "{} boundaries, {webs} webs, {} pairs, {} counterexamples",
            r.boundaries.len(),
            r.pairs,
            r.counterexamples.len()
        ),
    )
}

fn property_suites() -> Outcome {
    let corpus = closed_corpus();
    let semi_inputs = semi_non_elliptic_inputs(150, 5);
    let suites = [
        ("confluence", confluence(&corpus, 20)),
        ("symmetry/positivity", symmetry_and_positivity(&corpus)),
        ("transpose", transpose(100, 11)),
        ("enumeration counts", enumeration_counts(6)),
        ("semi-non-elliptic shape", semi_non_elliptic_shape(&semi_inputs)),
    ];
    let pass = suites.iter().all(|(_, t)| t.ok()) && semi_inputs.len() == 150;
    let detail = suites
        .iter()
        .map(|(name, t)| format!("{name} {} checks {} violations", t.checked, t.violations.len()))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(pass, detail)
}

fn degree_vanishing() -> Outcome {
    let mut r = rng(99);
    let mut foams: Vec<PreFoam> = Vec::new();
    while foams.len() < 100 {
        let f = pre_foam(&mut r, 6);
        if f.degree() != 0 {
            foams.push(f);
        }
    }
    let nonzero = foams.iter().filter(|f| !f.evaluate().unwrap().is_zero()).count();
    outcome(nonzero == 0, format!("{} foams, {nonzero} nonzero", foams.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 circle, digon and square relations", relations, Duration::from_secs(1)),
        ("2 pairing of w0 with itself", w0_pairing, Duration::from_secs(5)),
        ("3 pairing of w with itself", w_pairing, Duration::from_secs(60)),
        ("4 certificates on w and w0", certificates, Duration::from_secs(60)),
        ("5 foam values", foam_values, Duration::from_secs(1)),
        ("6 key lemma up to length 6", key_lemma, Duration::from_secs(600)),
        ("7 property suites", property_suites, Duration::MAX),
        ("8 foam degree vanishing", degree_vanishing, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= limit;
        if !pass {
            failed += 1;
        }
        println!("{} {name} [{elapsed:.2?}]: {}", if pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
