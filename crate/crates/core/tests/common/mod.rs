//! Oracles and corpus generators shared by the integration suites.

#![allow(dead_code)]

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl3web::classify::{is_1_elliptic, is_non_elliptic, is_semi_non_elliptic, is_superficial};
use sl3web::enumerate::enumerate_non_elliptic;
use sl3web::random::{admissible_boundary, closed_web, epsilon_web};
use sl3web::skein::{apply, find_reducible, reduce_to_nonelliptic, BracketEngine, Policy};
use sl3web::web::Endpoint;
use sl3web::{glue, kuperberg_bracket, LaurentPoly, Sign, SignSequence, Web};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> LaurentPoly {
    LaurentPoly::quantum_int(n).unwrap()
}

/// 200 closed webs built from random pairs of ε-webs with `l(ε) <= 6`.
pub fn closed_corpus() -> Vec<Web> {
    let mut r = rng(2024);
    (0..200).map(|_| closed_web(&mut r, 6, 6)).collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// Ordered ways to pick one weight per tensor factor summing to `target`,
/// where `+` contributes `e_i` and `-` contributes `-e_i`.
fn weight_multiplicity(plus: usize, minus: usize, target: [i64; 3]) -> BigInt {
    let mut total = BigInt::from(0);
    for y0 in 0..=minus {
        for y1 in 0..=minus - y0 {
            let y = [y0 as i64, y1 as i64, (minus - y0 - y1) as i64];
            let x: Vec<i64> = (0..3).map(|i| target[i] + y[i]).collect();
            if x.iter().any(|&v| v < 0) || x.iter().sum::<i64>() != plus as i64 {
                continue;
            }
            let px = x.iter().fold(factorial(plus), |acc, &v| acc / factorial(v as usize));
            let my = y.iter().fold(factorial(minus), |acc, &v| acc / factorial(v as usize));
            total += px * my;
        }
    }
    total
}

/// Multiplicity of the trivial representation in the tensor product, by
/// the Weyl alternating sum over weight multiplicities.
pub fn weyl_invariant_dim(eps: &SignSequence) -> BigInt {
    let plus = eps.signs().iter().filter(|&&s| s == Sign::Plus).count();
    let minus = eps.len() - plus;
    let diff = plus as i64 - minus as i64;
    if diff.rem_euclid(3) != 0 {
        return BigInt::from(0);
    }
    let shift = diff / 3;
    let rho = [2i64, 1, 0];
    let mut total = BigInt::from(0);
    for perm in (0..3).permutations(3) {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let target: [i64; 3] = std::array::from_fn(|i| rho[perm[i]] - rho[i] + shift);
        let m = weight_multiplicity(plus, minus, target);
        if inversions % 2 == 0 {
            total += m;
        } else {
            total -= m;
        }
    }
    total
}

/// Proper 3-edge-colourings of a closed web, each vertexless circle
/// counting 3.
pub fn tait_colourings(w: &Web) -> u64 {
    let raw = w.to_raw();
    let n = raw.vertices.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in raw.edges.iter().enumerate() {
        for end in [a, b] {
            if let Endpoint::Vertex(v) = end {
                incident[v].push(e);
            }
        }
    }
    let mut colour = vec![None; raw.edges.len()];
    fn go(e: usize, colour: &mut Vec<Option<u8>>, raw: &sl3web::web::RawWeb, incident: &[Vec<usize>]) -> u64 {
        if e == colour.len() {
            return 1;
        }
        let mut count = 0;
        for c in 0..3u8 {
            let clash = [raw.edges[e].0, raw.edges[e].1].iter().any(|end| match end {
                Endpoint::Vertex(v) => incident[*v].iter().any(|&f| f != e && colour[f] == Some(c)),
                Endpoint::Boundary(_) => false,
            });
            if !clash {
                colour[e] = Some(c);
                count += go(e + 1, colour, raw, incident);
                colour[e] = None;
            }
        }
        count
    }
    go(0, &mut colour, &raw, &incident) * 3u64.pow(raw.circles as u32)
}

/// Bracket computed on the planar web itself, rewriting the first
/// reducible face until nothing is left.
pub fn surgery_bracket(w: &Web) -> LaurentPoly {
    match find_reducible(w) {
        None => {
            assert_eq!(w.vertex_count() + w.circle_count(), 0, "closed web without reducible face");
            LaurentPoly::one()
        }
        Some(r) => {
            let step = apply(w, r).unwrap();
            let mut acc = LaurentPoly::zero();
            for (t, c) in step.terms() {
                acc += &(c * &surgery_bracket(t));
            }
            acc
        }
    }
}

/// A pair of non-elliptic webs on a shared random boundary.
pub fn non_elliptic_pair<R: Rng>(r: &mut R, max_len: usize, cache: &mut HashMap<SignSequence, Vec<Web>>) -> (Web, Web) {
    loop {
        let eps = admissible_boundary(r, max_len);
        let webs = cache
            .entry(eps.clone())
            .or_insert_with(|| enumerate_non_elliptic(&eps, 2 * eps.len() * eps.len()).unwrap());
        if let (Some(a), Some(b)) = (webs.choose(r), webs.choose(r)) {
            return (a.clone(), b.clone());
        }
    }
}

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn confluence(webs: &[Web], policies: u64) -> Tally {
    let mut t = Tally::default();
    let engines: Vec<BracketEngine> = (0..policies).map(|s| BracketEngine::new(Policy::Random(s))).collect();
    for (i, w) in webs.iter().enumerate() {
        let expected = kuperberg_bracket(w).unwrap();
        for (s, e) in engines.iter().enumerate() {
            let got = e.closed_part(w);
            t.check(got == expected, || format!("web {i}, policy {s}: {got} vs {expected}"));
        }
    }
    t
}

pub fn symmetry_and_positivity(webs: &[Web]) -> Tally {
    let mut t = Tally::default();
    for (i, w) in webs.iter().enumerate() {
        let b = kuperberg_bracket(w).unwrap();
        t.check(b.is_symmetric(), || format!("web {i}: {b} is not symmetric"));
        t.check(b.has_nonnegative_coefficients(), || format!("web {i}: {b} has a negative coefficient"));
    }
    t
}

pub fn transpose(pairs: usize, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut r = rng(seed);
    let mut cache = HashMap::new();
    for _ in 0..pairs {
        let (a, b) = non_elliptic_pair(&mut r, 8, &mut cache);
        let ab = kuperberg_bracket(&glue(&a, &b).unwrap()).unwrap();
        let ba = kuperberg_bracket(&glue(&b, &a).unwrap()).unwrap();
        t.check(ab == ba, || format!("{}: {ab} vs {ba}", a.boundary()));
    }
    t
}

pub fn enumeration_counts(max_len: usize) -> Tally {
    let mut t = Tally::default();
    for eps in SignSequence::all_admissible(max_len) {
        let webs = enumerate_non_elliptic(&eps, 2 * eps.len() * eps.len()).unwrap();
        let oracle = weyl_invariant_dim(&eps);
        t.check(BigInt::from(webs.len()) == oracle, || format!("{eps}: {} webs, oracle {oracle}", webs.len()));
    }
    t
}

/// Superficial semi-non-elliptic webs that still have squares, drawn from
/// random ε-webs.
pub fn semi_non_elliptic_inputs(count: usize, seed: u64) -> Vec<Web> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 200 * count {
        tries += 1;
        let eps = admissible_boundary(&mut r, 9);
        let n = r.gen_range(2..=12);
        let w = epsilon_web(&mut r, &eps, n);
        if !is_non_elliptic(&w) && is_superficial(&w) && is_semi_non_elliptic(&w) {
            out.push(w);
        }
    }
    out
}

/// Superficial 1-elliptic webs with a block holding two squares.
pub fn one_elliptic_inputs(count: usize, seed: u64) -> Vec<Web> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 400 * count {
        tries += 1;
        let eps = admissible_boundary(&mut r, 9);
        let n = r.gen_range(4..=14);
        let w = epsilon_web(&mut r, &eps, n);
        if is_superficial(&w) && is_1_elliptic(&w) && !is_semi_non_elliptic(&w) {
            out.push(w);
        }
    }
    out
}

pub fn semi_non_elliptic_shape(inputs: &[Web]) -> Tally {
    let mut t = Tally::default();
    for (i, w) in inputs.iter().enumerate() {
        let r = reduce_to_nonelliptic(w);
        t.check(!r.is_empty(), || format!("input {i}: reduces to zero"));
        for (x, c) in r.terms() {
            let positive_integer = c.degree() == sl3web::laurent::Degree::Finite(0)
                && c.low_degree() == Some(0)
                && c.coefficient(0) > BigInt::from(0);
            t.check(positive_integer, || format!("input {i}: coefficient {c}"));
            t.check(x.vertex_count() < w.vertex_count(), || format!("input {i}: term keeps {} vertices", x.vertex_count()));
            t.check(is_non_elliptic(x) && is_superficial(x), || format!("input {i}: term is not superficial non-elliptic"));
        }
    }
    t
}

/// Every coefficient symmetric, nonnegative, of degree at most 1, and every
/// term non-elliptic.
pub fn degree_one_shape(inputs: &[Web]) -> Tally {
    let mut t = Tally::default();
    for (i, w) in inputs.iter().enumerate() {
        for (x, c) in reduce_to_nonelliptic(w).terms() {
            let shape = c.is_symmetric()
                && c.has_nonnegative_coefficients()
                && c.degree() <= sl3web::laurent::Degree::Finite(1);
            t.check(shape, || format!("input {i}: coefficient {c}"));
            t.check(is_non_elliptic(x), || format!("input {i}: term is elliptic"));
        }
    }
    t
}
