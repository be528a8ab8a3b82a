//! Exhaustive enumeration of non-elliptic ε-webs and the invariant-space
//! dimension they should match.
//!
//! Every non-elliptic web with a nonempty boundary has two neighbouring
//! boundary points (cyclically) joined by an arc, by the two legs of a
//! vertex (a Y), or by the two legs of an H. Removing that piece leaves a
//! smaller non-elliptic web, so all webs arise by attaching arcs, Ys and Hs
//! to smaller ones.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classify::{is_non_elliptic, is_superficial};
use crate::sign::{Sign, SignSequence};
use crate::web::{CanonicalCode, Endpoint, Polarity, Web};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("boundary {0} is not admissible")]
    NotAdmissible(SignSequence),
    #[error("vertex budget {budget} exceeded: webs with more vertices may exist")]
    BudgetExceeded { budget: usize },
}

/// The default vertex budget, `2 l²`.
pub fn default_budget(eps: &SignSequence) -> usize {
    2 * eps.len() * eps.len()
}

/// Dimension of the invariant space of the tensor product of standard
/// representations (`+`) and their duals (`-`) in order.
pub fn invariant_dim(eps: &SignSequence) -> u128 {
    let mut cur: BTreeMap<(usize, usize), u128> = BTreeMap::from([((0, 0), 1)]);
    for &s in eps.signs() {
        let mut next: BTreeMap<(usize, usize), u128> = BTreeMap::new();
        for (&(a, b), &m) in &cur {
            let steps: [(i64, i64); 3] = match s {
                Sign::Plus => [(1, 0), (-1, 1), (0, -1)],
                Sign::Minus => [(0, 1), (1, -1), (-1, 0)],
            };
            for (da, db) in steps {
                let (na, nb) = (a as i64 + da, b as i64 + db);
                if na >= 0 && nb >= 0 {
                    *next.entry((na as usize, nb as usize)).or_default() += m;
                }
            }
        }
        cur = next;
    }
    cur.get(&(0, 0)).copied().unwrap_or(0)
}

/// The piece sitting in the gap after boundary point `i` (cyclically).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Piece {
    Arc,
    Y,
    H,
}

impl Piece {
    pub(crate) fn vertices(self) -> usize {
        match self {
            Piece::Arc => 0,
            Piece::Y => 1,
            Piece::H => 2,
        }
    }

    pub(crate) fn fits(self, a: Sign, b: Sign) -> bool {
        match self {
            Piece::Y => a == b,
            Piece::Arc | Piece::H => a != b,
        }
    }
}

/// Boundary of the smaller web obtained by removing `piece` from the gap
/// after point `i` of `eps`.
pub(crate) fn sub_boundary(eps: &SignSequence, i: usize, piece: Piece) -> SignSequence {
    let n = eps.len();
    let s = eps.signs();
    let j = (i + 1) % n;
    let wrap = j == 0;
    let v: Vec<Sign> = match (piece, wrap) {
        (Piece::Arc, false) => s.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect(),
        (Piece::Arc, true) => s[1..n - 1].to_vec(),
        (Piece::Y, false) => {
            let mut v = s[..i].to_vec();
            v.push(s[i].flip());
            v.extend_from_slice(&s[j + 1..]);
            v
        }
        (Piece::Y, true) => {
            let mut v = s[1..n - 1].to_vec();
            v.push(s[i].flip());
            v
        }
        (Piece::H, _) => {
            let mut v = s.to_vec();
            v[i] = v[i].flip();
            v[j] = v[j].flip();
            v
        }
    };
    SignSequence::new(v)
}

/// Attaches `piece` in the gap after point `i` of `eps` to `sub`, a web
/// whose boundary is `sub_boundary(eps, i, piece)` and which touches the
/// boundary everywhere (no closed components).
pub(crate) fn attach(eps: &SignSequence, i: usize, piece: Piece, sub: &Web) -> Web {
    let n = eps.len();
    let j = (i + 1) % n;
    let wrap = j == 0;
    let mut raw = sub.to_raw();
    raw.boundary = eps.clone();
    let nv = raw.vertices.len();
    // Where sub point k goes: a new boundary index, or a new vertex.
    let place = |k: usize| -> Endpoint {
        match (piece, wrap) {
            (Piece::Arc, false) => Endpoint::Boundary(if k < i { k } else { k + 2 }),
            (Piece::Arc, true) => Endpoint::Boundary(k + 1),
            (Piece::Y, false) => match k.cmp(&i) {
                std::cmp::Ordering::Less => Endpoint::Boundary(k),
                std::cmp::Ordering::Equal => Endpoint::Vertex(nv),
                std::cmp::Ordering::Greater => Endpoint::Boundary(k + 1),
            },
            (Piece::Y, true) => {
                if k == n - 2 {
                    Endpoint::Vertex(nv)
                } else {
                    Endpoint::Boundary(k + 1)
                }
            }
            (Piece::H, _) => {
                if k == i {
                    Endpoint::Vertex(nv)
                } else if k == j {
                    Endpoint::Vertex(nv + 1)
                } else {
                    Endpoint::Boundary(k)
                }
            }
        }
    };
    let mut third: HashMap<usize, usize> = HashMap::new();
    for (e, (t, h)) in raw.edges.iter_mut().enumerate() {
        for end in [t, h] {
            if let Endpoint::Boundary(k) = *end {
                let p = place(k);
                if let Endpoint::Vertex(v) = p {
                    third.insert(v, e);
                }
                *end = p;
            }
        }
    }
    let sign_i = eps.get(i);
    let sign_j = eps.get(j);
    // An edge between a vertex and a boundary point, directed by the sign.
    let leg = |v: usize, k: usize, s: Sign| match s {
        Sign::Plus => (Endpoint::Vertex(v), Endpoint::Boundary(k)),
        Sign::Minus => (Endpoint::Boundary(k), Endpoint::Vertex(v)),
    };
    let source_if = |s: Sign| if s == Sign::Plus { Polarity::Source } else { Polarity::Sink };
    match piece {
        Piece::Arc => {
            let (t, h) = if sign_i == Sign::Minus { (i, j) } else { (j, i) };
            raw.edges.push((Endpoint::Boundary(t), Endpoint::Boundary(h)));
        }
        Piece::Y => {
            let e = raw.edges.len();
            raw.vertices.push(source_if(sign_i));
            raw.edges.push(leg(nv, i, sign_i));
            raw.edges.push(leg(nv, j, sign_j));
            raw.rotations.push(vec![third[&nv], e, e + 1]);
        }
        Piece::H => {
            let (a, c) = (nv, nv + 1);
            let e = raw.edges.len();
            raw.vertices.push(source_if(sign_i));
            raw.vertices.push(source_if(sign_j));
            raw.edges.push(leg(a, i, sign_i));
            raw.edges.push(leg(c, j, sign_j));
            raw.edges.push(if sign_i == Sign::Plus {
                (Endpoint::Vertex(a), Endpoint::Vertex(c))
            } else {
                (Endpoint::Vertex(c), Endpoint::Vertex(a))
            });
            raw.rotations.push(vec![third[&a], e, e + 2]);
            raw.rotations.push(vec![third[&c], e + 2, e + 1]);
        }
    }
    raw.validate().expect("attaching a piece keeps the web valid")
}

/// Every sign sequence reachable from `eps` by removing pieces.
fn closure(eps: &SignSequence) -> Vec<SignSequence> {
    let mut seen = BTreeSet::from([eps.clone()]);
    let mut stack = vec![eps.clone()];
    while let Some(s) = stack.pop() {
        for i in 0..s.len() {
            let j = (i + 1) % s.len();
            if s.len() < 2 {
                break;
            }
            for piece in [Piece::Arc, Piece::Y, Piece::H] {
                if piece.fits(s.get(i), s.get(j)) {
                    let sub = sub_boundary(&s, i, piece);
                    if seen.insert(sub.clone()) {
                        stack.push(sub);
                    }
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// All non-elliptic ε-webs with at most `budget` vertices, sorted by
/// canonical code. `seed` shuffles the search order and must not change
/// the result.
pub fn enumerate_non_elliptic_seeded(
    eps: &SignSequence,
    budget: usize,
    seed: u64,
) -> Result<Vec<Web>, EnumerateError> {
    if !eps.is_admissible() {
        return Err(EnumerateError::NotAdmissible(eps.clone()));
    }
    let mut order = closure(eps);
    order.sort_by_key(|s| s.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // layers[sigma][v]: webs on sigma with exactly v vertices.
    let mut layers: HashMap<SignSequence, Vec<Vec<Web>>> =
        order.iter().map(|s| (s.clone(), Vec::new())).collect();
    let mut empty_run = 0;
    for v in 0.. {
        let mut any = false;
        for sigma in &order {
            let found = if sigma.is_empty() {
                if v == 0 {
                    vec![Web::empty()]
                } else {
                    Vec::new()
                }
            } else {
                layer(sigma, v, &layers, &mut rng)
            };
            any |= !found.is_empty();
            layers.get_mut(sigma).unwrap().push(found);
        }
        empty_run = if any { 0 } else { empty_run + 1 };
        if empty_run == 2 {
            break;
        }
        if v >= budget + 2 {
            return Err(EnumerateError::BudgetExceeded { budget });
        }
    }
    let mut out: Vec<(CanonicalCode, Web)> = layers
        .remove(eps)
        .unwrap()
        .into_iter()
        .flatten()
        .map(|w| (w.canonical_code(), w))
        .collect();
    if out.iter().any(|(_, w)| w.vertex_count() > budget) {
        return Err(EnumerateError::BudgetExceeded { budget });
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, w)| w).collect())
}

fn layer(
    sigma: &SignSequence,
    v: usize,
    layers: &HashMap<SignSequence, Vec<Vec<Web>>>,
    rng: &mut ChaCha8Rng,
) -> Vec<Web> {
    let n = sigma.len();
    let mut jobs: Vec<(usize, Piece)> = Vec::new();
    for i in 0..n {
        for piece in [Piece::Arc, Piece::Y, Piece::H] {
            if piece.fits(sigma.get(i), sigma.get((i + 1) % n)) && piece.vertices() <= v {
                jobs.push((i, piece));
            }
        }
    }
    jobs.shuffle(rng);
    let mut found: BTreeMap<CanonicalCode, Web> = BTreeMap::new();
    for (i, piece) in jobs {
        let sub = sub_boundary(sigma, i, piece);
        let Some(subs) = layers.get(&sub).and_then(|l| l.get(v - piece.vertices())) else {
            continue;
        };
        for s in subs {
            let w = attach(sigma, i, piece, s);
            if is_non_elliptic(&w) {
                found.entry(w.canonical_code()).or_insert(w);
            }
        }
    }
    found.into_values().collect()
}

pub fn enumerate_non_elliptic(eps: &SignSequence, budget: usize) -> Result<Vec<Web>, EnumerateError> {
    enumerate_non_elliptic_seeded(eps, budget, 0)
}

pub fn enumerate_superficial_non_elliptic(
    eps: &SignSequence,
    budget: usize,
) -> Result<Vec<Web>, EnumerateError> {
    Ok(enumerate_non_elliptic(eps, budget)?
        .into_iter()
        .filter(is_superficial)
        .collect())
}
