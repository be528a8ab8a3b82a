//! Seeded generators of webs and pre-foams for property tests and fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::enumerate::{attach, sub_boundary, Piece};
use crate::foam::{Facet, PreFoam, SingularCircle};
use crate::sign::SignSequence;
use crate::web::{glue, Web};

/// A random admissible boundary with at most `max_len` points.
pub fn admissible_boundary<R: Rng>(rng: &mut R, max_len: usize) -> SignSequence {
    let all = SignSequence::all_admissible(max_len);
    all.choose(rng).cloned().unwrap_or_else(SignSequence::empty)
}

/// A random ε-web, possibly with digons and squares, built by attaching
/// arcs, Ys and Hs. Uses about `vertices` vertices.
pub fn epsilon_web<R: Rng>(rng: &mut R, eps: &SignSequence, vertices: usize) -> Web {
    assert!(eps.is_admissible(), "boundary {eps} is not admissible");
    if eps.is_empty() {
        return Web::empty();
    }
    let n = eps.len();
    let mut options = Vec::new();
    for i in 0..n {
        for piece in [Piece::Arc, Piece::Y, Piece::H] {
            if piece.fits(eps.get(i), eps.get((i + 1) % n)) {
                // Hs keep the boundary length, so they carry the vertex budget.
                let weight = match piece {
                    Piece::H if vertices >= 2 => 3,
                    Piece::H => 0,
                    Piece::Y => 2,
                    Piece::Arc => 1,
                };
                options.push(((i, piece), weight));
            }
        }
    }
    let &((i, piece), _) = options
        .choose_weighted(rng, |o| o.1)
        .or_else(|_| options.choose_weighted(rng, |o| u32::from(o.0 .1 != Piece::H)))
        .expect("some piece fits");
    let sub = sub_boundary(eps, i, piece);
    let inner = epsilon_web(rng, &sub, vertices.saturating_sub(piece.vertices()));
    attach(eps, i, piece, &inner)
}

/// A closed web `mirror(w1) w2` for two random ε-webs on a random boundary.
pub fn closed_web<R: Rng>(rng: &mut R, max_len: usize, vertices: usize) -> Web {
    let eps = admissible_boundary(rng, max_len);
    let (v1, v2) = (rng.gen_range(0..=vertices), rng.gen_range(0..=vertices));
    let w1 = epsilon_web(rng, &eps, v1);
    let w2 = epsilon_web(rng, &eps, v2);
    glue(&w1, &w2).expect("same boundary")
}

/// A random closed pre-foam with at most `max_facets` facets.
pub fn pre_foam<R: Rng>(rng: &mut R, max_facets: usize) -> PreFoam {
    let k = rng.gen_range(1..=max_facets.max(1));
    let mut facets: Vec<Facet> = (0..k)
        .map(|i| Facet {
            name: format!("f{i}"),
            genus: rng.gen_range(0..=1),
            dots: rng.gen_range(0..=3),
            slots: rng.gen_range(0..=3),
        })
        .collect();
    while facets.iter().map(|f| f.slots).sum::<usize>() % 3 != 0 {
        let i = rng.gen_range(0..k);
        facets[i].slots += 1;
    }
    let mut legs: Vec<(usize, usize)> = facets
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..f.slots).map(move |s| (i, s)))
        .collect();
    legs.shuffle(rng);
    let singular = legs
        .chunks(3)
        .enumerate()
        .map(|(i, c)| SingularCircle {
            name: format!("s{i}"),
            legs: [c[0], c[1], c[2]],
        })
        .collect();
    PreFoam { facets, singular }
}
