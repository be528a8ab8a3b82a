//! Predicates on ε-webs built from bounded faces, blocks and nesting.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::web::{FaceId, Faces, UnionFind, Web};

/// Side counts of the bounded faces, sorted; a circle's disk has one side.
pub fn bounded_face_profile(w: &Web) -> Vec<usize> {
    let mut out: Vec<usize> = w.faces().bounded().map(|f| f.sides).collect();
    out.sort_unstable();
    out
}

fn has_bounded(faces: &Faces, sides: usize) -> bool {
    faces.bounded().any(|f| f.sides == sides)
}

/// No circle, no bounded face with 2 or 4 sides.
pub fn is_non_elliptic(w: &Web) -> bool {
    let faces = w.faces();
    w.circle_count() == 0 && !has_bounded(&faces, 2) && !has_bounded(&faces, 4)
}

fn blocks_of(faces: &Faces) -> Vec<Vec<FaceId>> {
    let mut uf = UnionFind::new(faces.len());
    for f in faces.bounded() {
        for &g in &f.adjacent {
            if g != faces.unbounded() {
                uf.union(f.id, g);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<FaceId>> = Default::default();
    for f in faces.bounded() {
        groups.entry(uf.find(f.id)).or_default().push(f.id);
    }
    let mut out: Vec<Vec<FaceId>> = groups.into_values().collect();
    out.sort();
    out
}

/// Connected components of the dual graph without the unbounded face.
pub fn blocks(w: &Web) -> Vec<Vec<FaceId>> {
    blocks_of(&w.faces())
}

/// Bounded faces sharing no edge with the unbounded face.
pub fn nested_faces(w: &Web) -> BTreeSet<FaceId> {
    nested_of(&w.faces())
}

fn nested_of(faces: &Faces) -> BTreeSet<FaceId> {
    faces
        .bounded()
        .filter(|f| !f.adjacent.contains(&faces.unbounded()))
        .map(|f| f.id)
        .collect()
}

pub fn is_superficial(w: &Web) -> bool {
    nested_faces(w).is_empty()
}

/// Number of squares in each block, `None` if there is a circle or a digon.
fn squares_per_block(w: &Web, faces: &Faces) -> Option<Vec<usize>> {
    if w.circle_count() > 0 || has_bounded(faces, 2) {
        return None;
    }
    Some(
        blocks_of(faces)
            .iter()
            .map(|b| b.iter().filter(|&&f| faces[f].sides == 4).count())
            .collect(),
    )
}

/// No circle, no digon, at most one square per block.
pub fn is_semi_non_elliptic(w: &Web) -> bool {
    let faces = w.faces();
    squares_per_block(w, &faces).is_some_and(|s| s.iter().all(|&k| k <= 1))
}

/// Like semi-non-elliptic, except one block may hold two squares.
pub fn is_1_elliptic(w: &Web) -> bool {
    let faces = w.faces();
    squares_per_block(w, &faces).is_some_and(|s| {
        s.iter().all(|&k| k <= 2) && s.iter().filter(|&&k| k == 2).count() <= 1
    })
}

/// No circle or digon, exactly one square, and exactly one nested face,
/// which is a hexagon sharing a side with the square.
pub fn is_semi_superficial(w: &Web) -> bool {
    let faces = w.faces();
    if w.circle_count() > 0 || has_bounded(&faces, 2) {
        return false;
    }
    let squares: Vec<FaceId> = faces.bounded().filter(|f| f.sides == 4).map(|f| f.id).collect();
    let nested = nested_of(&faces);
    match (squares.as_slice(), nested.len()) {
        ([s], 1) => {
            let n = *nested.iter().next().unwrap();
            faces[n].sides == 6 && faces[n].adjacent.contains(s)
        }
        _ => false,
    }
}

/// Everything above in one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub boundary: String,
    pub vertices: usize,
    pub edges: usize,
    pub circles: usize,
    pub bounded_face_profile: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub nested_faces: Vec<usize>,
    pub non_elliptic: bool,
    pub superficial: bool,
    pub semi_non_elliptic: bool,
    pub one_elliptic: bool,
    pub semi_superficial: bool,
}

impl Classification {
    pub fn of(w: &Web) -> Self {
        let faces = w.faces();
        let block_sides = blocks_of(&faces)
            .iter()
            .map(|b| b.iter().map(|&f| faces[f].sides).collect())
            .collect();
        Self {
            boundary: w.boundary().to_string(),
            vertices: w.vertex_count(),
            edges: w.edge_count(),
            circles: w.circle_count(),
            bounded_face_profile: bounded_face_profile(w),
            blocks: block_sides,
            nested_faces: nested_of(&faces).iter().map(|&f| faces[f].sides).collect(),
            non_elliptic: is_non_elliptic(w),
            superficial: is_superficial(w),
            semi_non_elliptic: is_semi_non_elliptic(w),
            one_elliptic: is_1_elliptic(w),
            semi_superficial: is_semi_superficial(w),
        }
    }
}
