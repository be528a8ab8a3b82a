//! Faces of a web: boundary walks of each component, merged across nesting.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Dart, FaceSite, UnionFind, Web};

pub type FaceId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: FaceId,
    /// Edge-sides along the boundary walk; a vertexless circle contributes 1.
    pub sides: usize,
    pub bounded: bool,
    pub adjacent: BTreeSet<FaceId>,
    /// Boundary walks making up the face (indices into the web's orbits).
    #[serde(skip)]
    pub orbits: Vec<usize>,
    /// Circle sides on the face: `(circle, inside)`.
    #[serde(skip)]
    pub circle_sides: Vec<(usize, bool)>,
}

impl Face {
    /// A single walk or a single circle interior, with nothing nested inside.
    pub fn is_disk(&self) -> bool {
        match (self.orbits.len(), self.circle_sides.as_slice()) {
            (1, []) => true,
            (0, [(_, true)]) => true,
            _ => false,
        }
    }

    /// The interior of a vertexless circle with nothing nested inside.
    pub fn circle_disk(&self) -> Option<usize> {
        match (self.orbits.as_slice(), self.circle_sides.as_slice()) {
            ([], [(c, true)]) => Some(*c),
            _ => None,
        }
    }
}

/// All faces of a web. Face 0 is the unbounded face.
#[derive(Clone, Debug)]
pub struct Faces {
    faces: Vec<Face>,
    dart_face: Vec<FaceId>,
    circle_face: Vec<(FaceId, FaceId)>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Face> {
        self.faces.iter()
    }

    pub fn get(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(id)
    }

    pub fn unbounded(&self) -> FaceId {
        0
    }

    pub fn bounded(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.bounded)
    }

    /// The face on the left of dart `d`.
    pub fn left_of(&self, d: Dart) -> FaceId {
        self.dart_face[d]
    }

    pub fn site(&self, s: FaceSite) -> FaceId {
        match s {
            FaceSite::Left(d) => self.dart_face[d],
            FaceSite::CircleInside(c) => self.circle_face[c].0,
            FaceSite::CircleOutside(c) => self.circle_face[c].1,
        }
    }
}

impl std::ops::Index<FaceId> for Faces {
    type Output = Face;
    fn index(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }
}

impl Web {
    pub fn faces(&self) -> Faces {
        let orbits = self.orbits();
        let no = orbits.len();
        let nc = self.circle_count();
        // Pieces: 0 is the plane, then orbits, then circle inside/outside.
        let orbit_piece = |o: usize| 1 + o;
        let circle_piece = |c: usize, inside: bool| 1 + no + 2 * c + usize::from(!inside);
        let site_piece = |s: Option<FaceSite>| match s {
            None => 0,
            Some(FaceSite::Left(d)) => orbit_piece(self.orbit_of(d)),
            Some(FaceSite::CircleInside(c)) => circle_piece(c, true),
            Some(FaceSite::CircleOutside(c)) => circle_piece(c, false),
        };
        let total = 1 + no + 2 * nc;
        let mut uf = UnionFind::new(total);
        if !self.is_closed() {
            for o in 0..no {
                if orbits[o].iter().any(|&d| matches!(self.end(d), super::Endpoint::Boundary(_))) {
                    uf.union(0, orbit_piece(o));
                }
            }
        }
        for comp in self.closed_components() {
            uf.union(orbit_piece(self.orbit_of(comp.outer)), site_piece(comp.container));
        }
        for c in 0..nc {
            uf.union(circle_piece(c, false), site_piece(self.circle_container(c)));
        }

        let mut face_of_root = vec![usize::MAX; total];
        let mut faces: Vec<Face> = Vec::new();
        let mut piece_face = vec![0; total];
        for p in 0..total {
            let r = uf.find(p);
            if face_of_root[r] == usize::MAX {
                face_of_root[r] = faces.len();
                faces.push(Face {
                    id: faces.len(),
                    sides: 0,
                    bounded: !faces.is_empty(),
                    adjacent: BTreeSet::new(),
                    orbits: Vec::new(),
                    circle_sides: Vec::new(),
                });
            }
            let f = face_of_root[r];
            piece_face[p] = f;
            if p == 0 {
                continue;
            }
            if p <= no {
                faces[f].orbits.push(p - 1);
                faces[f].sides += orbits[p - 1].len();
            } else {
                let c = (p - 1 - no) / 2;
                let inside = (p - 1 - no) % 2 == 0;
                faces[f].circle_sides.push((c, inside));
                faces[f].sides += 1;
            }
        }
        let dart_face: Vec<FaceId> = (0..2 * self.edge_count())
            .map(|d| piece_face[orbit_piece(self.orbit_of(d))])
            .collect();
        let circle_face: Vec<(FaceId, FaceId)> = (0..nc)
            .map(|c| (piece_face[circle_piece(c, true)], piece_face[circle_piece(c, false)]))
            .collect();
        let mut link = |a: FaceId, b: FaceId| {
            if a != b {
                faces[a].adjacent.insert(b);
                faces[b].adjacent.insert(a);
            }
        };
        for e in 0..self.edge_count() {
            link(dart_face[2 * e], dart_face[2 * e + 1]);
        }
        for &(i, o) in &circle_face {
            link(i, o);
        }
        Faces {
            faces,
            dart_face,
            circle_face,
        }
    }
}
