//! Gluing two ε-webs into the closed web `mirror(w1) w2`.
//!
//! `w2` sits above the border line and `w1` is reflected below it; the legs
//! meeting at each boundary point are joined. Components that cross the line
//! get their nesting from the order of the crossings: just east of the first
//! crossing of a component lies the face of the neighbour that crosses just
//! before it.

use super::{Dart, Endpoint, FaceSite, Member, Polarity, RawWeb, UnionFind, Web, WebError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Site {
    Orbit(usize),
    Circle(usize, bool),
}

struct Joined<'a> {
    w1: &'a Web,
    w2: &'a Web,
    n: usize,
    d2: usize,
    v2: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum JEnd {
    Upper(usize),
    Lower(usize),
    Joint(usize),
}

impl Joined<'_> {
    fn darts(&self) -> usize {
        self.d2 + 2 * self.w1.edge_count()
    }

    fn end(&self, x: Dart) -> JEnd {
        let (end, lower) = if x < self.d2 {
            (self.w2.end(x), false)
        } else {
            (self.w1.end(x - self.d2), true)
        };
        match (end, lower) {
            (Endpoint::Boundary(i), _) => JEnd::Joint(i),
            (Endpoint::Vertex(v), false) => JEnd::Upper(v),
            (Endpoint::Vertex(v), true) => JEnd::Lower(v),
        }
    }

    /// Clockwise neighbour of `x` around its vertex in the glued picture.
    fn cw(&self, x: Dart) -> Dart {
        match self.end(x) {
            JEnd::Upper(v) => self.w2.rot[v][(self.w2.slot(x) + 2) % 3],
            JEnd::Lower(v) => {
                let d = x - self.d2;
                self.d2 + self.w1.rot[v][(self.w1.slot(d) + 1) % 3]
            }
            JEnd::Joint(i) => {
                if x < self.d2 {
                    self.down(i)
                } else {
                    self.up(i)
                }
            }
        }
    }

    /// Dart leaving joint `i` upward (into `w2`).
    fn up(&self, i: usize) -> Dart {
        self.w2.boundary_dart(i)
    }

    /// Dart leaving joint `i` downward (into the reflected `w1`).
    fn down(&self, i: usize) -> Dart {
        self.d2 + self.w1.boundary_dart(i)
    }

    fn node(&self, x: Dart) -> usize {
        match self.end(x) {
            JEnd::Upper(v) => v,
            JEnd::Lower(v) => self.v2 + v,
            JEnd::Joint(i) => self.v2 + self.w1.vertex_count() + i,
        }
    }
}

/// The closed web obtained by gluing the mirror image of `w1` below `w2`.
pub fn glue(w1: &Web, w2: &Web) -> Result<Web, WebError> {
    if w1.boundary() != w2.boundary() {
        return Err(WebError::BoundaryMismatch {
            left: w1.boundary().clone(),
            right: w2.boundary().clone(),
        });
    }
    let j = Joined {
        w1,
        w2,
        n: w1.boundary().len(),
        d2: 2 * w2.edge_count(),
        v2: w2.vertex_count(),
    };
    let nd = j.darts();
    let nv1 = w1.vertex_count();

    // Faces of the joined map.
    let mut orbit_of = vec![usize::MAX; nd];
    let mut orbits: Vec<Vec<Dart>> = Vec::new();
    for s in 0..nd {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = s;
        while orbit_of[x] == usize::MAX {
            orbit_of[x] = orbits.len();
            orbit.push(x);
            x = j.cw(x ^ 1);
        }
        orbits.push(orbit);
    }

    // Components of the joined map.
    let nodes = j.v2 + nv1 + j.n;
    let mut uf = UnionFind::new(nodes);
    for x in (0..nd).step_by(2) {
        uf.union(j.node(x), j.node(x + 1));
    }
    let mut comp_index = vec![usize::MAX; nodes];
    let mut comps: Vec<JComp> = Vec::new();
    for node in 0..nodes {
        let r = uf.find(node);
        if comp_index[r] == usize::MAX {
            comp_index[r] = comps.len();
            comps.push(JComp::default());
        }
        let c = comp_index[r];
        comp_index[node] = c;
        if node < j.v2 + nv1 {
            comps[c].real.get_or_insert(node);
        } else {
            comps[c].first_joint.get_or_insert(node - j.v2 - nv1);
        }
    }
    let comp_of_orbit = |o: usize| comp_index[j.node(orbits[o][0])];

    // Outer faces.
    let old_site = |d: Dart, lower: bool| {
        if lower {
            orbit_of[j.d2 + (d ^ 1)]
        } else {
            orbit_of[d]
        }
    };
    for c in comps.iter_mut() {
        if let Some(a) = c.first_joint {
            c.outer = orbit_of[j.up(a)];
        }
    }
    for (lower, w) in [(false, w2), (true, w1)] {
        for comp in w.closed_components() {
            let v = comp.vertices[0] + if lower { j.v2 } else { 0 };
            let c = comp_index[v];
            comps[c].outer = old_site(comp.outer, lower);
        }
    }

    // Containers of crossing components, left to right.
    let mut by_first: Vec<usize> = (0..comps.len()).filter(|&c| comps[c].first_joint.is_some()).collect();
    by_first.sort_by_key(|&c| comps[c].first_joint);
    for &c in &by_first {
        let a = comps[c].first_joint.unwrap();
        comps[c].container = if a == 0 {
            None
        } else {
            let east = orbit_of[j.down(a - 1)];
            let neighbour = comp_of_orbit(east);
            if comps[neighbour].outer == east {
                comps[neighbour].container
            } else {
                Some(Site::Orbit(east))
            }
        };
    }
    let resolve = |comps: &[JComp], s: Option<Site>| -> Option<Site> {
        match s {
            Some(Site::Orbit(o)) if comps[comp_of_orbit(o)].outer == o => {
                comps[comp_of_orbit(o)].container
            }
            other => other,
        }
    };
    let outside = if j.n == 0 {
        None
    } else {
        resolve(&comps, Some(Site::Orbit(orbit_of[j.down(j.n - 1)])))
    };
    let c2 = w2.circle_count();
    let map_old = |comps: &[JComp], s: Option<FaceSite>, lower: bool| -> Option<Site> {
        match s {
            None => outside,
            Some(FaceSite::Left(d)) => resolve(comps, Some(Site::Orbit(old_site(d, lower)))),
            Some(FaceSite::CircleInside(c)) => Some(Site::Circle(c + if lower { c2 } else { 0 }, true)),
            Some(FaceSite::CircleOutside(c)) => Some(Site::Circle(c + if lower { c2 } else { 0 }, false)),
        }
    };
    for (lower, w) in [(false, w2), (true, w1)] {
        for comp in w.closed_components() {
            let v = comp.vertices[0] + if lower { j.v2 } else { 0 };
            let c = comp_index[v];
            comps[c].container = map_old(&comps, comp.container, lower);
        }
    }
    let mut circle_containers: Vec<Option<Site>> = Vec::new();
    for (lower, w) in [(false, w2), (true, w1)] {
        for c in 0..w.circle_count() {
            circle_containers.push(map_old(&comps, w.circle_container(c), lower));
        }
    }

    // Smooth the joints: each chain of legs becomes one edge.
    let vertex_of = |x: Dart| match j.end(x) {
        JEnd::Upper(v) => Some(v),
        JEnd::Lower(v) => Some(j.v2 + v),
        JEnd::Joint(_) => None,
    };
    let mut polarity: Vec<Polarity> = (0..w2.vertex_count()).map(|v| w2.polarity(v)).collect();
    polarity.extend((0..nv1).map(|v| w1.polarity(v).flip()));
    let mut fmap = vec![usize::MAX; nd];
    let mut edges = Vec::new();
    for x in 0..nd {
        let Some(u) = vertex_of(x) else { continue };
        if fmap[x] != usize::MAX {
            continue;
        }
        let mut y = x ^ 1;
        while vertex_of(y).is_none() {
            y = j.cw(y) ^ 1;
        }
        let v = vertex_of(y).unwrap();
        let k = edges.len();
        if polarity[u] == Polarity::Source {
            fmap[x] = 2 * k;
            fmap[y] = 2 * k + 1;
            edges.push((Endpoint::Vertex(u), Endpoint::Vertex(v)));
        } else {
            fmap[x] = 2 * k + 1;
            fmap[y] = 2 * k;
            edges.push((Endpoint::Vertex(v), Endpoint::Vertex(u)));
        }
    }
    let mut rotations = Vec::with_capacity(polarity.len());
    for v in 0..w2.vertex_count() {
        rotations.push(w2.rot[v].iter().map(|&d| fmap[d] / 2).collect());
    }
    for v in 0..nv1 {
        let r = w1.rot[v];
        rotations.push([r[0], r[2], r[1]].iter().map(|&d| fmap[j.d2 + d] / 2).collect());
    }

    // Chains with no vertex on them are new circles.
    let mut chain_circle = vec![usize::MAX; comps.len()];
    let mut circles = c2 + w1.circle_count();
    for &c in &by_first {
        if comps[c].real.is_none() {
            chain_circle[c] = circles;
            circle_containers.push(comps[c].container);
            circles += 1;
        }
    }

    let to_face_site = |s: Site| -> FaceSite {
        match s {
            Site::Circle(c, true) => FaceSite::CircleInside(c),
            Site::Circle(c, false) => FaceSite::CircleOutside(c),
            Site::Orbit(o) => match orbits[o].iter().find(|&&x| vertex_of(x).is_some()) {
                Some(&x) => FaceSite::Left(fmap[x]),
                None => {
                    let c = comp_of_orbit(o);
                    let a = comps[c].first_joint.expect("vertexless orbit lies on a chain");
                    if orbit_of[j.down(a)] == o {
                        FaceSite::CircleInside(chain_circle[c])
                    } else {
                        FaceSite::CircleOutside(chain_circle[c])
                    }
                }
            },
        }
    };

    let mut nests = Vec::new();
    let mut outers = Vec::new();
    for c in &comps {
        let Some(v) = c.real else { continue };
        if c.outer == usize::MAX {
            // Part of the border-touching piece of neither web: impossible
            // for closed results, but keep the default if it happens.
            continue;
        }
        if let FaceSite::Left(d) = to_face_site(Site::Orbit(c.outer)) {
            outers.push((v, FaceSite::Left(d)));
        }
        if let Some(s) = c.container {
            nests.push((Member::Vertex(v), Some(to_face_site(s))));
        }
    }
    for (i, s) in circle_containers.iter().enumerate() {
        if let Some(s) = s {
            nests.push((Member::Circle(i), Some(to_face_site(*s))));
        }
    }

    RawWeb {
        boundary: Default::default(),
        vertices: polarity,
        edges,
        rotations,
        circles,
        nests,
        outers,
    }
    .validate()
}

#[derive(Clone, Debug)]
struct JComp {
    real: Option<usize>,
    first_joint: Option<usize>,
    outer: usize,
    container: Option<Site>,
}

impl Default for JComp {
    fn default() -> Self {
        Self {
            real: None,
            first_joint: None,
            outer: usize::MAX,
            container: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::web::RawWeb;

    #[test]
    fn arc_closes_to_circle() {
        let arc = fixtures::arc();
        let g = glue(&arc, &arc).unwrap();
        assert!(g.is_closed());
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.circle_count(), 1);
    }

    #[test]
    fn y_closes_to_theta() {
        let y = fixtures::y();
        let g = glue(&y, &y).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.canonical_code(), fixtures::theta().canonical_code());
    }

    #[test]
    fn boundary_mismatch() {
        assert!(matches!(
            glue(&fixtures::y(), &fixtures::arc()),
            Err(WebError::BoundaryMismatch { .. })
        ));
    }

    #[test]
    fn nested_arcs_glue_to_nested_circles() {
        // Arcs (0,3) and (1,2): gluing to itself gives one circle inside another.
        let raw = RawWeb {
            boundary: "+-+-".parse().unwrap(),
            edges: vec![
                (Endpoint::Boundary(3), Endpoint::Boundary(0)),
                (Endpoint::Boundary(1), Endpoint::Boundary(2)),
            ],
            ..RawWeb::default()
        };
        let w = raw.validate().unwrap();
        let g = glue(&w, &w).unwrap();
        assert_eq!(g.circle_count(), 2);
        let nested = (0..2).filter(|&c| g.circle_container(c).is_some()).count();
        assert_eq!(nested, 1);
        // Side-by-side arcs give side-by-side circles.
        let raw = RawWeb {
            boundary: "+-+-".parse().unwrap(),
            edges: vec![
                (Endpoint::Boundary(1), Endpoint::Boundary(0)),
                (Endpoint::Boundary(3), Endpoint::Boundary(2)),
            ],
            ..RawWeb::default()
        };
        let w = raw.validate().unwrap();
        let g = glue(&w, &w).unwrap();
        assert!((0..2).all(|c| g.circle_container(c).is_none()));
    }

    #[test]
    fn vertex_count_adds() {
        for (_, w) in fixtures::all_webs() {
            let g = glue(&w, &w).unwrap();
            assert_eq!(g.vertex_count(), 2 * w.vertex_count());
            assert!(g.is_closed());
        }
    }
}
