//! Webs as planar combinatorial maps.
//!
//! Every edge `e` owns two darts: `2e` at its tail and `2e + 1` at its head.
//! Each vertex lists its three darts counterclockwise. A dart sitting on a
//! boundary point is followed, when tracing faces, by the dart of the next
//! boundary point, so all regions touching the border line are traced as if
//! the line were a single hub below the web.
//!
//! Components that do not touch the border carry a placement: which of their
//! own faces is the outer one, and which face of the rest of the picture they
//! sit in.

mod canon;
mod faces;
mod glue;
pub(crate) mod surgery;
pub mod text;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sign::{Sign, SignSequence};

pub use canon::CanonicalCode;
pub use faces::{Face, FaceId, Faces};
pub use glue::glue;

pub type Dart = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Sink,
    Source,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Sink => Polarity::Source,
            Polarity::Source => Polarity::Sink,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Vertex(usize),
    Boundary(usize),
}

/// A face of one component: the face to the left of a dart, or a side of a
/// vertexless circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceSite {
    Left(Dart),
    CircleInside(usize),
    CircleOutside(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Member {
    Vertex(usize),
    Circle(usize),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WebError {
    #[error("vertex {vertex} is not trivalent: {detail}")]
    NonTrivalent { vertex: usize, detail: String },
    #[error("vertex {vertex} mixes incoming and outgoing edges")]
    MixedVertexOrientation { vertex: usize },
    #[error("rotation system is not planar: {detail}")]
    Nonplanar { detail: String },
    #[error("boundary point {point}: {detail}")]
    BoundarySignMismatch { point: usize, detail: String },
    #[error("edge {edge}: {detail}")]
    InvalidEdge { edge: usize, detail: String },
    #[error("malformed containment: {detail}")]
    MalformedContainment { detail: String },
    #[error("boundaries differ: {left} vs {right}")]
    BoundaryMismatch {
        left: SignSequence,
        right: SignSequence,
    },
}

/// An unchecked web description; [`RawWeb::validate`] turns it into a [`Web`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawWeb {
    pub boundary: SignSequence,
    pub vertices: Vec<Polarity>,
    /// `(tail, head)` per edge.
    pub edges: Vec<(Endpoint, Endpoint)>,
    /// Edge ids around each vertex, counterclockwise.
    pub rotations: Vec<Vec<usize>>,
    pub circles: usize,
    /// Where a closed component sits; `None` means the outermost region.
    pub nests: Vec<(Member, Option<FaceSite>)>,
    /// Outer face of a closed vertex component, named by a vertex of it.
    pub outers: Vec<(usize, FaceSite)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedComponent {
    pub vertices: Vec<usize>,
    pub outer: Dart,
    pub container: Option<FaceSite>,
}

/// A validated web. Immutable; all derived tables are computed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Web {
    boundary: SignSequence,
    polarity: Vec<Polarity>,
    ends: Vec<Endpoint>,
    slot: Vec<u8>,
    rot: Vec<[Dart; 3]>,
    boundary_dart: Vec<Dart>,
    circles: Vec<Option<FaceSite>>,
    comps: Vec<ClosedComponent>,
    comp_of: Vec<Option<usize>>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<Dart>>,
}

/// Which component a face site belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Owner {
    BoundaryPart,
    Comp(usize),
    Circle(usize),
}

impl RawWeb {
    pub fn validate(&self) -> Result<Web, WebError> {
        Web::build(self)
    }
}

impl Web {
    pub fn empty() -> Web {
        RawWeb::default().validate().expect("empty web is valid")
    }

    fn build(raw: &RawWeb) -> Result<Web, WebError> {
        let n = raw.boundary.len();
        let nv = raw.vertices.len();
        let ne = raw.edges.len();
        let mut ends = Vec::with_capacity(2 * ne);
        let mut incident: Vec<Vec<Dart>> = vec![Vec::new(); nv];
        let mut at_point: Vec<Vec<Dart>> = vec![Vec::new(); n];
        for (e, &(tail, head)) in raw.edges.iter().enumerate() {
            if tail == head {
                return Err(WebError::InvalidEdge {
                    edge: e,
                    detail: "both ends at the same place".into(),
                });
            }
            for (k, end) in [tail, head].into_iter().enumerate() {
                let d = 2 * e + k;
                match end {
                    Endpoint::Vertex(v) if v < nv => incident[v].push(d),
                    Endpoint::Boundary(i) if i < n => at_point[i].push(d),
                    Endpoint::Vertex(v) => {
                        return Err(WebError::InvalidEdge {
                            edge: e,
                            detail: format!("unknown vertex {v}"),
                        })
                    }
                    Endpoint::Boundary(i) => {
                        return Err(WebError::InvalidEdge {
                            edge: e,
                            detail: format!("boundary point {i} out of range (boundary has {n})"),
                        })
                    }
                }
                ends.push(end);
            }
        }

        let mut rot = Vec::with_capacity(nv);
        let mut slot = vec![0u8; 2 * ne];
        for v in 0..nv {
            if incident[v].len() != 3 {
                return Err(WebError::NonTrivalent {
                    vertex: v,
                    detail: format!("{} incident edge ends", incident[v].len()),
                });
            }
            let order = raw.rotations.get(v).map(Vec::as_slice).unwrap_or(&[]);
            if order.len() != 3 {
                return Err(WebError::NonTrivalent {
                    vertex: v,
                    detail: format!("rotation lists {} edges", order.len()),
                });
            }
            let mut darts = [0; 3];
            for (k, &e) in order.iter().enumerate() {
                let Some(&d) = incident[v].iter().find(|&&d| d / 2 == e) else {
                    return Err(WebError::NonTrivalent {
                        vertex: v,
                        detail: format!("rotation names edge {e}, which does not meet the vertex"),
                    });
                };
                if darts[..k].contains(&d) {
                    return Err(WebError::NonTrivalent {
                        vertex: v,
                        detail: format!("rotation repeats edge {e}"),
                    });
                }
                darts[k] = d;
                slot[d] = k as u8;
            }
            let outgoing = darts.iter().filter(|&&d| d % 2 == 0).count();
            match (raw.vertices[v], outgoing) {
                (Polarity::Source, 3) | (Polarity::Sink, 0) => {}
                _ => return Err(WebError::MixedVertexOrientation { vertex: v }),
            }
            rot.push(darts);
        }

        let mut boundary_dart = Vec::with_capacity(n);
        for (i, darts) in at_point.iter().enumerate() {
            if darts.len() != 1 {
                return Err(WebError::BoundarySignMismatch {
                    point: i,
                    detail: format!("{} edges end here, expected 1", darts.len()),
                });
            }
            let d = darts[0];
            let is_head = d % 2 == 1;
            let ok = match raw.boundary.get(i) {
                Sign::Plus => is_head,
                Sign::Minus => !is_head,
            };
            if !ok {
                return Err(WebError::BoundarySignMismatch {
                    point: i,
                    detail: format!(
                        "sign {} but the edge points {} the border",
                        raw.boundary.get(i).symbol(),
                        if is_head { "into" } else { "away from" }
                    ),
                });
            }
            boundary_dart.push(d);
        }

        let mut web = Web {
            boundary: raw.boundary.clone(),
            polarity: raw.vertices.clone(),
            ends,
            slot,
            rot,
            boundary_dart,
            circles: vec![None; raw.circles],
            comps: Vec::new(),
            comp_of: vec![None; nv],
            orbit_of: Vec::new(),
            orbits: Vec::new(),
        };
        web.trace_orbits();
        web.find_components()?;
        web.place_components(raw)?;
        Ok(web)
    }

    fn trace_orbits(&mut self) {
        let nd = self.ends.len();
        let mut orbit_of = vec![usize::MAX; nd];
        let mut orbits = Vec::new();
        for start in 0..nd {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut d = start;
            while orbit_of[d] == usize::MAX {
                orbit_of[d] = id;
                orbit.push(d);
                d = self.face_next(d);
            }
            orbits.push(orbit);
        }
        self.orbit_of = orbit_of;
        self.orbits = orbits;
    }

    fn find_components(&mut self) -> Result<(), WebError> {
        let nv = self.polarity.len();
        let n = self.boundary.len();
        // Union-find over vertices plus one hub node for the border line.
        let hub = nv;
        let mut uf = UnionFind::new(nv + 1);
        for e in 0..self.edge_count() {
            let node = |end: Endpoint| match end {
                Endpoint::Vertex(v) => v,
                Endpoint::Boundary(_) => hub,
            };
            uf.union(node(self.ends[2 * e]), node(self.ends[2 * e + 1]));
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..nv {
            if n > 0 && uf.find(v) == uf.find(hub) {
                continue;
            }
            by_root.entry(uf.find(v)).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_values().collect();
        comps.sort();

        // Euler characteristic per part.
        let mut edges_of = vec![0usize; comps.len()];
        let mut faces_of = vec![0usize; comps.len()];
        for (c, verts) in comps.iter().enumerate() {
            for &v in verts {
                self.comp_of[v] = Some(c);
            }
        }
        let part_of_dart = |web: &Web, d: Dart| match web.ends[d] {
            Endpoint::Vertex(v) => web.comp_of[v],
            Endpoint::Boundary(_) => None,
        };
        let (mut bv, mut be, mut bf) = (0i64, 0i64, 0i64);
        for v in 0..nv {
            if self.comp_of[v].is_none() {
                bv += 1;
            }
        }
        for e in 0..self.edge_count() {
            match part_of_dart(self, 2 * e) {
                Some(c) => edges_of[c] += 1,
                None => be += 1,
            }
        }
        for orbit in &self.orbits {
            match part_of_dart(self, orbit[0]) {
                Some(c) => faces_of[c] += 1,
                None => bf += 1,
            }
        }
        for (c, verts) in comps.iter().enumerate() {
            let chi = verts.len() as i64 - edges_of[c] as i64 + faces_of[c] as i64;
            if chi != 2 {
                return Err(WebError::Nonplanar {
                    detail: format!(
                        "component containing vertex {} has V - E + F = {chi}, expected 2",
                        verts[0]
                    ),
                });
            }
        }
        if n > 0 {
            let chi = bv - be + bf;
            if chi != 1 {
                return Err(WebError::Nonplanar {
                    detail: format!(
                        "border-touching part has V - E + F = {chi}, expected 1 \
                         (legs cross or the rotation has genus)"
                    ),
                });
            }
        }
        self.comps = comps
            .into_iter()
            .map(|vertices| ClosedComponent {
                vertices,
                outer: 0,
                container: None,
            })
            .collect();
        Ok(())
    }

    fn place_components(&mut self, raw: &RawWeb) -> Result<(), WebError> {
        let malformed = |detail: String| WebError::MalformedContainment { detail };
        // Default outer faces: the largest face, lowest dart on ties.
        for c in 0..self.comps.len() {
            let mut best: Option<(usize, Dart)> = None;
            for &v in &self.comps[c].vertices {
                for &d in &self.rot[v] {
                    let len = self.orbits[self.orbit_of[d]].len();
                    let rep = self.orbits[self.orbit_of[d]][0];
                    if best.map_or(true, |(bl, br)| len > bl || (len == bl && rep < br)) {
                        best = Some((len, rep));
                    }
                }
            }
            self.comps[c].outer = best.expect("component has vertices").1;
        }
        for &(v, site) in &raw.outers {
            let c = self
                .comp_of
                .get(v)
                .copied()
                .flatten()
                .ok_or_else(|| malformed(format!("outer face given for vertex {v}, which is not in a closed component")))?;
            match site {
                FaceSite::Left(d) if d < self.ends.len() && self.owner_of_dart(d) == Owner::Comp(c) => {
                    self.comps[c].outer = self.orbits[self.orbit_of[d]][0];
                }
                _ => return Err(malformed(format!("outer face of vertex {v} must be a face of its own component"))),
            }
        }

        let mut seen: Vec<Owner> = Vec::new();
        for &(member, site) in &raw.nests {
            let owner = match member {
                Member::Vertex(v) => match self.comp_of.get(v).copied().flatten() {
                    Some(c) => Owner::Comp(c),
                    None => {
                        return Err(malformed(format!(
                            "vertex {v} is not in a closed component and cannot be nested"
                        )))
                    }
                },
                Member::Circle(c) if c < self.circles.len() => Owner::Circle(c),
                Member::Circle(c) => return Err(malformed(format!("unknown circle {c}"))),
            };
            if seen.contains(&owner) {
                return Err(malformed(format!("component of {member:?} is nested twice")));
            }
            seen.push(owner);
            if let Some(s) = site {
                let target = self
                    .owner_of_site(s)
                    .ok_or_else(|| malformed(format!("unknown face {s:?}")))?;
                if target == owner {
                    return Err(malformed(format!("{member:?} is nested in its own face")));
                }
            }
            let site = site.map(|s| self.site_rep(s));
            match owner {
                Owner::Comp(c) => self.comps[c].container = site,
                Owner::Circle(c) => self.circles[c] = site,
                Owner::BoundaryPart => unreachable!(),
            }
        }

        // Containment must be a forest.
        let owners: Vec<Owner> = (0..self.comps.len())
            .map(Owner::Comp)
            .chain((0..self.circles.len()).map(Owner::Circle))
            .collect();
        for &start in &owners {
            let mut cur = start;
            let mut steps = 0;
            while let Some(site) = self.container_of(cur) {
                cur = self.owner_of_site(site).expect("checked above");
                steps += 1;
                if cur == start || steps > owners.len() {
                    return Err(malformed("containment has a cycle".into()));
                }
            }
        }

        // Lift containers that name an outer face to the enclosing face, and
        // fold the outermost border region into `None`.
        for &o in &owners {
            let lifted = self.lift(self.container_of(o));
            match o {
                Owner::Comp(c) => self.comps[c].container = lifted,
                Owner::Circle(c) => self.circles[c] = lifted,
                Owner::BoundaryPart => unreachable!(),
            }
        }
        Ok(())
    }

    fn lift(&self, mut site: Option<FaceSite>) -> Option<FaceSite> {
        loop {
            let s = site?;
            let outer_of = match s {
                FaceSite::CircleOutside(c) => Some(Owner::Circle(c)),
                FaceSite::CircleInside(_) => None,
                FaceSite::Left(d) => match self.owner_of_dart(d) {
                    Owner::Comp(c) if self.orbit_of[d] == self.orbit_of[self.comps[c].outer] => {
                        Some(Owner::Comp(c))
                    }
                    Owner::BoundaryPart if self.orbit_of[d] == self.orbit_of[self.boundary_dart[0]] => {
                        return None
                    }
                    _ => None,
                },
            };
            match outer_of {
                Some(o) => site = self.container_of(o),
                None => return Some(s),
            }
        }
    }

    fn container_of(&self, o: Owner) -> Option<FaceSite> {
        match o {
            Owner::Comp(c) => self.comps[c].container,
            Owner::Circle(c) => self.circles[c],
            Owner::BoundaryPart => None,
        }
    }

    fn owner_of_dart(&self, d: Dart) -> Owner {
        let at = |end| match end {
            Endpoint::Vertex(v) => self.comp_of[v].map(Owner::Comp),
            Endpoint::Boundary(_) => None,
        };
        at(self.ends[d]).or(at(self.ends[d ^ 1])).unwrap_or(Owner::BoundaryPart)
    }

    pub(crate) fn same_owner(&self, a: Dart, b: Dart) -> bool {
        self.owner_of_dart(a) == self.owner_of_dart(b)
    }

    fn owner_of_site(&self, s: FaceSite) -> Option<Owner> {
        match s {
            FaceSite::Left(d) if d < self.ends.len() => Some(self.owner_of_dart(d)),
            FaceSite::CircleInside(c) | FaceSite::CircleOutside(c) if c < self.circles.len() => {
                Some(Owner::Circle(c))
            }
            _ => None,
        }
    }

    /// Canonical representative of a site: the lowest dart of its orbit.
    fn site_rep(&self, s: FaceSite) -> FaceSite {
        match s {
            FaceSite::Left(d) => FaceSite::Left(self.orbits[self.orbit_of[d]][0]),
            other => other,
        }
    }

    /// The dart following `d` along the face on its left.
    pub(crate) fn face_next(&self, d: Dart) -> Dart {
        let t = d ^ 1;
        match self.ends[t] {
            Endpoint::Vertex(v) => self.rot[v][(self.slot[t] as usize + 2) % 3],
            Endpoint::Boundary(i) => self.boundary_dart[(i + 1) % self.boundary.len()],
        }
    }

    pub fn boundary(&self) -> &SignSequence {
        &self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.polarity.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len() / 2
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn polarity(&self, v: usize) -> Polarity {
        self.polarity[v]
    }

    /// Where dart `d` sits.
    pub fn end(&self, d: Dart) -> Endpoint {
        self.ends[d]
    }

    /// The three darts of `v`, counterclockwise.
    pub fn rotation(&self, v: usize) -> [Dart; 3] {
        self.rot[v]
    }

    pub(crate) fn slot(&self, d: Dart) -> usize {
        self.slot[d] as usize
    }

    pub fn boundary_dart(&self, i: usize) -> Dart {
        self.boundary_dart[i]
    }

    pub fn closed_components(&self) -> &[ClosedComponent] {
        &self.comps
    }

    pub fn circle_container(&self, c: usize) -> Option<FaceSite> {
        self.circles[c]
    }

    pub(crate) fn orbit_of(&self, d: Dart) -> usize {
        self.orbit_of[d]
    }

    pub(crate) fn orbits(&self) -> &[Vec<Dart>] {
        &self.orbits
    }

    /// Index of the closed component holding `v`, `None` for the border part.
    pub fn component_of_vertex(&self, v: usize) -> Option<usize> {
        self.comp_of[v]
    }

    /// True when nothing besides the border-touching part is present.
    pub fn is_boundary_connected(&self) -> bool {
        self.comps.is_empty() && self.circles.is_empty()
    }

    /// Reconstructs a raw description that validates back to this web.
    pub fn to_raw(&self) -> RawWeb {
        let edges = (0..self.edge_count())
            .map(|e| (self.ends[2 * e], self.ends[2 * e + 1]))
            .collect();
        let rotations = self
            .rot
            .iter()
            .map(|r| r.iter().map(|d| d / 2).collect())
            .collect();
        let mut nests = Vec::new();
        let mut outers = Vec::new();
        for comp in &self.comps {
            let root = comp.vertices[0];
            outers.push((root, FaceSite::Left(comp.outer)));
            if comp.container.is_some() {
                nests.push((Member::Vertex(root), comp.container));
            }
        }
        for (c, site) in self.circles.iter().enumerate() {
            if site.is_some() {
                nests.push((Member::Circle(c), *site));
            }
        }
        RawWeb {
            boundary: self.boundary.clone(),
            vertices: self.polarity.clone(),
            edges,
            rotations,
            circles: self.circles.len(),
            nests,
            outers,
        }
    }

    /// Reflection across a vertical axis with every orientation reversed:
    /// rotations reverse, sources and sinks swap, and the boundary becomes
    /// the reversed sequence with flipped signs. Dart `d` of the result lies
    /// on the same physical edge-side as dart `d` here, so face sites carry
    /// over unchanged.
    pub fn mirror(&self) -> Web {
        let n = self.boundary.len();
        let mut raw = self.to_raw();
        raw.boundary = self.boundary.mirrored();
        raw.vertices = self.polarity.iter().map(|p| p.flip()).collect();
        let flip_end = |end: Endpoint| match end {
            Endpoint::Boundary(i) => Endpoint::Boundary(n - 1 - i),
            v => v,
        };
        raw.edges = raw
            .edges
            .iter()
            .map(|&(t, h)| (flip_end(h), flip_end(t)))
            .collect();
        for r in &mut raw.rotations {
            r.reverse();
        }
        raw.validate().expect("mirror of a valid web is valid")
    }

    /// Closed components and circles as separate webs (each placed at top
    /// level), preceded by the border-touching part when the web has a
    /// boundary.
    pub fn connected_components(&self) -> Vec<Web> {
        let mut out = Vec::new();
        if !self.boundary.is_empty() {
            out.push(self.restrict(|end| match end {
                Endpoint::Vertex(v) => self.comp_of[v].is_none(),
                Endpoint::Boundary(_) => true,
            }, 0, true));
        }
        for c in 0..self.comps.len() {
            out.push(self.restrict(|end| matches!(end, Endpoint::Vertex(v) if self.comp_of[v] == Some(c)), 0, false));
        }
        for _ in 0..self.circles.len() {
            out.push(self.restrict(|_| false, 1, false));
        }
        out
    }

    /// Sub-web on the edges whose tail satisfies `keep`, plus `circles` fresh
    /// circles, with placements dropped.
    fn restrict(&self, keep: impl Fn(Endpoint) -> bool, circles: usize, with_boundary: bool) -> Web {
        let mut vmap = vec![usize::MAX; self.vertex_count()];
        let mut raw = RawWeb {
            boundary: if with_boundary { self.boundary.clone() } else { SignSequence::empty() },
            circles,
            ..RawWeb::default()
        };
        for v in 0..self.vertex_count() {
            if keep(Endpoint::Vertex(v)) {
                vmap[v] = raw.vertices.len();
                raw.vertices.push(self.polarity[v]);
            }
        }
        let mut emap = vec![usize::MAX; self.edge_count()];
        for e in 0..self.edge_count() {
            if keep(self.ends[2 * e]) {
                let m = |end| match end {
                    Endpoint::Vertex(v) => Endpoint::Vertex(vmap[v]),
                    b => b,
                };
                emap[e] = raw.edges.len();
                raw.edges.push((m(self.ends[2 * e]), m(self.ends[2 * e + 1])));
            }
        }
        for v in 0..self.vertex_count() {
            if vmap[v] != usize::MAX {
                raw.rotations.push(self.rot[v].iter().map(|d| emap[d / 2]).collect());
            }
        }
        for comp in &self.comps {
            if vmap[comp.vertices[0]] != usize::MAX {
                raw.outers.push((vmap[comp.vertices[0]], FaceSite::Left(2 * emap[comp.outer / 2] + comp.outer % 2)));
            }
        }
        raw.validate().expect("restriction of a valid web is valid")
    }

    /// Places the closed web `other` inside face `site` of `self` (or at the
    /// top level for `None`).
    pub fn disjoint_union(&self, other: &Web, site: Option<FaceSite>) -> Result<Web, WebError> {
        if !other.is_closed() {
            return Err(WebError::MalformedContainment {
                detail: "the second operand of a disjoint union must be closed".into(),
            });
        }
        if let Some(s) = site {
            if self.owner_of_site(s).is_none() {
                return Err(WebError::MalformedContainment {
                    detail: format!("unknown face {s:?}"),
                });
            }
        }
        let mut raw = self.to_raw();
        let o = other.to_raw();
        let (dv, de, dc) = (raw.vertices.len(), raw.edges.len(), raw.circles);
        let shift_site = |s: FaceSite| match s {
            FaceSite::Left(d) => FaceSite::Left(d + 2 * de),
            FaceSite::CircleInside(c) => FaceSite::CircleInside(c + dc),
            FaceSite::CircleOutside(c) => FaceSite::CircleOutside(c + dc),
        };
        raw.vertices.extend(o.vertices.iter().copied());
        raw.edges.extend(o.edges.iter().map(|&(t, h)| {
            let m = |end| match end {
                Endpoint::Vertex(v) => Endpoint::Vertex(v + dv),
                b => b,
            };
            (m(t), m(h))
        }));
        raw.rotations
            .extend(o.rotations.iter().map(|r| r.iter().map(|e| e + de).collect()));
        raw.circles += o.circles;
        raw.outers
            .extend(o.outers.iter().map(|&(v, s)| (v + dv, shift_site(s))));
        let shift_member = |m: Member| match m {
            Member::Vertex(v) => Member::Vertex(v + dv),
            Member::Circle(c) => Member::Circle(c + dc),
        };
        raw.nests
            .extend(o.nests.iter().map(|&(m, s)| (shift_member(m), s.map(shift_site))));
        // Top-level pieces of `other` go into `site`.
        if site.is_some() {
            let tops = other
                .comps
                .iter()
                .filter(|c| c.container.is_none())
                .map(|c| Member::Vertex(c.vertices[0]))
                .chain((0..other.circles.len()).filter(|&c| other.circles[c].is_none()).map(Member::Circle));
            raw.nests.extend(tops.map(|m| (shift_member(m), site)));
        }
        raw.validate()
    }

    /// Every closed piece is evaluated away; what remains is the
    /// border-touching part (the empty web for a closed web).
    pub fn boundary_part(&self) -> Web {
        if self.is_boundary_connected() {
            return self.clone();
        }
        if self.boundary.is_empty() {
            return Web::empty();
        }
        self.connected_components().swap_remove(0)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn y_raw(pol: Polarity) -> RawWeb {
        let (sign, out) = match pol {
            Polarity::Source => (Sign::Plus, true),
            Polarity::Sink => (Sign::Minus, false),
        };
        let edge = |i| {
            if out {
                (Endpoint::Vertex(0), Endpoint::Boundary(i))
            } else {
                (Endpoint::Boundary(i), Endpoint::Vertex(0))
            }
        };
        RawWeb {
            boundary: SignSequence::new(vec![sign; 3]),
            vertices: vec![pol],
            edges: vec![edge(0), edge(1), edge(2)],
            rotations: vec![vec![0, 1, 2]],
            ..RawWeb::default()
        }
    }

    #[test]
    fn y_web_is_valid() {
        let y = y_raw(Polarity::Source).validate().unwrap();
        assert_eq!(y.vertex_count(), 1);
        assert!(!y.is_closed());
        assert_eq!(y.orbits().len(), 3);
    }

    #[test]
    fn y_with_wrong_rotation_is_nonplanar() {
        let mut raw = y_raw(Polarity::Source);
        raw.rotations = vec![vec![2, 1, 0]];
        assert!(matches!(raw.validate(), Err(WebError::Nonplanar { .. })));
    }

    #[test]
    fn mixed_orientation_rejected() {
        let mut raw = y_raw(Polarity::Source);
        raw.edges[1] = (Endpoint::Boundary(1), Endpoint::Vertex(0));
        raw.boundary = "+-+".parse().unwrap();
        assert_eq!(
            raw.validate(),
            Err(WebError::MixedVertexOrientation { vertex: 0 })
        );
    }

    #[test]
    fn wrong_sign_rejected() {
        let mut raw = y_raw(Polarity::Source);
        raw.boundary = "++-".parse().unwrap();
        assert!(matches!(
            raw.validate(),
            Err(WebError::BoundarySignMismatch { point: 2, .. })
        ));
    }

    #[test]
    fn degree_checked() {
        let mut raw = y_raw(Polarity::Source);
        raw.boundary = "++++".parse().unwrap();
        raw.edges.push((Endpoint::Vertex(0), Endpoint::Boundary(3)));
        assert!(matches!(raw.validate(), Err(WebError::NonTrivalent { vertex: 0, .. })));
    }

    #[test]
    fn crossing_arcs_are_nonplanar() {
        let raw = RawWeb {
            boundary: "++--".parse().unwrap(),
            edges: vec![
                (Endpoint::Boundary(2), Endpoint::Boundary(0)),
                (Endpoint::Boundary(3), Endpoint::Boundary(1)),
            ],
            ..RawWeb::default()
        };
        assert!(matches!(raw.validate(), Err(WebError::Nonplanar { .. })));
    }

    #[test]
    fn k33_is_nonplanar() {
        // K_{3,3}: sources 0..3, sinks 3..6, any rotation has genus >= 1.
        let mut raw = RawWeb {
            vertices: vec![
                Polarity::Source,
                Polarity::Source,
                Polarity::Source,
                Polarity::Sink,
                Polarity::Sink,
                Polarity::Sink,
            ],
            rotations: vec![Vec::new(); 6],
            ..RawWeb::default()
        };
        for a in 0..3 {
            for b in 3..6 {
                let e = raw.edges.len();
                raw.edges.push((Endpoint::Vertex(a), Endpoint::Vertex(b)));
                raw.rotations[a].push(e);
                raw.rotations[b].push(e);
            }
        }
        assert!(matches!(raw.validate(), Err(WebError::Nonplanar { .. })));
    }

    #[test]
    fn mirror_is_involution_on_fixtures() {
        for (name, w) in fixtures::all_webs() {
            let back = w.mirror().mirror();
            assert_eq!(back.canonical_code(), w.canonical_code(), "{name}");
            assert_eq!(w.mirror().boundary(), &w.boundary().mirrored());
        }
    }

    #[test]
    fn mirror_swaps_polarity() {
        let y = y_raw(Polarity::Source).validate().unwrap();
        let m = y.mirror();
        assert_eq!(m.polarity(0), Polarity::Sink);
        assert_eq!(m.boundary().to_string(), "---");
        assert_eq!(
            m.canonical_code(),
            y_raw(Polarity::Sink).validate().unwrap().canonical_code()
        );
    }

    #[test]
    fn containment_cycle_rejected() {
        let raw = RawWeb {
            circles: 2,
            nests: vec![
                (Member::Circle(0), Some(FaceSite::CircleInside(1))),
                (Member::Circle(1), Some(FaceSite::CircleInside(0))),
            ],
            ..RawWeb::default()
        };
        assert!(matches!(raw.validate(), Err(WebError::MalformedContainment { .. })));
        let self_nest = RawWeb {
            circles: 1,
            nests: vec![(Member::Circle(0), Some(FaceSite::CircleInside(0)))],
            ..RawWeb::default()
        };
        assert!(matches!(
            self_nest.validate(),
            Err(WebError::MalformedContainment { .. })
        ));
    }

    #[test]
    fn outer_face_container_lifts() {
        // c1 inside c0; c2 declared in the outside of c1, i.e. also inside c0.
        let raw = RawWeb {
            circles: 3,
            nests: vec![
                (Member::Circle(1), Some(FaceSite::CircleInside(0))),
                (Member::Circle(2), Some(FaceSite::CircleOutside(1))),
            ],
            ..RawWeb::default()
        };
        let w = raw.validate().unwrap();
        assert_eq!(w.circle_container(2), Some(FaceSite::CircleInside(0)));
    }

    #[test]
    fn components_and_union() {
        let circle = fixtures::circle();
        let two = circle.disjoint_union(&circle, None).unwrap();
        assert_eq!(two.circle_count(), 2);
        let parts = two.connected_components();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.circle_count() == 1));
        let nested = circle
            .disjoint_union(&circle, Some(FaceSite::CircleInside(0)))
            .unwrap();
        assert_eq!(nested.faces().len(), 3);
        assert!(circle
            .disjoint_union(&fixtures::y(), None)
            .is_err());
        assert_eq!(fixtures::theta().vertex_count(), 2);
    }
}
