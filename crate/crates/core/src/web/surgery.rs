//! Edge deletion followed by erasing the 2-valent vertices it leaves behind.

use super::{Endpoint, FaceSite, Member, Owner, Polarity, RawWeb, Web};
use crate::sign::Sign;

/// Deletes `edges` from `w` and fuses every vertex left with two edges.
/// Chains that close up without a vertex become circles. Placements of the
/// input are dropped: new closed components and circles sit at top level.
pub(crate) fn cut(w: &Web, edges: &[usize]) -> Web {
    let nd = 2 * w.edge_count();
    let mut dead = vec![false; nd];
    for &e in edges {
        dead[2 * e] = true;
        dead[2 * e + 1] = true;
    }
    let nv = w.vertex_count();
    let mut alive_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for v in 0..nv {
        alive_at[v] = w.rotation(v).iter().copied().filter(|&d| !dead[d]).collect();
        assert!(
            alive_at[v].len() >= 2,
            "surgery leaves vertex {v} with {} edges",
            alive_at[v].len()
        );
    }
    let passing = |v: usize| alive_at[v].len() == 2;
    let other = |d: usize| -> usize {
        let Endpoint::Vertex(v) = w.end(d) else { unreachable!() };
        if alive_at[v][0] == d {
            alive_at[v][1]
        } else {
            alive_at[v][0]
        }
    };
    let is_stop = |d: usize| match w.end(d) {
        Endpoint::Boundary(_) => true,
        Endpoint::Vertex(v) => !passing(v),
    };

    let mut vmap = vec![usize::MAX; nv];
    let mut raw = RawWeb {
        boundary: w.boundary().clone(),
        ..RawWeb::default()
    };
    for v in 0..nv {
        if !passing(v) {
            vmap[v] = raw.vertices.len();
            raw.vertices.push(w.polarity(v));
        }
    }
    let mut visited = vec![false; nv];
    let mut new_edge = vec![usize::MAX; nd];
    let is_tail = |d: usize| match w.end(d) {
        Endpoint::Boundary(i) => w.boundary().get(i) == Sign::Minus,
        Endpoint::Vertex(v) => w.polarity(v) == Polarity::Source,
    };
    let map_end = |d: usize| match w.end(d) {
        Endpoint::Boundary(i) => Endpoint::Boundary(i),
        Endpoint::Vertex(v) => Endpoint::Vertex(vmap[v]),
    };
    for x in 0..nd {
        if dead[x] || !is_stop(x) || new_edge[x] != usize::MAX {
            continue;
        }
        let mut y = x ^ 1;
        while !is_stop(y) {
            let Endpoint::Vertex(v) = w.end(y) else { unreachable!() };
            visited[v] = true;
            y = other(y) ^ 1;
        }
        let k = raw.edges.len();
        new_edge[x] = k;
        new_edge[y] = k;
        if is_tail(x) {
            raw.edges.push((map_end(x), map_end(y)));
        } else {
            raw.edges.push((map_end(y), map_end(x)));
        }
    }
    for v in 0..nv {
        if vmap[v] != usize::MAX {
            raw.rotations
                .push(w.rotation(v).iter().map(|&d| new_edge[d]).collect());
        }
    }
    raw.circles = w.circle_count();
    for v in 0..nv {
        if passing(v) && !visited[v] {
            // A loop of fused vertices.
            raw.circles += 1;
            let mut d = alive_at[v][0];
            loop {
                let Endpoint::Vertex(u) = w.end(d) else { unreachable!() };
                visited[u] = true;
                let t = d ^ 1;
                let Endpoint::Vertex(next) = w.end(t) else { unreachable!() };
                if next == v {
                    break;
                }
                d = other(t);
            }
        }
    }
    raw.validate().expect("surgery preserves validity")
}

impl Web {
    /// The component owning a face site, as its own web.
    pub(crate) fn owner_web(&self, site: FaceSite) -> Web {
        match self.owner_of_site(site).expect("valid site") {
            Owner::BoundaryPart => self.connected_components().swap_remove(0),
            Owner::Comp(c) => {
                let offset = usize::from(!self.boundary.is_empty());
                self.connected_components().swap_remove(offset + c)
            }
            Owner::Circle(c) => {
                let offset = usize::from(!self.boundary.is_empty()) + self.comps.len();
                self.connected_components().swap_remove(offset + c)
            }
        }
    }

    /// Replaces the component owning `site` by the pieces of `replacement`.
    /// Pieces land where the replaced component sat; anything nested inside
    /// the replaced component moves there too.
    pub(crate) fn replace_owner(&self, site: FaceSite, replacement: &Web) -> Web {
        let owner = self.owner_of_site(site).expect("valid site");
        let gone_container = self.container_of(owner);
        let removed_vertex = |v: usize| match owner {
            Owner::BoundaryPart => self.comp_of[v].is_none(),
            Owner::Comp(c) => self.comp_of[v] == Some(c),
            Owner::Circle(_) => false,
        };
        let removed_edge = |e: usize| {
            let ends = [self.ends[2 * e], self.ends[2 * e + 1]];
            ends.iter().any(|&end| match end {
                Endpoint::Vertex(v) => removed_vertex(v),
                Endpoint::Boundary(_) => owner == Owner::BoundaryPart,
            })
        };
        let removed_circle = |c: usize| owner == Owner::Circle(c);

        let mut raw = RawWeb {
            boundary: self.boundary.clone(),
            ..RawWeb::default()
        };
        let mut vmap = vec![usize::MAX; self.vertex_count()];
        for v in 0..self.vertex_count() {
            if !removed_vertex(v) {
                vmap[v] = raw.vertices.len();
                raw.vertices.push(self.polarity[v]);
            }
        }
        let mut emap = vec![usize::MAX; self.edge_count()];
        for e in 0..self.edge_count() {
            if !removed_edge(e) {
                emap[e] = raw.edges.len();
                let m = |end| match end {
                    Endpoint::Vertex(v) => Endpoint::Vertex(vmap[v]),
                    b => b,
                };
                raw.edges.push((m(self.ends[2 * e]), m(self.ends[2 * e + 1])));
            }
        }
        for v in 0..self.vertex_count() {
            if vmap[v] != usize::MAX {
                raw.rotations
                    .push(self.rot[v].iter().map(|&d| emap[d / 2]).collect());
            }
        }
        let mut cmap = vec![usize::MAX; self.circle_count()];
        for c in 0..self.circle_count() {
            if !removed_circle(c) {
                cmap[c] = raw.circles;
                raw.circles += 1;
            }
        }
        let map_site = |s: Option<FaceSite>| -> Option<FaceSite> {
            let s = s?;
            if self.owner_of_site(s) == Some(owner) {
                return map_site_plain(gone_container, &emap, &cmap);
            }
            map_site_plain(Some(s), &emap, &cmap)
        };
        for comp in &self.comps {
            let v = comp.vertices[0];
            if removed_vertex(v) {
                continue;
            }
            let d = comp.outer;
            raw.outers.push((vmap[v], FaceSite::Left(2 * emap[d / 2] + d % 2)));
            if let Some(s) = map_site(comp.container) {
                raw.nests.push((Member::Vertex(vmap[v]), Some(s)));
            }
        }
        for c in 0..self.circle_count() {
            if cmap[c] != usize::MAX {
                if let Some(s) = map_site(self.circles[c]) {
                    raw.nests.push((Member::Circle(cmap[c]), Some(s)));
                }
            }
        }
        let here = map_site_plain(gone_container, &emap, &cmap);

        // Splice in the replacement.
        let rep = replacement.to_raw();
        let (dv, de, dc) = (raw.vertices.len(), raw.edges.len(), raw.circles);
        raw.vertices.extend(rep.vertices.iter().copied());
        raw.edges.extend(rep.edges.iter().map(|&(t, h)| {
            let m = |end| match end {
                Endpoint::Vertex(v) => Endpoint::Vertex(v + dv),
                b => b,
            };
            (m(t), m(h))
        }));
        raw.rotations
            .extend(rep.rotations.iter().map(|r| r.iter().map(|e| e + de).collect()));
        raw.circles += rep.circles;
        let shift = |s: FaceSite| match s {
            FaceSite::Left(d) => FaceSite::Left(d + 2 * de),
            FaceSite::CircleInside(c) => FaceSite::CircleInside(c + dc),
            FaceSite::CircleOutside(c) => FaceSite::CircleOutside(c + dc),
        };
        raw.outers
            .extend(rep.outers.iter().map(|&(v, s)| (v + dv, shift(s))));
        for comp in replacement.closed_components() {
            let m = Member::Vertex(comp.vertices[0] + dv);
            let s = comp.container.map(shift).or(here);
            if s.is_some() {
                raw.nests.push((m, s));
            }
        }
        for c in 0..replacement.circle_count() {
            let s = replacement.circle_container(c).map(shift).or(here);
            if s.is_some() {
                raw.nests.push((Member::Circle(c + dc), s));
            }
        }
        raw.validate().expect("replacement keeps the web valid")
    }
}

fn map_site_plain(s: Option<FaceSite>, emap: &[usize], cmap: &[usize]) -> Option<FaceSite> {
    match s? {
        FaceSite::Left(d) => Some(FaceSite::Left(2 * emap[d / 2] + d % 2)),
        FaceSite::CircleInside(c) => Some(FaceSite::CircleInside(cmap[c])),
        FaceSite::CircleOutside(c) => Some(FaceSite::CircleOutside(cmap[c])),
    }
}
