//! Canonical forms: equal codes iff the webs are isomorphic as plane maps
//! with the boundary points pinned in order.

use std::collections::HashMap;

use super::{Dart, Endpoint, FaceSite, Owner, Polarity, Web};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

const UNSEEN: u32 = u32::MAX;
const TOP_LEVEL: u32 = u32::MAX - 1;

/// Breadth-first labelling of darts from a root. Vertex `k` (in discovery
/// order) gets dart labels `base + 3k + s`, where `s` counts counterclockwise
/// from the dart through which the vertex was discovered.
struct Labelling<'a> {
    web: &'a Web,
    base: u32,
    num: Vec<u32>,
    off: Vec<u8>,
    order: Vec<usize>,
}

impl<'a> Labelling<'a> {
    fn new(web: &'a Web, base: u32) -> Self {
        Self {
            web,
            base,
            num: vec![UNSEEN; web.vertex_count()],
            off: vec![0; web.vertex_count()],
            order: Vec::new(),
        }
    }

    /// Label of dart `d`, discovering its vertex if needed.
    fn label(&mut self, d: Dart) -> u32 {
        match self.web.end(d) {
            Endpoint::Boundary(k) => k as u32,
            Endpoint::Vertex(v) => {
                if self.num[v] == UNSEEN {
                    self.num[v] = self.order.len() as u32;
                    self.off[v] = self.web.slot(d) as u8;
                    self.order.push(v);
                }
                let rel = (self.web.slot(d) + 3 - self.off[v] as usize) % 3;
                self.base + 3 * self.num[v] + rel as u32
            }
        }
    }

    /// Emits the neighbour labels of every vertex discovered from position
    /// `from` on, in discovery order.
    fn drain(&mut self, mut from: usize, out: &mut Vec<u32>) -> usize {
        while from < self.order.len() {
            let u = self.order[from];
            for k in 0..3 {
                let x = self.web.rot[u][(self.off[u] as usize + k) % 3];
                let l = self.label(x ^ 1);
                out.push(l);
            }
            from += 1;
        }
        from
    }

    /// Smallest label around the orbit of `d` (all darts already labelled).
    fn face_label(&mut self, d: Dart) -> u32 {
        let orbit = &self.web.orbits[self.web.orbit_of[d]];
        orbit.iter().map(|&x| self.peek(x)).min().unwrap_or(UNSEEN)
    }

    fn peek(&self, d: Dart) -> u32 {
        match self.web.end(d) {
            Endpoint::Boundary(k) => k as u32,
            Endpoint::Vertex(v) => {
                let rel = (self.web.slot(d) + 3 - self.off[v] as usize) % 3;
                self.base + 3 * self.num[v] + rel as u32
            }
        }
    }
}

struct Canonizer<'a> {
    web: &'a Web,
    children: HashMap<Option<FaceSite>, Vec<Owner>>,
    memo: HashMap<Owner, Vec<u32>>,
}

impl<'a> Canonizer<'a> {
    fn new(web: &'a Web) -> Self {
        let mut children: HashMap<Option<FaceSite>, Vec<Owner>> = HashMap::new();
        for (c, comp) in web.comps.iter().enumerate() {
            children.entry(comp.container).or_default().push(Owner::Comp(c));
        }
        for (c, site) in web.circles.iter().enumerate() {
            children.entry(*site).or_default().push(Owner::Circle(c));
        }
        Self {
            web,
            children,
            memo: HashMap::new(),
        }
    }

    /// Appends `[count, (face, len, code)*]` for the children grouped by face.
    fn emit_children(&mut self, groups: Vec<(u32, Vec<Owner>)>, out: &mut Vec<u32>) {
        let mut items: Vec<(u32, Vec<u32>)> = Vec::new();
        for (face, owners) in groups {
            for o in owners {
                items.push((face, self.code_of(o)));
            }
        }
        items.sort();
        out.push(items.len() as u32);
        for (face, code) in items {
            out.push(face);
            out.push(code.len() as u32);
            out.extend(code);
        }
    }

    fn code_of(&mut self, o: Owner) -> Vec<u32> {
        if let Some(c) = self.memo.get(&o) {
            return c.clone();
        }
        let code = match o {
            Owner::Circle(c) => {
                let kids = self
                    .children
                    .get(&Some(FaceSite::CircleInside(c)))
                    .cloned()
                    .unwrap_or_default();
                let mut out = vec![0];
                self.emit_children(vec![(0, kids)], &mut out);
                out
            }
            Owner::Comp(c) => {
                let web = self.web;
                let outer = web.comps[c].outer;
                let mut best: Option<Vec<u32>> = None;
                for &root in &web.orbits[web.orbit_of[outer]] {
                    let mut lab = Labelling::new(web, 0);
                    let mut out = vec![1];
                    let Endpoint::Vertex(v) = web.end(root) else {
                        unreachable!("closed components have no boundary darts")
                    };
                    out.push(u32::from(web.polarity[v] == Polarity::Source));
                    lab.label(root);
                    lab.drain(0, &mut out);
                    let mut groups = Vec::new();
                    for (site, owners) in &self.children {
                        if let Some(FaceSite::Left(d)) = site {
                            if web.owner_of_dart(*d) == Owner::Comp(c) {
                                groups.push((lab.face_label(*d), owners.clone()));
                            }
                        }
                    }
                    self.emit_children(groups, &mut out);
                    if best.as_ref().map_or(true, |b| out < *b) {
                        best = Some(out);
                    }
                }
                best.expect("outer orbit is nonempty")
            }
            Owner::BoundaryPart => unreachable!(),
        };
        self.memo.insert(o, code.clone());
        code
    }

    fn run(mut self) -> Vec<u32> {
        let web = self.web;
        let n = web.boundary.len();
        let mut out = vec![n as u32];
        out.extend(web.boundary.signs().iter().map(|s| u32::from(*s == crate::sign::Sign::Minus)));
        let mut lab = Labelling::new(web, n as u32);
        let mut pos = 0;
        for i in 0..n {
            let l = lab.label(web.boundary_dart[i] ^ 1);
            out.push(l);
            pos = lab.drain(pos, &mut out);
        }
        let mut groups = Vec::new();
        for (site, owners) in &self.children {
            match site {
                None => groups.push((TOP_LEVEL, owners.clone())),
                Some(FaceSite::Left(d)) if web.owner_of_dart(*d) == Owner::BoundaryPart => {
                    groups.push((lab.face_label(*d), owners.clone()));
                }
                _ => {}
            }
        }
        self.emit_children(groups, &mut out);
        out
    }
}

impl Web {
    /// Canonical code of the web: boundary points pinned, closed components
    /// minimized over roots on their outer face, nesting included.
    pub fn canonical_code(&self) -> CanonicalCode {
        CanonicalCode(Canonizer::new(self).run())
    }

    /// Same isotopy class (boundary-pinned map isomorphism).
    pub fn is_isomorphic(&self, other: &Web) -> bool {
        self.boundary == other.boundary && self.canonical_code() == other.canonical_code()
    }
}
