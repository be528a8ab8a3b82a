//! Kuperberg bracket of closed webs by exhaustive rewriting.
//!
//! A connected closed component is held as a bare rotation system: vertex
//! `v` owns darts `3v, 3v + 1, 3v + 2` in counterclockwise order and `twin`
//! pairs them into edges. Orientations do not affect the bracket and are
//! forgotten here.

use std::sync::{Mutex, OnceLock};

use dashmap::DashMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::LaurentPoly;
use crate::web::{Endpoint, Web};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SphereMap {
    twin: Vec<u32>,
}

#[inline]
fn ccw(d: u32) -> u32 {
    3 * (d / 3) + (d % 3 + 1) % 3
}

#[inline]
fn cw(d: u32) -> u32 {
    3 * (d / 3) + (d % 3 + 2) % 3
}

impl SphereMap {
    #[inline]
    fn face_next(&self, d: u32) -> u32 {
        cw(self.twin[d as usize])
    }

    /// Closed vertex components of `w`, one map each.
    pub(crate) fn components_of(w: &Web) -> Vec<SphereMap> {
        let mut out = Vec::new();
        for comp in w.closed_components() {
            let mut index = std::collections::HashMap::new();
            for (i, &v) in comp.vertices.iter().enumerate() {
                index.insert(v, i as u32);
            }
            let dart = |d: usize| -> u32 {
                let Endpoint::Vertex(v) = w.end(d) else {
                    unreachable!("closed component")
                };
                3 * index[&v] + w.slot(d) as u32
            };
            let mut twin = vec![0u32; 3 * comp.vertices.len()];
            for &v in &comp.vertices {
                for &d in &w.rotation(v) {
                    twin[dart(d) as usize] = dart(d ^ 1);
                }
            }
            out.push(SphereMap { twin });
        }
        out
    }

    /// Face walks, each listed from its lowest dart.
    fn faces(&self) -> Vec<Vec<u32>> {
        let nd = self.twin.len();
        let mut seen = vec![false; nd];
        let mut faces = Vec::new();
        for s in 0..nd as u32 {
            if seen[s as usize] {
                continue;
            }
            let mut f = Vec::new();
            let mut d = s;
            while !seen[d as usize] {
                seen[d as usize] = true;
                f.push(d);
                d = self.face_next(d);
            }
            faces.push(f);
        }
        faces
    }

    /// Deletes the edges of `darts` and fuses the resulting 2-valent
    /// vertices. Returns the number of new circles and the connected pieces.
    fn cut(&self, darts: &[u32]) -> (usize, Vec<SphereMap>) {
        let nd = self.twin.len();
        let nv = nd / 3;
        let mut dead = vec![false; nd];
        for &d in darts {
            dead[d as usize] = true;
            dead[self.twin[d as usize] as usize] = true;
        }
        let alive = |v: usize| (0..3).filter(|k| !dead[3 * v + k]).count();
        let deg: Vec<usize> = (0..nv).map(alive).collect();
        debug_assert!(deg.iter().all(|&k| k >= 2));
        let other = |d: u32| -> u32 {
            let v = d / 3;
            (3 * v..3 * v + 3)
                .find(|&x| x != d && !dead[x as usize])
                .expect("2-valent vertex has another dart")
        };
        let mut visited = vec![false; nv];
        let mut new_twin = vec![u32::MAX; nd];
        for x in 0..nd as u32 {
            if dead[x as usize] || deg[(x / 3) as usize] != 3 {
                continue;
            }
            let mut y = self.twin[x as usize];
            while deg[(y / 3) as usize] == 2 {
                visited[(y / 3) as usize] = true;
                y = self.twin[other(y) as usize];
            }
            new_twin[x as usize] = y;
        }
        let mut circles = 0;
        for v in 0..nv {
            if deg[v] == 2 && !visited[v] {
                circles += 1;
                let start = v as u32;
                let mut d = (3 * start..3 * start + 3).find(|&x| !dead[x as usize]).unwrap();
                loop {
                    visited[(d / 3) as usize] = true;
                    let t = self.twin[d as usize];
                    if t / 3 == start {
                        break;
                    }
                    d = other(t);
                }
            }
        }
        // Split the surviving trivalent vertices into connected pieces.
        let mut newv = vec![u32::MAX; nv];
        let mut pieces = Vec::new();
        for s in 0..nv {
            if deg[s] != 3 || newv[s] != u32::MAX {
                continue;
            }
            let mut order = vec![s];
            newv[s] = 0;
            let mut i = 0;
            while i < order.len() {
                let u = order[i];
                for k in 0..3 {
                    let t = new_twin[3 * u + k] as usize / 3;
                    if newv[t] == u32::MAX {
                        newv[t] = order.len() as u32;
                        order.push(t);
                    }
                }
                i += 1;
            }
            let mut twin = vec![0u32; 3 * order.len()];
            for (i, &u) in order.iter().enumerate() {
                for k in 0..3 {
                    let t = new_twin[3 * u + k];
                    twin[3 * i + k] = 3 * newv[(t / 3) as usize] + t % 3;
                }
            }
            pieces.push(SphereMap { twin });
        }
        (circles, pieces)
    }

    /// Code that is equal for two maps iff they are isomorphic on the
    /// sphere, allowing reflections. Minimized over all roots whose local
    /// face-size signature is minimal.
    pub(crate) fn canonical(&self) -> Vec<u32> {
        let nd = self.twin.len();
        let mut face_len = vec![0u32; nd];
        for f in self.faces() {
            for &d in &f {
                face_len[d as usize] = f.len() as u32;
            }
        }
        let key = |d: u32, mirror: bool| {
            let (a, b) = (face_len[d as usize], face_len[self.twin[d as usize] as usize]);
            if mirror {
                (b, a)
            } else {
                (a, b)
            }
        };
        let mut best_key = (u32::MAX, u32::MAX);
        for d in 0..nd as u32 {
            for m in [false, true] {
                best_key = best_key.min(key(d, m));
            }
        }
        let mut best: Option<Vec<u32>> = None;
        let mut scratch = Scratch::new(nd / 3);
        for d in 0..nd as u32 {
            for m in [false, true] {
                if key(d, m) == best_key {
                    scratch.encode(self, d, m, &mut best);
                }
            }
        }
        best.expect("nonempty map")
    }
}

struct Scratch {
    num: Vec<u32>,
    off: Vec<u8>,
    order: Vec<u32>,
    code: Vec<u32>,
}

impl Scratch {
    fn new(nv: usize) -> Self {
        Self {
            num: vec![u32::MAX; nv],
            off: vec![0; nv],
            order: Vec::with_capacity(nv),
            code: Vec::with_capacity(3 * nv),
        }
    }

    /// Breadth-first code from `root`; stops as soon as it exceeds `best`.
    fn encode(&mut self, map: &SphereMap, root: u32, mirror: bool, best: &mut Option<Vec<u32>>) {
        self.num.iter_mut().for_each(|x| *x = u32::MAX);
        self.order.clear();
        self.code.clear();
        let step = |d: u32| if mirror { cw(d) } else { ccw(d) };
        let rel = |d: u32, off: u8| -> u32 {
            let s = (d % 3) as i32 - off as i32;
            let s = s.rem_euclid(3) as u32;
            if mirror {
                (3 - s) % 3
            } else {
                s
            }
        };
        let v0 = root / 3;
        self.num[v0 as usize] = 0;
        self.off[v0 as usize] = (root % 3) as u8;
        self.order.push(v0);
        let mut i = 0;
        // Some(true) once strictly below `best`.
        let mut below = best.is_none();
        while i < self.order.len() {
            let u = self.order[i];
            let mut d = 3 * u + self.off[u as usize] as u32;
            for _ in 0..3 {
                let t = map.twin[d as usize];
                let v = t / 3;
                if self.num[v as usize] == u32::MAX {
                    self.num[v as usize] = self.order.len() as u32;
                    self.off[v as usize] = (t % 3) as u8;
                    self.order.push(v);
                }
                let tok = 3 * self.num[v as usize] + rel(t, self.off[v as usize]);
                if !below {
                    let pos = self.code.len();
                    let b = best.as_ref().unwrap()[pos];
                    if tok > b {
                        return;
                    }
                    if tok < b {
                        below = true;
                    }
                }
                self.code.push(tok);
                d = step(d);
            }
            i += 1;
        }
        if below {
            *best = Some(self.code.clone());
        }
    }
}

/// Which reducible face to rewrite next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Digons before squares, lowest face first.
    Canonical,
    /// Uniformly random digon or square (and random side of a digon).
    Random(u64),
}

/// A bracket evaluator with its own memo table.
pub struct BracketEngine {
    policy: Policy,
    memo: DashMap<Vec<u32>, LaurentPoly>,
    rng: Mutex<ChaCha8Rng>,
    use_memo: bool,
}

impl BracketEngine {
    pub fn new(policy: Policy) -> Self {
        let seed = match policy {
            Policy::Canonical => 0,
            Policy::Random(s) => s,
        };
        Self {
            policy,
            memo: DashMap::new(),
            rng: Mutex::new(ChaCha8Rng::seed_from_u64(seed)),
            use_memo: true,
        }
    }

    /// Disables memoization (every subterm is rewritten from scratch).
    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    /// The shared engine used by the library's public functions.
    pub fn global() -> &'static BracketEngine {
        static GLOBAL: OnceLock<BracketEngine> = OnceLock::new();
        GLOBAL.get_or_init(|| BracketEngine::new(Policy::Canonical))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Bracket of every closed piece of `w` (circles and closed components),
    /// ignoring any border-touching part.
    pub fn closed_part(&self, w: &Web) -> LaurentPoly {
        let three = LaurentPoly::quantum_int(3).unwrap();
        let mut acc = three.pow(w.circle_count() as u32);
        for m in SphereMap::components_of(w) {
            acc = &acc * &self.eval(&m);
        }
        acc
    }

    pub(crate) fn eval(&self, m: &SphereMap) -> LaurentPoly {
        let key = if self.use_memo {
            let k = m.canonical();
            if let Some(v) = self.memo.get(&k) {
                return v.clone();
            }
            Some(k)
        } else {
            None
        };
        let value = self.rewrite(m);
        if let Some(k) = key {
            self.memo.insert(k, value.clone());
        }
        value
    }

    fn rewrite(&self, m: &SphereMap) -> LaurentPoly {
        let faces = m.faces();
        let candidates: Vec<&Vec<u32>> = faces.iter().filter(|f| f.len() == 2 || f.len() == 4).collect();
        let chosen: &Vec<u32> = match self.policy {
            Policy::Canonical => candidates
                .iter()
                .find(|f| f.len() == 2)
                .or_else(|| candidates.first())
                .copied()
                .unwrap_or_else(|| panic!("closed web with no digon or square: {m:?}")),
            Policy::Random(_) => {
                let mut rng = self.rng.lock().unwrap();
                candidates
                    .choose(&mut *rng)
                    .copied()
                    .unwrap_or_else(|| panic!("closed web with no digon or square: {m:?}"))
            }
        };
        if chosen.len() == 2 {
            let side = match self.policy {
                Policy::Canonical => 0,
                Policy::Random(_) => self.rng.lock().unwrap().gen_range(0..2),
            };
            let two = LaurentPoly::quantum_int(2).unwrap();
            &two * &self.pieces(m.cut(&[chosen[side]]))
        } else {
            let a = self.pieces(m.cut(&[chosen[0], chosen[2]]));
            let b = self.pieces(m.cut(&[chosen[1], chosen[3]]));
            &a + &b
        }
    }

    fn pieces(&self, (circles, maps): (usize, Vec<SphereMap>)) -> LaurentPoly {
        let three = LaurentPoly::quantum_int(3).unwrap();
        let mut acc = three.pow(circles as u32);
        for m in &maps {
            acc = &acc * &self.eval(m);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64) -> LaurentPoly {
        LaurentPoly::quantum_int(n).unwrap()
    }

    #[test]
    fn theta_is_two_three() {
        let e = BracketEngine::new(Policy::Canonical);
        assert_eq!(e.closed_part(&fixtures::theta()), &q(2) * &q(3));
    }

    #[test]
    fn canonical_ignores_labelling_and_reflection() {
        let cube = SphereMap::components_of(&fixtures::cube()).pop().unwrap();
        let mirrored = SphereMap::components_of(&fixtures::cube().mirror()).pop().unwrap();
        assert_eq!(cube.canonical(), mirrored.canonical());
        let theta = SphereMap::components_of(&fixtures::theta()).pop().unwrap();
        assert_ne!(cube.canonical(), theta.canonical());
    }

    #[test]
    fn random_policies_agree_on_cube() {
        let expected = BracketEngine::new(Policy::Canonical).closed_part(&fixtures::cube());
        for seed in 0..10 {
            let e = BracketEngine::new(Policy::Random(seed)).without_memo();
            assert_eq!(e.closed_part(&fixtures::cube()), expected);
        }
    }
}
