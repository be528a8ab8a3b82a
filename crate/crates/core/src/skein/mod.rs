//! The skein module: local relations, the bracket, and reduction of
//! ε-webs to non-elliptic ones.

mod bracket;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::classify::is_non_elliptic;
use crate::laurent::LaurentPoly;
use crate::sign::SignSequence;
use crate::web::surgery::cut;
use crate::web::{glue, CanonicalCode, FaceId, FaceSite, Web, WebError};

pub use bracket::{BracketEngine, Policy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReducibleKind {
    Circle,
    Digon,
    Square,
}

impl std::fmt::Display for ReducibleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReducibleKind::Circle => "circle",
            ReducibleKind::Digon => "digon",
            ReducibleKind::Square => "square",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Reducible {
    pub kind: ReducibleKind,
    pub face: FaceId,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SkeinError {
    #[error("web is not closed (boundary {boundary})")]
    NotClosed { boundary: SignSequence },
    #[error("face {face} is not a {expected}")]
    WrongFaceKind { face: FaceId, expected: ReducibleKind },
    #[error("web {index} is not non-elliptic")]
    NotNonElliptic { index: usize },
    #[error(transparent)]
    Web(#[from] WebError),
}

/// A finite formal sum of ε-webs with Laurent-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinElement {
    boundary: SignSequence,
    terms: BTreeMap<CanonicalCode, (Web, LaurentPoly)>,
}

impl SkeinElement {
    pub fn zero(boundary: SignSequence) -> Self {
        Self {
            boundary,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_web(w: Web) -> Self {
        let mut s = Self::zero(w.boundary().clone());
        s.add_term(w, LaurentPoly::one());
        s
    }

    pub fn boundary(&self) -> &SignSequence {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical-code order.
    pub fn terms(&self) -> impl Iterator<Item = (&Web, &LaurentPoly)> {
        self.terms.values().map(|(w, c)| (w, c))
    }

    pub fn coefficient(&self, w: &Web) -> LaurentPoly {
        self.terms
            .get(&w.canonical_code())
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Adds `coeff · w`; panics if `w` has another boundary.
    pub fn add_term(&mut self, w: Web, coeff: LaurentPoly) {
        assert_eq!(w.boundary(), &self.boundary, "skein terms share the boundary");
        if coeff.is_zero() {
            return;
        }
        let key = w.canonical_code();
        match self.terms.get_mut(&key) {
            Some((_, c)) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (w, coeff));
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SkeinElement, k: &LaurentPoly) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c * k);
        }
    }

    pub fn scaled(&self, k: &LaurentPoly) -> SkeinElement {
        let mut out = SkeinElement::zero(self.boundary.clone());
        out.add_scaled(self, k);
        out
    }

    /// Sum of coefficient times bracket; only for closed terms.
    pub fn evaluate(&self) -> Result<LaurentPoly, SkeinError> {
        let mut acc = LaurentPoly::zero();
        for (w, c) in self.terms() {
            acc += &(c * &kuperberg_bracket(w)?);
        }
        Ok(acc)
    }
}

/// The first reducible feature: circles, then digons, then squares, each
/// by lowest face id. Only faces that are disks are reported.
pub fn find_reducible(w: &Web) -> Option<Reducible> {
    let faces = w.faces();
    if w.circle_count() > 0 {
        let face = (0..w.circle_count())
            .map(|c| faces.site(FaceSite::CircleInside(c)))
            .min()
            .unwrap();
        return Some(Reducible {
            kind: ReducibleKind::Circle,
            face,
        });
    }
    for (sides, kind) in [(2, ReducibleKind::Digon), (4, ReducibleKind::Square)] {
        if let Some(f) = faces
            .bounded()
            .find(|f| f.sides == sides && f.orbits.len() == 1 && f.circle_sides.is_empty())
        {
            return Some(Reducible { kind, face: f.id });
        }
    }
    None
}

fn circle_of(w: &Web, face: FaceId) -> Option<usize> {
    let faces = w.faces();
    let f = faces.get(face)?;
    f.circle_sides
        .iter()
        .find(|(_, inside)| *inside)
        .map(|&(c, _)| c)
}

/// The boundary walk of `face` if it is a disk with `sides` sides.
fn walk_of(w: &Web, face: FaceId, sides: usize) -> Option<Vec<usize>> {
    let faces = w.faces();
    let f = faces.get(face)?;
    if !f.bounded || f.sides != sides || f.orbits.len() != 1 || !f.circle_sides.is_empty() {
        return None;
    }
    Some(w.orbits()[f.orbits[0]].clone())
}

/// Deletes the edges of the given darts inside the component that owns them.
/// Anything nested in that component moves to the component's own container.
fn surgery(w: &Web, darts: &[usize]) -> Web {
    let site = FaceSite::Left(darts[0]);
    let owner = w.owner_web(site);
    let owned: Vec<usize> = (0..w.edge_count())
        .filter(|&e| w.same_owner(2 * e, darts[0]))
        .collect();
    let local: Vec<usize> = darts
        .iter()
        .map(|&d| owned.binary_search(&(d / 2)).expect("dart in owner"))
        .collect();
    w.replace_owner(site, &cut(&owner, &local))
}

/// Removes the circle bounding `face`, with coefficient [3].
pub fn reduce_circle(w: &Web, face: FaceId) -> Result<SkeinElement, SkeinError> {
    let c = circle_of(w, face).ok_or(SkeinError::WrongFaceKind {
        face,
        expected: ReducibleKind::Circle,
    })?;
    let out = w.replace_owner(FaceSite::CircleInside(c), &Web::empty());
    let mut s = SkeinElement::zero(w.boundary().clone());
    s.add_term(out, LaurentPoly::quantum_int(3).unwrap());
    Ok(s)
}

/// Collapses the digon `face` to a single strand, with coefficient [2].
pub fn reduce_digon(w: &Web, face: FaceId) -> Result<SkeinElement, SkeinError> {
    let walk = walk_of(w, face, 2).ok_or(SkeinError::WrongFaceKind {
        face,
        expected: ReducibleKind::Digon,
    })?;
    let mut s = SkeinElement::zero(w.boundary().clone());
    s.add_term(surgery(w, &walk[..1]), LaurentPoly::quantum_int(2).unwrap());
    Ok(s)
}

/// Replaces the square `face` by its two smoothings.
pub fn resolve_square(w: &Web, face: FaceId) -> Result<SkeinElement, SkeinError> {
    let walk = walk_of(w, face, 4).ok_or(SkeinError::WrongFaceKind {
        face,
        expected: ReducibleKind::Square,
    })?;
    let mut s = SkeinElement::zero(w.boundary().clone());
    s.add_term(surgery(w, &[walk[0], walk[2]]), LaurentPoly::one());
    s.add_term(surgery(w, &[walk[1], walk[3]]), LaurentPoly::one());
    Ok(s)
}

/// One rewriting step at `r`.
pub fn apply(w: &Web, r: Reducible) -> Result<SkeinElement, SkeinError> {
    match r.kind {
        ReducibleKind::Circle => reduce_circle(w, r.face),
        ReducibleKind::Digon => reduce_digon(w, r.face),
        ReducibleKind::Square => resolve_square(w, r.face),
    }
}

/// The Kuperberg bracket of a closed web.
pub fn kuperberg_bracket(w: &Web) -> Result<LaurentPoly, SkeinError> {
    if !w.is_closed() {
        return Err(SkeinError::NotClosed {
            boundary: w.boundary().clone(),
        });
    }
    Ok(BracketEngine::global().closed_part(w))
}

/// Writes `w` as a combination of non-elliptic webs with the same boundary.
pub fn reduce_to_nonelliptic(w: &Web) -> SkeinElement {
    let mut memo = HashMap::new();
    reduce_rec(w, &mut memo)
}

fn reduce_rec(w: &Web, memo: &mut HashMap<CanonicalCode, SkeinElement>) -> SkeinElement {
    let scalar = BracketEngine::global().closed_part(w);
    let base = w.boundary_part();
    let key = base.canonical_code();
    let reduced = match memo.get(&key) {
        Some(r) => r.clone(),
        None => {
            let r = match find_reducible(&base) {
                None => SkeinElement::from_web(base.clone()),
                Some(r) => {
                    let step = apply(&base, r).expect("reported face has its kind");
                    let mut acc = SkeinElement::zero(base.boundary().clone());
                    for (t, c) in step.terms() {
                        let sub = reduce_rec(t, memo);
                        acc.add_scaled(&sub, c);
                    }
                    acc
                }
            };
            memo.insert(key, r.clone());
            r
        }
    };
    reduced.scaled(&scalar)
}

/// `q^l · ⟨mirror(w1) w2⟩`, the graded dimension of the hom space between
/// the modules attached to two non-elliptic webs.
pub fn graded_hom_dim(w1: &Web, w2: &Web) -> Result<LaurentPoly, SkeinError> {
    if w1.boundary() != w2.boundary() {
        return Err(WebError::BoundaryMismatch {
            left: w1.boundary().clone(),
            right: w2.boundary().clone(),
        }
        .into());
    }
    for (index, w) in [w1, w2].into_iter().enumerate() {
        if !is_non_elliptic(w) {
            return Err(SkeinError::NotNonElliptic { index });
        }
    }
    let closed = glue(w1, w2)?;
    Ok(kuperberg_bracket(&closed)?.shift(w1.boundary().len() as i64))
}
