//! Closed pre-foams evaluated over `Q[X]/(X³)` with `τ(X²) = -1`.
//!
//! A facet of genus `g` with `d` dots and `b` boundary circles becomes the
//! tensor `Δ^(b-1)(X^d · h^g)` (the scalar `τ(X^d · h^g)` when `b = 0`),
//! where `h = m(Δ(1))` is the handle element. Each singular circle contracts
//! its three legs with the theta form.

mod text;

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use text::{parse_foams, write_foam, FoamParseError};

/// `c0 + c1 X + c2 X²`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FrobElement(pub [BigRational; 3]);

impl FrobElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::x_pow(0)
    }

    /// `X^k`, zero for `k ≥ 3`.
    pub fn x_pow(k: usize) -> Self {
        let mut c: [BigRational; 3] = Default::default();
        if k < 3 {
            c[k] = BigRational::one();
        }
        Self(c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self(self.0.clone().map(|c| c * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Add for &FrobElement {
    type Output = FrobElement;
    fn add(self, o: &FrobElement) -> FrobElement {
        FrobElement([0, 1, 2].map(|i| &self.0[i] + &o.0[i]))
    }
}

impl Neg for &FrobElement {
    type Output = FrobElement;
    fn neg(self) -> FrobElement {
        FrobElement(self.0.clone().map(|c| -c))
    }
}

impl Mul for &FrobElement {
    type Output = FrobElement;
    fn mul(self, o: &FrobElement) -> FrobElement {
        frob_mul(self, o)
    }
}

pub fn frob_mul(a: &FrobElement, b: &FrobElement) -> FrobElement {
    let mut c: [BigRational; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 - i {
            c[i + j] += &a.0[i] * &b.0[j];
        }
    }
    FrobElement(c)
}

pub fn frob_trace(a: &FrobElement) -> BigRational {
    -a.0[2].clone()
}

/// `Δ(a)` as coefficients of `X^i ⊗ X^j`, indexed `[i][j]`.
pub fn frob_comul(a: &FrobElement) -> [[BigRational; 3]; 3] {
    let mut t: [[BigRational; 3]; 3] = Default::default();
    for (k, c) in a.0.iter().enumerate() {
        for i in 0..3 {
            let j = 2 + k as i64 - i as i64;
            if (0..3).contains(&j) {
                t[i][j as usize] -= c;
            }
        }
    }
    t
}

/// `m(Δ(1)) = -3X²`.
pub fn handle_element() -> FrobElement {
    let d = frob_comul(&FrobElement::one());
    let mut acc = FrobElement::zero();
    for (i, row) in d.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            acc = &acc + &FrobElement::x_pow(i + j).scale(c);
        }
    }
    acc
}

/// The theta form on `X^d1 ⊗ X^d2 ⊗ X^d3`: `+1` on cyclic rotations of
/// `(0,1,2)`, `-1` on those of `(0,2,1)`, zero otherwise.
pub fn theta_value(d1: usize, d2: usize, d3: usize) -> i64 {
    match (d1, d2, d3) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub name: String,
    pub genus: usize,
    pub dots: usize,
    pub slots: usize,
}

/// Three `(facet index, slot)` legs in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularCircle {
    pub name: String,
    pub legs: [(usize, usize); 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PreFoam {
    pub facets: Vec<Facet>,
    pub singular: Vec<SingularCircle>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FoamError {
    #[error("slot {slot} of facet `{facet}` is not attached to a singular circle")]
    NotClosed { facet: String, slot: usize },
    #[error("malformed pre-foam: {0}")]
    Malformed(String),
}

/// A tensor over the listed legs, sparse in the exponent tuples.
#[derive(Clone, Debug)]
struct Blob {
    legs: Vec<(usize, usize)>,
    entries: HashMap<Vec<u8>, BigRational>,
}

impl Blob {
    fn product(&self, other: &Blob) -> Blob {
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        let mut entries = HashMap::new();
        for (ka, va) in &self.entries {
            for (kb, vb) in &other.entries {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                entries.insert(k, va * vb);
            }
        }
        Blob { legs, entries }
    }

    /// Contracts three of its legs with the theta form.
    fn contract(&self, legs: &[(usize, usize); 3]) -> Blob {
        let pos = legs.map(|l| self.legs.iter().position(|&x| x == l).unwrap());
        let keep: Vec<usize> = (0..self.legs.len()).filter(|i| !pos.contains(i)).collect();
        let mut entries: HashMap<Vec<u8>, BigRational> = HashMap::new();
        for (k, v) in &self.entries {
            let t = theta_value(k[pos[0]] as usize, k[pos[1]] as usize, k[pos[2]] as usize);
            if t == 0 {
                continue;
            }
            let key: Vec<u8> = keep.iter().map(|&i| k[i]).collect();
            let e = entries.entry(key).or_insert_with(BigRational::zero);
            *e += v * BigRational::from_integer(t.into());
        }
        entries.retain(|_, v| !v.is_zero());
        Blob {
            legs: keep.iter().map(|&i| self.legs[i]).collect(),
            entries,
        }
    }
}

impl PreFoam {
    /// Every slot attached exactly once, legs in range.
    pub fn check(&self) -> Result<(), FoamError> {
        let mut seen: Vec<Vec<bool>> = self.facets.iter().map(|f| vec![false; f.slots]).collect();
        for c in &self.singular {
            for &(f, s) in &c.legs {
                let facet = self
                    .facets
                    .get(f)
                    .ok_or_else(|| FoamError::Malformed(format!("circle `{}` names facet #{f}", c.name)))?;
                if s >= facet.slots {
                    return Err(FoamError::Malformed(format!(
                        "circle `{}` uses slot {s} of facet `{}` which has {} slots",
                        c.name, facet.name, facet.slots
                    )));
                }
                if std::mem::replace(&mut seen[f][s], true) {
                    return Err(FoamError::Malformed(format!(
                        "slot {s} of facet `{}` is attached twice",
                        facet.name
                    )));
                }
            }
        }
        for (f, slots) in seen.iter().enumerate() {
            if let Some(s) = slots.iter().position(|x| !x) {
                return Err(FoamError::NotClosed {
                    facet: self.facets[f].name.clone(),
                    slot: s,
                });
            }
        }
        Ok(())
    }

    /// `-2 χ`, with every dot counted as a puncture.
    pub fn degree(&self) -> i64 {
        let chi: i64 = self
            .facets
            .iter()
            .map(|f| 2 - 2 * f.genus as i64 - f.slots as i64 - f.dots as i64)
            .sum();
        -2 * chi
    }

    /// The facet's element `X^d · h^g`.
    fn element(f: &Facet) -> FrobElement {
        let h = handle_element();
        let mut x = FrobElement::x_pow(f.dots);
        for _ in 0..f.genus {
            x = &x * &h;
        }
        x
    }

    /// `Δ^(b-1)(x)`: the coefficient of `X^a1 ⊗ … ⊗ X^ab` is
    /// `(-1)^(b-1) x_k` with `a1 + … + ab = 2(b-1) + k`.
    fn facet_blob(index: usize, f: &Facet) -> Blob {
        let x = Self::element(f);
        let b = f.slots;
        let legs = (0..b).map(|s| (index, s)).collect();
        let mut entries = HashMap::new();
        let sign = if b % 2 == 1 { BigRational::one() } else { -BigRational::one() };
        let mut key = vec![0u8; b];
        loop {
            let sum: usize = key.iter().map(|&a| a as usize).sum();
            if let Some(k) = sum.checked_sub(2 * (b - 1)) {
                if k < 3 && !x.0[k].is_zero() {
                    entries.insert(key.clone(), &sign * &x.0[k]);
                }
            }
            // Next exponent tuple in base 3.
            let mut i = 0;
            while i < b && key[i] == 2 {
                key[i] = 0;
                i += 1;
            }
            if i == b {
                break;
            }
            key[i] += 1;
        }
        Blob { legs, entries }
    }

    /// Exact value, contracting singular circles in the given order.
    fn evaluate_in(&self, order: &[usize]) -> Result<BigRational, FoamError> {
        self.check()?;
        let mut scalar = BigRational::one();
        let mut blobs: Vec<Option<Blob>> = Vec::new();
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            if f.slots == 0 {
                scalar *= frob_trace(&Self::element(f));
            } else {
                for s in 0..f.slots {
                    owner.insert((i, s), blobs.len());
                }
                blobs.push(Some(Self::facet_blob(i, f)));
            }
        }
        for &c in order {
            let legs = self.singular[c].legs;
            let mut ids: Vec<usize> = legs.iter().map(|l| owner[l]).collect();
            ids.sort_unstable();
            ids.dedup();
            let mut merged = blobs[ids[0]].take().unwrap();
            for &id in &ids[1..] {
                merged = merged.product(&blobs[id].take().unwrap());
            }
            let merged = merged.contract(&legs);
            for l in &merged.legs {
                owner.insert(*l, ids[0]);
            }
            if merged.legs.is_empty() {
                scalar *= merged.entries.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero);
            } else {
                blobs[ids[0]] = Some(merged);
            }
            if scalar.is_zero() {
                return Ok(scalar);
            }
        }
        Ok(scalar)
    }

    pub fn evaluate(&self) -> Result<BigRational, FoamError> {
        let order: Vec<usize> = (0..self.singular.len()).collect();
        self.evaluate_in(&order)
    }

    /// Same value with singular circles contracted in another order.
    pub fn evaluate_with_order(&self, order: &[usize]) -> Result<BigRational, FoamError> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.singular.len()).collect::<Vec<_>>() {
            return Err(FoamError::Malformed("order is not a permutation of the singular circles".into()));
        }
        self.evaluate_in(order)
    }

    /// Disjoint union.
    pub fn union(&self, other: &PreFoam) -> PreFoam {
        let off = self.facets.len();
        let mut out = self.clone();
        out.facets.extend(other.facets.iter().cloned());
        out.singular.extend(other.singular.iter().map(|c| SingularCircle {
            name: c.name.clone(),
            legs: c.legs.map(|(f, s)| (f + off, s)),
        }));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sphere(genus: usize, dots: usize) -> PreFoam {
        PreFoam {
            facets: vec![Facet {
                name: "s".into(),
                genus,
                dots,
                slots: 0,
            }],
            singular: vec![],
        }
    }

    #[test]
    fn algebra() {
        assert_eq!(frob_trace(&FrobElement::x_pow(2)), r(-1));
        assert!(frob_mul(&FrobElement::x_pow(2), &FrobElement::x_pow(1)).is_zero());
        let d = frob_comul(&FrobElement::x_pow(2));
        assert_eq!(d[2][2], r(-1));
        assert_eq!(d.iter().flatten().filter(|c| !c.is_zero()).count(), 1);
        let h = handle_element();
        assert_eq!(h, FrobElement::x_pow(2).scale(&r(-3)));
        assert_eq!(frob_trace(&h), r(3));
        assert!((&h * &h).is_zero());
    }

    #[test]
    fn comultiplication_of_one() {
        let d = frob_comul(&FrobElement::one());
        assert_eq!(d[0][2], r(-1));
        assert_eq!(d[1][1], r(-1));
        assert_eq!(d[2][0], r(-1));
    }

    #[test]
    fn spheres_and_torus() {
        assert_eq!(sphere(0, 2).evaluate().unwrap(), r(-1));
        assert_eq!(sphere(0, 1).evaluate().unwrap(), r(0));
        assert_eq!(sphere(0, 0).evaluate().unwrap(), r(0));
        assert_eq!(sphere(1, 0).evaluate().unwrap(), r(3));
    }

    #[test]
    fn theta_foams() {
        for d in itertools::iproduct!(0..4, 0..4, 0..4) {
            let disk = |i: usize, dots| Facet {
                name: format!("d{i}"),
                genus: 0,
                dots,
                slots: 1,
            };
            let f = PreFoam {
                facets: vec![disk(0, d.0), disk(1, d.1), disk(2, d.2)],
                singular: vec![SingularCircle {
                    name: "s".into(),
                    legs: [(0, 0), (1, 0), (2, 0)],
                }],
            };
            assert_eq!(f.evaluate().unwrap(), r(theta_value(d.0, d.1, d.2)), "{d:?}");
        }
    }

    #[test]
    fn open_slot_is_not_closed() {
        let f = PreFoam {
            facets: vec![Facet {
                name: "a".into(),
                genus: 0,
                dots: 0,
                slots: 1,
            }],
            singular: vec![],
        };
        assert_eq!(
            f.evaluate(),
            Err(FoamError::NotClosed {
                facet: "a".into(),
                slot: 0
            })
        );
    }
}
