//! Exact Laurent polynomials in one variable `q` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("quantum integer [{0}] is only defined for n >= 1")]
    NonPositiveQuantumInt(i64),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Degree of a Laurent polynomial. The zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A Laurent polynomial `sum a_i q^i` with integer coefficients.
///
/// Stored densely: `coeffs[k]` is the coefficient of `q^(low + k)`. The first
/// and last stored coefficients are nonzero, so equal polynomials have equal
/// representations. The zero polynomial is the empty vector with `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_dense(exp, vec![c.into()])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            low: low + lead as i64,
            coeffs,
        }
    }

    /// The quantum integer `[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
    pub fn quantum_int(n: i64) -> Result<Self, LaurentError> {
        if n < 1 {
            return Err(LaurentError::NonPositiveQuantumInt(n));
        }
        let mut coeffs = vec![BigInt::zero(); (2 * n - 1) as usize];
        for k in (0..coeffs.len()).step_by(2) {
            coeffs[k] = BigInt::one();
        }
        Ok(Self::from_dense(1 - n, coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Degree {
        if self.is_zero() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `coefficient(i) == coefficient(-i)` for every `i`.
    pub fn is_symmetric(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let hi = self.low + self.coeffs.len() as i64 - 1;
        self.low == -hi && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn is_monic_symmetric(&self) -> bool {
        self.is_symmetric() && !self.is_zero() && self.leading_coefficient().is_one()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.low + k as i64, c))
    }

    /// Value at an integer point `q = x` (`x != 0` unless the polynomial has
    /// no negative exponents).
    pub fn eval_integer(&self, x: i64) -> Option<num_rational::BigRational> {
        use num_rational::BigRational;
        if x == 0 && self.low < 0 {
            return None;
        }
        let x = BigRational::from_integer(BigInt::from(x));
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                num_traits::pow::pow(x.clone(), e as usize)
            } else {
                num_traits::pow::pow(x.clone(), (-e) as usize).recip()
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        Some(acc)
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let var = match e {
                0 => None,
                1 => Some("q".to_string()),
                e => Some(format!("q^{e}")),
            };
            match var {
                None => write!(f, "{mag}")?,
                Some(v) if mag.is_one() => f.write_str(&v)?,
                Some(v) => write!(f, "{mag}*{v}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Parses the rendering produced by `Display`, e.g. `2*q^3 - q + 1 + q^-2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| LaurentError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        // Split into signed terms; a '-' right after '^' belongs to the exponent.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if prev.is_some() {
                    return Err(err("dangling sign"));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(err("dangling sign"));
        }
        terms.push((neg, cur));

        let mut parsed = Vec::with_capacity(terms.len());
        for (neg, term) in terms {
            let (coef, exp) = if let Some(qpos) = term.find('q') {
                let (head, tail) = term.split_at(qpos);
                let coef: BigInt = match head {
                    "" => BigInt::one(),
                    h => h
                        .strip_suffix('*')
                        .ok_or_else(|| err("expected '*' between coefficient and q"))?
                        .parse()
                        .map_err(|_| err("bad coefficient"))?,
                };
                let exp = match &tail[1..] {
                    "" => 1,
                    t => t
                        .strip_prefix('^')
                        .ok_or_else(|| err("expected '^' after q"))?
                        .parse::<i64>()
                        .map_err(|_| err("bad exponent"))?,
                };
                (coef, exp)
            } else {
                (term.parse::<BigInt>().map_err(|_| err("bad constant"))?, 0)
            };
            parsed.push((exp, if neg { -coef } else { coef }));
        }
        Ok(Self::from_terms(parsed))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let hi = (self.low + self.coeffs.len() as i64).max(rhs.low + rhs.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - low) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::from_dense(low, coeffs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms().rev() {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
