//! Boundary signs and sign sequences.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid sign {found:?} at position {position}; expected '+' or '-'")]
pub struct SignParseError {
    pub position: usize,
    pub found: char,
}

/// An ordered list of boundary signs, read left to right along the border line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequence(Vec<Sign>);

impl SignSequence {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    /// Sum of signs as +1/-1 is divisible by 3.
    pub fn is_admissible(&self) -> bool {
        self.0.iter().map(|s| s.value()).sum::<i64>().rem_euclid(3) == 0
    }

    /// The boundary of the mirror image: order reversed, every sign flipped.
    pub fn mirrored(&self) -> Self {
        Self(self.0.iter().rev().map(|s| s.flip()).collect())
    }

    /// Every admissible sequence of length at most `max_len`, shortest first,
    /// lexicographic within a length (`+` before `-`).
    pub fn all_admissible(max_len: usize) -> Vec<SignSequence> {
        let mut out = Vec::new();
        for len in 0..=max_len {
            for mask in 0..(1u64 << len) {
                let signs = (0..len)
                    .map(|i| {
                        if mask >> (len - 1 - i) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect();
                let seq = SignSequence(signs);
                if seq.is_admissible() {
                    out.push(seq);
                }
            }
        }
        out
    }
}

impl From<Vec<Sign>> for SignSequence {
    fn from(v: Vec<Sign>) -> Self {
        Self(v)
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SignSequence {
    type Err = SignParseError;

    /// Parses a string over `+`/`-`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .enumerate()
            .map(|(position, c)| Sign::from_symbol(c).ok_or(SignParseError { position, found: c }))
            .collect::<Result<Vec<_>, _>>()
            .map(SignSequence)
    }
}

impl Serialize for SignSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
