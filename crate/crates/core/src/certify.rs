//! Certificates read off the bracket of a glued pair.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{is_non_elliptic, is_superficial};
use crate::enumerate::{default_budget, enumerate_superficial_non_elliptic, EnumerateError};
use crate::laurent::{Degree, LaurentPoly};
use crate::sign::SignSequence;
use crate::skein::{kuperberg_bracket, SkeinError};
use crate::web::{glue, Web, WebError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Indecomposable,
    NotIsomorphic,
    Nice,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Indecomposable => "INDECOMPOSABLE",
            Verdict::NotIsomorphic => "NOT_ISOMORPHIC",
            Verdict::Nice => "NICE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("web {index} is not non-elliptic")]
    NotNonElliptic { index: usize },
    #[error("web {index} is not superficial")]
    NotSuperficial { index: usize },
    #[error("the two webs are identical")]
    IdenticalWebs,
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// Which decision rule a certificate applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    Indecomposable,
    NotIsomorphic,
    Nice,
}

/// A verdict together with the bracket it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub question: Question,
    pub verdict: Verdict,
    pub subjects: Vec<Web>,
    /// `⟨mirror(w1) w2⟩`.
    pub witness: LaurentPoly,
    pub boundary_length: usize,
}

impl Certificate {
    /// Recomputes the witness from the subjects and re-applies the rule.
    pub fn recheck(&self) -> bool {
        let (w1, w2) = match self.subjects.as_slice() {
            [w] => (w, w),
            [a, b] => (a, b),
            _ => return false,
        };
        let Ok(witness) = witness(w1, w2) else {
            return false;
        };
        witness == self.witness && decide(self.question, w1.is_isomorphic(w2), &witness, self.boundary_length) == self.verdict
    }
}

fn decide(question: Question, same: bool, p: &LaurentPoly, l: usize) -> Verdict {
    let top = p.is_monic_symmetric() && p.degree() == Degree::Finite(l as i64);
    let low = p.degree() < Degree::Finite(l as i64);
    match question {
        Question::Indecomposable if top => Verdict::Indecomposable,
        Question::NotIsomorphic if low => Verdict::NotIsomorphic,
        Question::Nice if (same && top) || (!same && low) => Verdict::Nice,
        _ => Verdict::Inconclusive,
    }
}

fn witness(w1: &Web, w2: &Web) -> Result<LaurentPoly, CertifyError> {
    Ok(kuperberg_bracket(&glue(w1, w2)?)?)
}

fn require_non_elliptic(ws: &[&Web]) -> Result<(), CertifyError> {
    for (index, w) in ws.iter().enumerate() {
        if !is_non_elliptic(w) {
            return Err(CertifyError::NotNonElliptic { index });
        }
    }
    Ok(())
}

fn same_boundary(w1: &Web, w2: &Web) -> Result<(), CertifyError> {
    if w1.boundary() != w2.boundary() {
        return Err(WebError::BoundaryMismatch {
            left: w1.boundary().clone(),
            right: w2.boundary().clone(),
        }
        .into());
    }
    Ok(())
}

/// INDECOMPOSABLE when `⟨mirror(w) w⟩` is monic of degree `l`; never claims
/// the converse.
pub fn certify_indecomposable(w: &Web) -> Result<Certificate, CertifyError> {
    require_non_elliptic(&[w])?;
    let witness = witness(w, w)?;
    let l = w.boundary().len();
    Ok(Certificate {
        question: Question::Indecomposable,
        verdict: decide(Question::Indecomposable, true, &witness, l),
        subjects: vec![w.clone()],
        witness,
        boundary_length: l,
    })
}

/// NOT_ISOMORPHIC when `⟨mirror(w1) w2⟩` has degree below `l`.
pub fn certify_not_isomorphic(w1: &Web, w2: &Web) -> Result<Certificate, CertifyError> {
    same_boundary(w1, w2)?;
    require_non_elliptic(&[w1, w2])?;
    if w1.is_isomorphic(w2) {
        return Err(CertifyError::IdenticalWebs);
    }
    let witness = witness(w1, w2)?;
    let l = w1.boundary().len();
    Ok(Certificate {
        question: Question::NotIsomorphic,
        verdict: decide(Question::NotIsomorphic, false, &witness, l),
        subjects: vec![w1.clone(), w2.clone()],
        witness,
        boundary_length: l,
    })
}

/// Equal webs must give a monic bracket of degree `l`, distinct ones a
/// bracket of smaller degree.
pub fn is_nice(w1: &Web, w2: &Web) -> Result<(bool, Certificate), CertifyError> {
    same_boundary(w1, w2)?;
    require_non_elliptic(&[w1, w2])?;
    for (index, w) in [w1, w2].into_iter().enumerate() {
        if !is_superficial(w) {
            return Err(CertifyError::NotSuperficial { index });
        }
    }
    let witness = witness(w1, w2)?;
    let l = w1.boundary().len();
    let verdict = decide(Question::Nice, w1.is_isomorphic(w2), &witness, l);
    Ok((
        verdict == Verdict::Nice,
        Certificate {
            question: Question::Nice,
            verdict,
            subjects: vec![w1.clone(), w2.clone()],
            witness,
            boundary_length: l,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub boundary: SignSequence,
    pub webs: usize,
    pub pairs: usize,
    pub nice: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub boundary: SignSequence,
    pub left: usize,
    pub right: usize,
    pub witness: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyLemmaReport {
    pub max_len: usize,
    pub boundaries: Vec<BoundaryReport>,
    pub pairs: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl KeyLemmaReport {
    pub fn all_nice(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks every ordered pair of superficial non-elliptic webs on every
/// admissible boundary of length at most `max_len`. `budget` overrides the
/// default vertex budget.
pub fn verify_key_lemma(max_len: usize, budget: Option<usize>) -> Result<KeyLemmaReport, CertifyError> {
    let mut boundaries = Vec::new();
    let mut counterexamples = Vec::new();
    for eps in SignSequence::all_admissible(max_len) {
        let b = budget.unwrap_or_else(|| default_budget(&eps));
        let webs = enumerate_superficial_non_elliptic(&eps, b)?;
        let pairs: Vec<(usize, usize)> = (0..webs.len())
            .flat_map(|i| (0..webs.len()).map(move |j| (i, j)))
            .collect();
        let results: Vec<Result<(usize, usize, bool, LaurentPoly), CertifyError>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (ok, cert) = is_nice(&webs[i], &webs[j])?;
                Ok((i, j, ok, cert.witness))
            })
            .collect();
        let mut nice = 0;
        for r in results {
            let (i, j, ok, witness) = r?;
            if ok {
                nice += 1;
            } else {
                counterexamples.push(Counterexample {
                    boundary: eps.clone(),
                    left: i,
                    right: j,
                    witness,
                });
            }
        }
        boundaries.push(BoundaryReport {
            boundary: eps,
            webs: webs.len(),
            pairs: pairs.len(),
            nice,
        });
    }
    let pairs = boundaries.iter().map(|b| b.pairs).sum();
    Ok(KeyLemmaReport {
        max_len,
        boundaries,
        pairs,
        counterexamples,
    })
}
