//! Skein calculus for sl3 webs: the Kuperberg bracket as a rewriting
//! system, classification of ε-webs, enumeration of non-elliptic webs,
//! indecomposability certificates and closed pre-foam evaluation.

pub mod certify;
pub mod classify;
pub mod enumerate;
pub mod fixtures;
pub mod foam;
pub mod laurent;
pub mod random;
pub mod sign;
pub mod skein;
pub mod web;

pub use laurent::LaurentPoly;
pub use sign::{Sign, SignSequence};
pub use skein::{kuperberg_bracket, SkeinElement};
pub use web::{glue, RawWeb, Web, WebError};
