//! Computational toolkit for the maximal subgroups attached to substitutive
//! minimal subshifts.
//!
//! Starting from a substitution over a finite alphabet, the crate computes the
//! language of the generated subshift, return words of connections, the code
//! `X = b⁻¹R(ba)b` and the endomorphism it induces on the free group over `X`.
//! The resulting presentation `⟨X | Φ^ω(x) = x⟩` is then interrogated through
//! its finite quotients: a finite group `S` is an image exactly when the dual
//! map `f ↦ f̂∘Φ` on `S^X` has a generating periodic point.
//!
//! Modules follow the data flow:
//!
//! * [`words`]: alphabets, words, substitutions, languages and letter dynamics.
//! * [`codes`]: unique decodability, parsing, bounded-delay checks.
//! * [`returns`]: return words and the generator code of a connection.
//! * [`freegrp`]: free-group words, homomorphisms, Stallings graphs, abelianization.
//! * [`fingrp`]: explicit finite groups.
//! * [`images`]: the dual transformation and the finite-image decision procedure.
//! * [`pipeline`]: presentation builders.
//! * [`io`]: JSON file formats.
//! * [`reproduce`]: the reproduction table behind `subshift verify-paper`.

pub mod codes;
pub mod error;
pub mod fingrp;
pub mod freegrp;
pub mod images;
pub mod io;
pub mod limits;
pub mod omega;
pub mod pipeline;
pub mod reproduce;
pub mod returns;
pub mod words;

pub use error::{Error, Result};
pub use limits::Limits;
