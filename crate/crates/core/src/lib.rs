//! Track categories and their classification by non-abelian cohomology.
//!
//! A track category is a category enriched in groupoids. Given an
//! identity-on-objects, full quotient functor `π: K → C` and a centralised
//! natural system of groups `G` on `K`, the equivalence classes of track
//! categories with underlying category `K`, homotopy category `C` and
//! automorphism system `G` are in bijection with the classes of cocycle
//! triples `(ξ, χ, φ)` modulo coboundaries. This crate implements both
//! sides on finite data, both directions of the bijection, and exhaustive
//! classification for small inputs.
//!
//! Modules:
//! - [`fingroup`]: finite groups given by Cayley tables, homomorphisms.
//! - [`fincat`]: finite categories, quotient functors, factorization categories.
//! - [`natsys`]: natural systems of groups and the centralised condition.
//! - [`track`]: track categories, the axioms TR1–TR9, `Aut^T`, `(π,G)`-tracks.
//! - [`cohomology`]: cocycle triples, coboundaries, classification and the
//!   bijection with track categories.
//! - [`io`]: the canonical JSON file formats.

pub mod cohomology;
pub mod fincat;
pub mod fingroup;
pub mod fixtures;
pub mod io;
pub mod natsys;
pub mod report;
pub mod track;
mod union_find;

pub use cohomology::{
    apply_coboundary, are_cohomologous, build_track, choose_tracks, classify, extract_cocycle,
    pullback_phi, pushforward_phi, validate_cocycle, Budget, ClassificationResult, Coboundary,
    CocycleTriple, PreTrack, SearchStats, TrackChoice,
};
pub use fincat::{FiniteCategory, Mor, Obj, QuotientFunctor};
pub use fingroup::{Elem, FiniteGroup, GroupHom};
pub use natsys::NaturalSystem;
pub use report::{ValidationReport, Violation};
pub use track::{PiGTrack, TrackCategory, TrackFunctorWitness};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Tables are missing, mis-sized, mistyped or reference unknown ids.
    #[error("structural error: {0}")]
    Structural(String),
    /// The input violates a law that the operation requires as a precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
