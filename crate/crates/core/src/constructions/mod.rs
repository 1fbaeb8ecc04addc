//! Sources of matroid schemes: matroids, semimatroids, quotients of
//! semimatroids by translative group actions, and Dowling posets.

mod dowling;
mod group;
mod matroid;
mod quotient;
mod semimatroid;

pub use dowling::{dowling_poset, dowling_poset_with_cap, DowlingElement, DEFAULT_DOWLING_CAP};
pub use group::{FiniteGroup, GroupAction};
pub use matroid::{linear_matroid, scheme_from_matroid, uniform_matroid, Matroid};
pub use quotient::{quotient_scheme, verify_quotient_identities, Quotient};
pub use semimatroid::{scheme_from_semimatroid, Semimatroid, DEFAULT_VERTEX_CAP};

use crate::axioms::AxiomViolation;
use crate::geometric::GeometricError;
use crate::scheme::SchemeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Axiom(#[from] AxiomViolation),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Geometric(#[from] GeometricError),
    #[error("invalid group: {0}")]
    Group(String),
    #[error("invalid action: {0}")]
    Action(String),
    #[error("not a simplicial complex: {0}")]
    NotAComplex(String),
    #[error("{vertices} vertices exceed the cap of {cap}")]
    VertexCap { vertices: usize, cap: usize },
    #[error("{size} elements exceed the cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("{element} moves face {face} off the complex")]
    NotComplexInvariant { element: String, face: String },
    #[error("{element} changes the rank of face {face}")]
    NotRankInvariant { element: String, face: String },
    #[error("not translative: {{{vertex}, {element}·{vertex}}} is a face")]
    NotTranslative { vertex: String, element: String },
    #[error("{0}")]
    Invalid(String),
}
