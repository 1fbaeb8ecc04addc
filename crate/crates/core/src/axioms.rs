//! Axiom labels and violation reports shared by every validator.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    M1,
    M2,
    M3,
    M4,
    M5,
    I1,
    I2,
    I3,
    I4,
    B1,
    B2,
    C1,
    C2,
    C3,
    CL1,
    CL2,
    CL3,
    CL4,
    G1,
    G2,
    R1,
    R2,
    R3,
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A failed axiom together with the offending elements, named by identifier.
///
/// The witness layout depends on the axiom; `detail` spells it out.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{axiom} violated at ({}): {detail}", .witness.join(", "))]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
    pub detail: String,
}

impl AxiomViolation {
    pub fn new(axiom: Axiom, witness: Vec<String>, detail: impl Into<String>) -> Self {
        Self {
            axiom,
            witness,
            detail: detail.into(),
        }
    }
}

/// Renders a set of identifiers as `{a,b}`.
pub fn set_name<S: AsRef<str>>(items: &[S]) -> String {
    let parts: Vec<&str> = items.iter().map(AsRef::as_ref).collect();
    format!("{{{}}}", parts.join(","))
}
