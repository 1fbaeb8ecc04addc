//! Matroid schemes, geometric posets and their Tutte and characteristic
//! polynomials, with constructions from matroids, semimatroid quotients,
//! Dowling data and toric arrangements.

pub mod axioms;
pub mod cli;
pub mod constructions;
pub mod geometric;
pub mod io;
pub mod polynomial;
pub mod poset;
pub mod scheme;
pub mod toric;
pub mod tutte;
