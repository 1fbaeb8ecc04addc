use std::collections::HashMap;

use super::ConstructionError;
use crate::axioms::{set_name, Axiom, AxiomViolation};
use crate::poset::Poset;
use crate::scheme::MatroidScheme;

/// Default bound on the vertex count for the exhaustive S1–S5 check.
pub const DEFAULT_VERTEX_CAP: usize = 12;

/// A rank function on a simplicial complex whose vertices are the ground set.
/// Faces are bitmasks over the vertices, sorted by size and then by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semimatroid {
    vertices: Vec<String>,
    faces: Vec<u64>,
    rank: HashMap<u64, usize>,
}

fn positions(s: u64) -> Vec<usize> {
    (0..64).filter(|&i| s & (1 << i) != 0).collect()
}

impl Semimatroid {
    pub fn new(vertices: Vec<String>, faces: &[(Vec<usize>, usize)]) -> Result<Self, ConstructionError> {
        Self::with_cap(vertices, faces, DEFAULT_VERTEX_CAP)
    }

    /// Faces are vertex-index lists with their ranks; every face of the
    /// complex must be listed. Checks closure under subsets, then S1–S5.
    pub fn with_cap(vertices: Vec<String>, faces: &[(Vec<usize>, usize)], cap: usize) -> Result<Self, ConstructionError> {
        let n = vertices.len();
        if n > cap.min(63) {
            return Err(ConstructionError::VertexCap { vertices: n, cap: cap.min(63) });
        }
        let mut rank = HashMap::new();
        for (f, r) in faces {
            let mut mask = 0u64;
            for &v in f {
                if v >= n {
                    return Err(ConstructionError::Invalid(format!("vertex index {v} out of range")));
                }
                mask |= 1 << v;
            }
            if rank.insert(mask, *r).is_some_and(|old| old != *r) {
                return Err(ConstructionError::Invalid(format!("face listed twice with different ranks: {}", set_name(&names(&vertices, mask)))));
            }
        }
        let sm = Self::assemble(vertices, rank)?;
        sm.check_axioms()?;
        Ok(sm)
    }

    /// The down-closure of `facets` with rank given by `rank` on vertex lists.
    pub fn from_facets(
        vertices: Vec<String>,
        facets: &[Vec<usize>],
        rank: impl Fn(&[usize]) -> usize,
    ) -> Result<Self, ConstructionError> {
        let n = vertices.len();
        if n > DEFAULT_VERTEX_CAP {
            return Err(ConstructionError::VertexCap { vertices: n, cap: DEFAULT_VERTEX_CAP });
        }
        let mut table = HashMap::new();
        table.insert(0u64, rank(&[]));
        for f in facets {
            let mask: u64 = f.iter().fold(0, |m, &v| m | 1 << v);
            let mut sub = mask;
            loop {
                table.entry(sub).or_insert_with(|| rank(&positions(sub)));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        let sm = Self::assemble(vertices, table)?;
        sm.check_axioms()?;
        Ok(sm)
    }

    fn assemble(vertices: Vec<String>, rank: HashMap<u64, usize>) -> Result<Self, ConstructionError> {
        let n = vertices.len();
        if !rank.contains_key(&0) {
            return Err(ConstructionError::NotAComplex("the empty face is missing".into()));
        }
        for v in 0..n {
            if !rank.contains_key(&(1 << v)) {
                return Err(ConstructionError::NotAComplex(format!("vertex {} is not a face", vertices[v])));
            }
        }
        for &f in rank.keys() {
            for v in positions(f) {
                if !rank.contains_key(&(f & !(1 << v))) {
                    return Err(ConstructionError::NotAComplex(format!(
                        "{} is a face but {} is not",
                        set_name(&names(&vertices, f)),
                        set_name(&names(&vertices, f & !(1 << v)))
                    )));
                }
            }
        }
        let mut faces: Vec<u64> = rank.keys().copied().collect();
        faces.sort_by_key(|&f| (f.count_ones(), positions(f)));
        Ok(Self { vertices, faces, rank })
    }

    fn check_axioms(&self) -> Result<(), ConstructionError> {
        let nm = |f: u64| self.face_name(f);
        let r = |f: u64| self.rank[&f];
        for &x in &self.faces {
            if r(x) > x.count_ones() as usize {
                return Err(AxiomViolation::new(Axiom::S1, vec![nm(x)], "ρ(X) > |X|").into());
            }
        }
        for &x in &self.faces {
            for v in positions(x) {
                let y = x & !(1 << v);
                if r(y) > r(x) {
                    return Err(AxiomViolation::new(Axiom::S2, vec![nm(y), nm(x)], "ρ(X) > ρ(Y) for X ⊆ Y").into());
                }
            }
        }
        for &x in &self.faces {
            for &y in &self.faces {
                if let Some(&ru) = self.rank.get(&(x | y)) {
                    if r(x) + r(y) < ru + r(x & y) {
                        return Err(AxiomViolation::new(Axiom::S3, vec![nm(x), nm(y)], "ρ(X) + ρ(Y) < ρ(X∪Y) + ρ(X∩Y)").into());
                    }
                }
            }
        }
        for &x in &self.faces {
            for &y in &self.faces {
                if r(x) == r(x & y) && !self.rank.contains_key(&(x | y)) {
                    return Err(AxiomViolation::new(Axiom::S4, vec![nm(x), nm(y)], "ρ(X) = ρ(X∩Y) but X∪Y is not a face").into());
                }
            }
        }
        for &x in &self.faces {
            for &y in &self.faces {
                if r(x) < r(y) && !positions(y & !x).into_iter().any(|v| self.rank.contains_key(&(x | 1 << v))) {
                    return Err(AxiomViolation::new(Axiom::S5, vec![nm(x), nm(y)], "no y ∈ Y∖X with X+y a face").into());
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Faces as bitmasks, in canonical order.
    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn is_face(&self, f: u64) -> bool {
        self.rank.contains_key(&f)
    }

    pub fn rank_of(&self, f: u64) -> Option<usize> {
        self.rank.get(&f).copied()
    }

    pub fn face_name(&self, f: u64) -> String {
        set_name(&names(&self.vertices, f))
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
}

fn names(vertices: &[String], f: u64) -> Vec<&str> {
    positions(f).into_iter().map(|v| vertices[v].as_str()).collect()
}

/// The face poset with the same rank.
pub fn scheme_from_semimatroid(sm: &Semimatroid) -> MatroidScheme {
    let index: HashMap<u64, usize> = sm.faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut covers = Vec::new();
    for (i, &f) in sm.faces.iter().enumerate() {
        for v in 0..sm.vertices.len() {
            if f & (1 << v) == 0 {
                if let Some(&j) = index.get(&(f | 1 << v)) {
                    covers.push((i, j));
                }
            }
        }
    }
    let ids = sm.faces.iter().map(|&f| sm.face_name(f)).collect();
    let rho = sm.faces.iter().map(|&f| sm.rank[&f]).collect();
    let poset = Poset::from_indices(ids, &covers).expect("face poset");
    MatroidScheme::new(poset, rho).expect("a semimatroid is a matroid scheme")
}
