//! M1–M5 validation.
//!
//! Each axiom is first screened by a local argument that finds out whether
//! any violation exists; only then is the lexicographically first offending
//! tuple located by a plain scan, so witnesses are deterministic.

use fixedbitset::FixedBitSet;

use super::{MatroidScheme, SchemeError};
use crate::axioms::{Axiom, AxiomViolation};
use crate::poset::SimplicialPoset;

pub fn validate_scheme(sp: SimplicialPoset, rho: Vec<usize>) -> Result<MatroidScheme, SchemeError> {
    if rho.len() != sp.len() {
        return Err(SchemeError::LabelCount {
            expected: sp.len(),
            got: rho.len(),
        });
    }
    let m = MatroidScheme::from_parts_unchecked(sp, rho);
    match first_violation(&m) {
        Some(v) => Err(v.into()),
        None => Ok(m),
    }
}

/// The first M1–M5 violation of a possibly invalid scheme.
pub fn first_violation(m: &MatroidScheme) -> Option<AxiomViolation> {
    check_m1(m)
        .or_else(|| check_m2(m))
        .or_else(|| check_m3(m))
        .or_else(|| check_m4(m))
        .or_else(|| check_m5(m))
}

fn check_m1(m: &MatroidScheme) -> Option<AxiomViolation> {
    (0..m.len()).find(|&x| m.rho(x) > m.size(x)).map(|x| {
        AxiomViolation::new(
            Axiom::M1,
            m.names(&[x]),
            format!("ρ = {} exceeds |x| = {}", m.rho(x), m.size(x)),
        )
    })
}

fn check_m2(m: &MatroidScheme) -> Option<AxiomViolation> {
    let p = m.poset();
    for x in 0..m.len() {
        for y in p.up_set(x).ones() {
            if m.rho(x) > m.rho(y) {
                return Some(AxiomViolation::new(
                    Axiom::M2,
                    m.names(&[x, y]),
                    format!("x ≤ y but ρ(x) = {} > ρ(y) = {}", m.rho(x), m.rho(y)),
                ));
            }
        }
    }
    None
}

fn m3_holds_locally(m: &MatroidScheme) -> bool {
    let sp = m.simplicial();
    let p = m.poset();
    for u in 0..m.len() {
        let k = sp.size(u);
        assert!(k < 31, "element with {k} atoms is beyond desk scale");
        let local: Vec<usize> = sp.atoms_below(u).ones().collect();
        let mut elem = vec![usize::MAX; 1 << k];
        for y in p.down_set(u).ones() {
            let mut mask = 0usize;
            for (bit, &pos) in local.iter().enumerate() {
                if sp.atoms_below(y).contains(pos) {
                    mask |= 1 << bit;
                }
            }
            elem[mask] = y;
        }
        let full = (1usize << k) - 1;
        let top = m.rho(u);
        for xm in 0..=full {
            let rx = m.rho(elem[xm]);
            let comp = full ^ xm;
            // s runs over subsets of xm; y = comp | s covers the rest of u.
            let mut s = xm;
            loop {
                if rx + m.rho(elem[comp | s]) < top + m.rho(elem[s]) {
                    return false;
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & xm;
            }
        }
    }
    true
}

fn check_m3(m: &MatroidScheme) -> Option<AxiomViolation> {
    if m3_holds_locally(m) {
        return None;
    }
    let sp = m.simplicial();
    let p = m.poset();
    for x in 0..m.len() {
        for y in 0..m.len() {
            for u in p.join(x, y) {
                let mut common = sp.atoms_below(x).clone();
                common.intersect_with(sp.atoms_below(y));
                let meet = sp.element_below_with_atoms(u, &common).expect("meet inside P≤u");
                if m.rho(x) + m.rho(y) < m.rho(u) + m.rho(meet) {
                    return Some(AxiomViolation::new(
                        Axiom::M3,
                        m.names(&[x, y, u, meet]),
                        format!(
                            "ρ(x) + ρ(y) = {} < ρ(u) + ρ(x∧y) = {}",
                            m.rho(x) + m.rho(y),
                            m.rho(u) + m.rho(meet)
                        ),
                    ));
                }
            }
        }
    }
    unreachable!("local M3 screen and pairwise scan disagree")
}

/// Elements `y` sharing a lower bound `ℓ ≤ x` with `ρ(ℓ) = ρ(x)`.
fn m4_reach(m: &MatroidScheme, x: usize) -> FixedBitSet {
    let p = m.poset();
    let mut reach = FixedBitSet::with_capacity(m.len());
    for l in p.down_set(x).ones() {
        if m.rho(l) == m.rho(x) {
            reach.union_with(p.up_set(l));
        }
    }
    reach
}

fn check_m4(m: &MatroidScheme) -> Option<AxiomViolation> {
    let p = m.poset();
    for x in 0..m.len() {
        let reach = m4_reach(m, x);
        let joinable = m.joinable_with(x);
        if reach.is_subset(&joinable) {
            continue;
        }
        let y = reach.difference(&joinable).next().expect("nonempty difference");
        let l = p
            .meet(x, y)
            .into_iter()
            .find(|&l| m.rho(l) == m.rho(x))
            .expect("an equal-rank maximal lower bound");
        return Some(AxiomViolation::new(
            Axiom::M4,
            m.names(&[x, y, l]),
            format!("ℓ ∈ x∧y with ρ(ℓ) = ρ(x) = {}, but x∨y = ∅", m.rho(x)),
        ));
    }
    None
}

fn check_m5(m: &MatroidScheme) -> Option<AxiomViolation> {
    let sp = m.simplicial();
    for x in 0..m.len() {
        let exchange = m.joinable_atoms_outside(x, &m.joinable_with(x));
        for y in 0..m.len() {
            if m.rho(x) < m.rho(y) && sp.atoms_below(y).is_disjoint(&exchange) {
                return Some(AxiomViolation::new(
                    Axiom::M5,
                    m.names(&[x, y]),
                    format!(
                        "ρ(x) = {} < ρ(y) = {} but no atom a ≤ y, a ≰ x has x∨a ≠ ∅",
                        m.rho(x),
                        m.rho(y)
                    ),
                ));
            }
        }
    }
    None
}
