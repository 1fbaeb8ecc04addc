//! The independence cryptomorphism: I1–I4 and the rank it induces.

use fixedbitset::FixedBitSet;

use super::{validate_scheme, MatroidScheme, SchemeError};
use crate::axioms::{Axiom, AxiomViolation};
use crate::poset::SimplicialPoset;

fn names(sp: &SimplicialPoset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| sp.poset().id(x).to_string()).collect()
}

/// Maximal members of `ind` below `x`.
fn max_independent_below(sp: &SimplicialPoset, ind: &FixedBitSet, x: usize) -> Vec<usize> {
    let p = sp.poset();
    p.down_set(x)
        .ones()
        .filter(|&z| ind.contains(z))
        .filter(|&z| {
            p.upper_covers(z)
                .iter()
                .all(|&w| !(ind.contains(w) && p.leq(w, x)))
        })
        .collect()
}

/// Checks I1–I4 for a candidate independence poset `ind` (element positions).
pub fn validate_independence(sp: &SimplicialPoset, ind: &[usize]) -> Result<(), AxiomViolation> {
    let p = sp.poset();
    let n = sp.len();
    let mut set = FixedBitSet::with_capacity(n);
    for &x in ind {
        set.insert(x);
    }
    if set.is_clear() {
        return Err(AxiomViolation::new(Axiom::I1, vec![], "I is empty"));
    }
    for x in 0..n {
        for y in p.up_set(x).ones() {
            if set.contains(y) && !set.contains(x) {
                return Err(AxiomViolation::new(
                    Axiom::I2,
                    names(sp, &[x, y]),
                    "x ≤ y ∈ I but x ∉ I",
                ));
            }
        }
    }

    // Atoms a ≰ x whose join with x is a nonempty subset of I.
    let exchange: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut k = FixedBitSet::with_capacity(sp.atoms().len());
            for (pos, &a) in sp.atoms().iter().enumerate() {
                if p.leq(a, x) {
                    continue;
                }
                let joins = p.join(a, x);
                if !joins.is_empty() && joins.iter().all(|&u| set.contains(u)) {
                    k.insert(pos);
                }
            }
            k
        })
        .collect();
    for x in set.ones() {
        for y in set.ones() {
            if sp.size(x) < sp.size(y) && sp.atoms_below(y).is_disjoint(&exchange[x]) {
                return Err(AxiomViolation::new(
                    Axiom::I3,
                    names(sp, &[x, y]),
                    "no atom a ≤ y, a ≰ x with a∨x a nonempty subset of I",
                ));
            }
        }
    }

    for x in 0..n {
        let maxima = max_independent_below(sp, &set, x);
        let mut reach = FixedBitSet::with_capacity(n);
        for &z in &maxima {
            reach.union_with(p.up_set(z));
        }
        let mut joinable = FixedBitSet::with_capacity(n);
        for m in p.up_set(x).ones() {
            if p.upper_covers(m).is_empty() {
                joinable.union_with(p.down_set(m));
            }
        }
        if let Some(y) = reach.difference(&joinable).next() {
            let z = *maxima.iter().find(|&&z| p.leq(z, y)).expect("some maximum below y");
            return Err(AxiomViolation::new(
                Axiom::I4,
                names(sp, &[x, y, z]),
                "z ∈ max I≤x with z ≤ y, but x∨y = ∅",
            ));
        }
    }
    Ok(())
}

/// Builds `ρ(x) = max{|z| : z ∈ I, z ≤ x}` after checking I1–I4.
pub fn scheme_from_independence(sp: SimplicialPoset, ind: &[usize]) -> Result<MatroidScheme, SchemeError> {
    validate_independence(&sp, ind)?;
    let mut set = FixedBitSet::with_capacity(sp.len());
    for &x in ind {
        set.insert(x);
    }
    let rho: Vec<usize> = (0..sp.len())
        .map(|x| {
            sp.poset()
                .down_set(x)
                .ones()
                .filter(|&z| set.contains(z))
                .map(|z| sp.size(z))
                .max()
                .expect("0̂ is independent")
        })
        .collect();
    let m = validate_scheme(sp, rho)?;
    let mut expected: Vec<usize> = set.ones().collect();
    expected.sort_unstable();
    assert_eq!(m.independents(), expected, "independence poset is reproduced");
    Ok(m)
}
