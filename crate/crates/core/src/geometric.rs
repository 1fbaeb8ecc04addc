//! Geometric posets and simple matroid schemes.

use std::collections::HashMap;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::axioms::{set_name, Axiom, AxiomViolation};
use crate::poset::{for_each_isomorphism, Poset, RankedPoset, SimplicialPoset};
use crate::scheme::{validate_scheme, MatroidScheme};

/// Default bound on `|at(P)|` for the exponential G2 sweep.
pub const DEFAULT_ATOM_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometricError {
    #[error(transparent)]
    Axiom(#[from] AxiomViolation),
    #[error("{atoms} atoms exceed the G2 sweep cap of {cap}")]
    AtomCap { atoms: usize, cap: usize },
    #[error("scheme is not simple: {0}")]
    NotSimple(String),
}

/// A ranked poset certified to satisfy G1 and G2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricPoset {
    ranked: RankedPoset,
}

impl GeometricPoset {
    pub fn ranked(&self) -> &RankedPoset {
        &self.ranked
    }

    pub fn poset(&self) -> &Poset {
        self.ranked.poset()
    }

    pub fn len(&self) -> usize {
        self.ranked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranked.is_empty()
    }

    pub fn into_ranked(self) -> RankedPoset {
        self.ranked
    }
}

pub fn validate_geometric(rp: RankedPoset) -> Result<GeometricPoset, GeometricError> {
    validate_geometric_with_cap(rp, DEFAULT_ATOM_CAP)
}

/// Atom positions below each element.
fn atom_sets(rp: &RankedPoset, atoms: &[usize]) -> Vec<FixedBitSet> {
    let p = rp.poset();
    (0..rp.len())
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(atoms.len());
            for (k, &a) in atoms.iter().enumerate() {
                if p.leq(a, x) {
                    s.insert(k);
                }
            }
            s
        })
        .collect()
}

fn for_each_combination(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            let stop = go(items, k, i + 1, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// G1 on each maximal down-set, then G2 over `x`, `y`, and rank-sized atom
/// sets `A` with `y ∈ ⋁A`, in declaration order. The G2 witness is
/// `[x, A, y]`.
pub fn validate_geometric_with_cap(rp: RankedPoset, cap: usize) -> Result<GeometricPoset, GeometricError> {
    let p = rp.poset();
    for m in p.maximal_elements() {
        let (interval, _) = rp.interval_below(m);
        if let Err(defect) = interval.is_geometric_lattice() {
            return Err(AxiomViolation::new(Axiom::G1, vec![p.id(m).to_string()], defect.to_string()).into());
        }
    }

    let atoms = rp.atoms();
    if atoms.len() > cap {
        return Err(GeometricError::AtomCap {
            atoms: atoms.len(),
            cap,
        });
    }
    let below = atom_sets(&rp, &atoms);
    let n = rp.len();

    // spanning[y]: atom sets A with |A| = ρ(y) and y ∈ ⋁A
    let spanning: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|y| {
            let r = rp.rank(y);
            let under: Vec<usize> = below[y].ones().collect();
            let mut out = Vec::new();
            for_each_combination(&under, r, &mut |a| {
                let minimal = p.lower_covers(y).iter().all(|&z| !a.iter().all(|&k| below[z].contains(k)));
                if minimal {
                    out.push(a.to_vec());
                }
                false
            });
            out
        })
        .collect();

    for x in 0..n {
        let mut joinable = FixedBitSet::with_capacity(atoms.len());
        for m in p.up_set(x).ones() {
            if p.upper_covers(m).is_empty() {
                joinable.union_with(&below[m]);
            }
        }
        joinable.difference_with(&below[x]);
        for y in 0..n {
            if rp.rank(x) >= rp.rank(y) {
                continue;
            }
            for a in &spanning[y] {
                if !a.iter().any(|&k| joinable.contains(k)) {
                    let names: Vec<&str> = a.iter().map(|&k| p.id(atoms[k])).collect();
                    return Err(AxiomViolation::new(
                        Axiom::G2,
                        vec![p.id(x).to_string(), set_name(&names), p.id(y).to_string()],
                        "no a ∈ A with a ≰ x and a∨x ≠ ∅",
                    )
                    .into());
                }
            }
        }
    }
    Ok(GeometricPoset { ranked: rp })
}

/// The simple scheme on `{(I, x) : I ⊆ at(P), x ∈ ⋁I}` with
/// `ρ(I, x) = rank(x)`. Identifiers are `"(i1,i2|x)"`.
pub fn scheme_from_geometric(gp: &GeometricPoset) -> MatroidScheme {
    let rp = gp.ranked();
    let p = rp.poset();
    let atoms = rp.atoms();
    let below = atom_sets(rp, &atoms);
    let n = rp.len();

    let mut elements: Vec<(FixedBitSet, usize)> = Vec::new();
    for x in 0..n {
        let under: Vec<usize> = below[x].ones().collect();
        for k in 0..=under.len() {
            for_each_combination(&under, k, &mut |a| {
                let minimal = p.lower_covers(x).iter().all(|&z| !a.iter().all(|&i| below[z].contains(i)));
                if minimal {
                    let mut s = FixedBitSet::with_capacity(atoms.len());
                    s.extend(a.iter().copied());
                    elements.push((s, x));
                }
                false
            });
        }
    }
    elements.sort_by(|(s, x), (t, y)| {
        let (ks, kt) = (s.count_ones(..), t.count_ones(..));
        (ks, *x, s.ones().collect::<Vec<_>>()).cmp(&(kt, *y, t.ones().collect::<Vec<_>>()))
    });
    let index: HashMap<(FixedBitSet, usize), usize> =
        elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

    let mut covers = Vec::new();
    for (i, (s, y)) in elements.iter().enumerate() {
        for k in s.ones() {
            let mut t = s.clone();
            t.set(k, false);
            // the unique join of t inside the lattice P≤y
            let z = p
                .down_set(*y)
                .ones()
                .filter(|&z| t.is_subset(&below[z]))
                .min_by_key(|&z| rp.rank(z))
                .expect("y bounds t");
            covers.push((index[&(t, z)], i));
        }
    }
    let ids: Vec<String> = elements
        .iter()
        .map(|(s, x)| {
            let names: Vec<&str> = s.ones().map(|k| p.id(atoms[k])).collect();
            format!("({}|{})", names.join(","), p.id(*x))
        })
        .collect();
    let rho: Vec<usize> = elements.iter().map(|&(_, x)| rp.rank(x)).collect();
    let poset = Poset::from_indices(ids, &covers).expect("pair poset is a Hasse diagram");
    let sp = SimplicialPoset::new(RankedPoset::new(poset).expect("pair poset is ranked"))
        .expect("pair poset is simplicial");
    let m = validate_scheme(sp, rho).expect("a geometric poset yields a matroid scheme");
    assert!(m.is_simple(), "the pair scheme is simple");

    let embed: Vec<usize> = (0..n).map(|x| index[&(below[x].clone(), x)]).collect();
    let mut flats = m.flat_elements();
    let mut image = embed.clone();
    flats.sort_unstable();
    image.sort_unstable();
    assert_eq!(flats, image, "flats are exactly the elements (at(P)≤x, x)");
    for x in 0..n {
        for y in 0..n {
            assert_eq!(p.leq(x, y), m.leq(embed[x], embed[y]));
        }
    }
    m
}

/// The element `(at(P)≤x, x)` of [`scheme_from_geometric`], the flat that
/// stands for `x`.
pub fn flat_element(gp: &GeometricPoset, m: &MatroidScheme, x: usize) -> usize {
    let rp = gp.ranked();
    let p = rp.poset();
    let names: Vec<&str> = rp.atoms().into_iter().filter(|&a| p.leq(a, x)).map(|a| p.id(a)).collect();
    m.require(&format!("({}|{})", names.join(","), p.id(x)))
        .expect("scheme built from this poset")
}

/// The unique simple scheme with the same flats as `m`.
pub fn simplification(m: &MatroidScheme) -> MatroidScheme {
    let gp = validate_geometric_with_cap(m.flats(), usize::MAX).expect("flats of a scheme are geometric");
    scheme_from_geometric(&gp)
}

/// Lifts an isomorphism `φ: F(m1) → F(m2)` of flats posets (indices into
/// the flats posets) to `ψ: S1 → S2`, sending `x` to the unique element of
/// `⋁{φ(a) : a ≤ x}` below `φ(cl(x))`. Returns `None` if the lift is not a
/// `ρ`-preserving isomorphism.
pub fn lift_flats_isomorphism(m1: &MatroidScheme, m2: &MatroidScheme, phi: &[usize]) -> Option<Vec<usize>> {
    let (_, kept1) = m1.flats_with_map();
    let (_, kept2) = m2.flats_with_map();
    let pos1: HashMap<usize, usize> = kept1.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let to2 = |x: usize| kept2[phi[pos1[&x]]];
    let sp2 = m2.simplicial();
    let n = m1.len();
    let mut psi = Vec::with_capacity(n);
    for x in 0..n {
        let mut target = FixedBitSet::with_capacity(sp2.atoms().len());
        for k in m1.simplicial().atoms_below(x).ones() {
            let b = to2(m1.atoms()[k]);
            target.insert(sp2.atom_position(b)?);
        }
        psi.push(sp2.element_below_with_atoms(to2(m1.closure(x)), &target)?);
    }
    if n != m2.len() {
        return None;
    }
    let mut seen = FixedBitSet::with_capacity(n);
    for &y in &psi {
        if seen.put(y) {
            return None;
        }
    }
    for x in 0..n {
        if m1.rho(x) != m2.rho(psi[x]) {
            return None;
        }
        for y in 0..n {
            if m1.leq(x, y) != m2.leq(psi[x], psi[y]) {
                return None;
            }
        }
    }
    Some(psi)
}

/// For simple `m1`, `m2`: a `ρ`-preserving isomorphism lifted from some
/// isomorphism of their flats posets, or `None` if those differ.
pub fn check_uniqueness(m1: &MatroidScheme, m2: &MatroidScheme) -> Result<Option<Vec<usize>>, GeometricError> {
    for m in [m1, m2] {
        if let Some(&a) = m.atoms().iter().find(|&&a| !m.is_flat(a) || m.is_loop(a)) {
            return Err(GeometricError::NotSimple(m.id(a).to_string()));
        }
    }
    let (f1, f2) = (m1.flats(), m2.flats());
    let mut found = None;
    for_each_isomorphism(&f1, &f2, None, |phi| match lift_flats_isomorphism(m1, m2, phi) {
        Some(psi) => {
            found = Some(psi);
            ControlFlow::Break(())
        }
        None => ControlFlow::Continue(()),
    });
    Ok(found)
}
