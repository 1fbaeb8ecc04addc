//! Toric arrangements in the circle group with rational phases: layers,
//! the poset of layers, and deletion, restriction and localization.
//!
//! A point of the torus is a homomorphism `φ: ℤⁿ → ℚ/ℤ`. A character
//! `(α, t)` cuts out `H_{α,t} = {φ : φ(α) = t}`. A layer is stored as a
//! saturated lattice `Λ` (row HNF) with the values of `φ` on its basis,
//! and denotes `{φ : φ|Λ = ψ}`, which is connected.

pub mod lattice;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;

use crate::constructions::{linear_matroid, ConstructionError, Matroid};
use crate::geometric::{flat_element, scheme_from_geometric, simplification, validate_geometric, GeometricError, GeometricPoset};
use crate::poset::{find_isomorphism, Poset, RankedPoset};
use crate::scheme::{find_scheme_isomorphism, MatroidScheme, SchemeError};
use lattice::{gcd_all, hnf, saturate, snf, solve_in_basis, Matrix};

/// Default bound on the number of layers.
pub const DEFAULT_LAYER_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("character {0} has α = 0")]
    ZeroCharacter(String),
    #[error("character {0} is not primitive")]
    NotPrimitive(String),
    #[error("characters {0} and {1} define the same hypertorus")]
    Duplicate(String, String),
    #[error("character {0} is not in the arrangement")]
    NotInArrangement(String),
    #[error("{0} is not a layer of the arrangement")]
    NotALayer(String),
    #[error("invalid layer: {0}")]
    InvalidLayer(String),
    #[error("{layers} layers exceed the cap of {cap}")]
    LayerCap { layers: usize, cap: usize },
    #[error(transparent)]
    Geometric(#[from] GeometricError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// `r mod 1`, in `[0, 1)`.
pub fn frac(r: Rational64) -> Rational64 {
    r - r.floor()
}

fn dot(alpha: &[i64], phi: &[Rational64]) -> Rational64 {
    alpha.iter().zip(phi).map(|(&a, &p)| p * a).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub name: String,
    pub alpha: Vec<i64>,
    /// In `[0, 1)`.
    pub phase: Rational64,
}

impl Character {
    /// Reduces the phase mod 1; rejects `α = 0` and non-primitive `α`.
    pub fn new(name: impl Into<String>, alpha: Vec<i64>, phase: Rational64) -> Result<Self, ToricError> {
        let name = name.into();
        if alpha.iter().all(|&a| a == 0) {
            return Err(ToricError::ZeroCharacter(name));
        }
        if gcd_all(&alpha) != 1 {
            return Err(ToricError::NotPrimitive(name));
        }
        Ok(Self {
            name,
            alpha,
            phase: frac(phase),
        })
    }

    /// `(α, t)` or `(−α, −t)`, whichever has a positive leading entry.
    pub fn key(&self) -> (Vec<i64>, Rational64) {
        let lead = *self.alpha.iter().find(|&&a| a != 0).expect("nonzero");
        if lead > 0 {
            (self.alpha.clone(), self.phase)
        } else {
            (self.alpha.iter().map(|a| -a).collect(), frac(-self.phase))
        }
    }

    pub fn contains_point(&self, phi: &[Rational64]) -> bool {
        frac(dot(&self.alpha, phi)) == self.phase
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricArrangement {
    n: usize,
    characters: Vec<Character>,
}

impl ToricArrangement {
    pub fn new(n: usize, characters: Vec<Character>) -> Result<Self, ToricError> {
        let mut seen: HashMap<(Vec<i64>, Rational64), &str> = HashMap::new();
        for c in &characters {
            if c.alpha.len() != n {
                return Err(ToricError::DimensionMismatch {
                    expected: n,
                    got: c.alpha.len(),
                });
            }
            if let Some(other) = seen.insert(c.key(), &c.name) {
                return Err(ToricError::Duplicate(other.to_string(), c.name.clone()));
            }
        }
        Ok(Self { n, characters })
    }

    /// Characters named `H1, H2, …` from `(α, t)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(Vec<i64>, Rational64)]) -> Result<Self, ToricError> {
        let chars = pairs
            .iter()
            .enumerate()
            .map(|(i, (a, t))| Character::new(format!("H{}", i + 1), a.clone(), *t))
            .collect::<Result<_, _>>()?;
        Self::new(n, chars)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    fn position(&self, c: &Character) -> Result<usize, ToricError> {
        let key = c.key();
        self.characters
            .iter()
            .position(|d| d.key() == key)
            .ok_or_else(|| ToricError::NotInArrangement(c.name.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    n: usize,
    lattice: Matrix,
    phases: Vec<Rational64>,
}

impl Layer {
    pub fn ambient(n: usize) -> Self {
        Self {
            n,
            lattice: Vec::new(),
            phases: Vec::new(),
        }
    }

    /// `{φ : φ(λᵢ) = sᵢ}` for independent rows `λᵢ` spanning a saturated
    /// lattice. The basis is brought to HNF and the phases carried along.
    pub fn new(n: usize, rows: &[Vec<i64>], phases: &[Rational64]) -> Result<Self, ToricError> {
        if rows.len() != phases.len() {
            return Err(ToricError::InvalidLayer("one phase per row".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(ToricError::DimensionMismatch { expected: n, got: r.len() });
        }
        let (h, u) = hnf(rows, n);
        let basis: Matrix = h.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
        if basis.len() != rows.len() {
            return Err(ToricError::InvalidLayer("rows are dependent".into()));
        }
        if saturate(rows, n) != basis {
            return Err(ToricError::InvalidLayer("lattice is not saturated".into()));
        }
        let phases = u[..basis.len()]
            .iter()
            .map(|coef| frac(dot(coef, phases)))
            .collect();
        Ok(Self {
            n,
            lattice: basis,
            phases,
        })
    }

    /// The single point `φ`.
    pub fn point(phi: &[Rational64]) -> Self {
        let n = phi.len();
        Self {
            n,
            lattice: lattice::identity(n),
            phases: phi.iter().map(|&p| frac(p)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Codimension, the rank of the lattice.
    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    pub fn lattice(&self) -> &Matrix {
        &self.lattice
    }

    pub fn phases(&self) -> &[Rational64] {
        &self.phases
    }

    /// `ψ(v)` when `v ∈ Λ`.
    pub fn value_on(&self, v: &[i64]) -> Option<Rational64> {
        solve_in_basis(&self.lattice, v).map(|x| frac(dot(&x, &self.phases)))
    }

    /// Whether `other ⊆ self` as point sets.
    pub fn contains_layer(&self, other: &Layer) -> bool {
        self.lattice
            .iter()
            .zip(&self.phases)
            .all(|(row, &s)| other.value_on(row) == Some(s))
    }

    pub fn contains_point(&self, phi: &[Rational64]) -> bool {
        self.lattice
            .iter()
            .zip(&self.phases)
            .all(|(row, &s)| frac(dot(row, phi)) == s)
    }

    pub fn satisfies(&self, c: &Character) -> bool {
        self.value_on(&c.alpha) == Some(c.phase)
    }

    /// `[HNF rows|phases]`, e.g. `[1,1;0,2|0,1/2]`; the ambient layer is `[|]`.
    pub fn id(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .lattice
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        let phases: Vec<String> = self.phases.iter().map(Rational64::to_string).collect();
        write!(f, "[{}|{}]", rows.join(";"), phases.join(","))
    }
}

/// The connected components of `layer ∩ H_{α,t}`.
pub fn intersect_layer(layer: &Layer, c: &Character) -> Result<Vec<Layer>, ToricError> {
    let n = layer.n;
    if c.alpha.len() != n {
        return Err(ToricError::DimensionMismatch {
            expected: n,
            got: c.alpha.len(),
        });
    }
    if let Some(v) = layer.value_on(&c.alpha) {
        return Ok(if v == c.phase { vec![layer.clone()] } else { Vec::new() });
    }
    let mut gens = layer.lattice.clone();
    gens.push(c.alpha.clone());
    let mut w = layer.phases.clone();
    w.push(c.phase);
    let basis = saturate(&gens, n);
    let k = basis.len();
    // gens = C · basis
    let coef: Matrix = gens
        .iter()
        .map(|g| solve_in_basis(&basis, g).expect("generators lie in their saturation"))
        .collect();
    // C v ≡ w with v the values on the basis; U C V = D and v = V u give
    // dᵢ uᵢ ≡ (U w)ᵢ.
    let (d, u, v, _) = snf(&coef, k);
    let uw: Vec<Rational64> = u.iter().map(|row| dot(row, &w)).collect();
    let mut choices: Vec<Vec<Rational64>> = vec![Vec::new()];
    for i in 0..k {
        let di = d[i][i];
        debug_assert!(di > 0);
        let mut next = Vec::new();
        for prefix in &choices {
            for j in 0..di {
                let mut p = prefix.clone();
                p.push((uw[i] + j) / di);
                next.push(p);
            }
        }
        choices = next;
    }
    let mut out: Vec<Layer> = choices
        .into_iter()
        .map(|uu| Layer {
            n,
            lattice: basis.clone(),
            phases: v.iter().map(|row| frac(dot(row, &uu))).collect(),
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The poset of layers with its certificate and simple scheme.
#[derive(Debug, Clone)]
pub struct LayerPoset {
    pub poset: GeometricPoset,
    pub scheme: MatroidScheme,
    /// Indexed like the poset elements.
    pub layers: Vec<Layer>,
    /// Poset element of each character's hypertorus.
    pub atom_of: Vec<usize>,
}

impl LayerPoset {
    pub fn index_of(&self, layer: &Layer) -> Option<usize> {
        self.layers.iter().position(|l| l == layer)
    }
}

pub fn layers_poset(arr: &ToricArrangement) -> Result<LayerPoset, ToricError> {
    layers_poset_with_cap(arr, DEFAULT_LAYER_CAP)
}

/// Breadth-first closure of the ambient layer under intersection with the
/// hypertori, ordered by reverse inclusion and certified geometric.
pub fn layers_poset_with_cap(arr: &ToricArrangement, cap: usize) -> Result<LayerPoset, ToricError> {
    let ambient = Layer::ambient(arr.n);
    let mut seen: HashSet<Layer> = HashSet::from([ambient.clone()]);
    let mut queue = VecDeque::from([ambient]);
    while let Some(l) = queue.pop_front() {
        for c in &arr.characters {
            for m in intersect_layer(&l, c)? {
                if seen.insert(m.clone()) {
                    if seen.len() > cap {
                        return Err(ToricError::LayerCap { layers: seen.len(), cap });
                    }
                    queue.push_back(m);
                }
            }
        }
    }
    let mut layers: Vec<Layer> = seen.into_iter().collect();
    layers.sort_by(|a, b| (a.rank(), a).cmp(&(b.rank(), b)));
    let k = layers.len();
    let leq: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| layers[i].contains_layer(&layers[j])).collect())
        .collect();
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j && leq[i][j] && !(0..k).any(|m| m != i && m != j && leq[i][m] && leq[m][j]) {
                covers.push((i, j));
            }
        }
    }
    let ids = layers.iter().map(Layer::id).collect();
    let poset = Poset::from_indices(ids, &covers).expect("reverse inclusion is a partial order");
    let rp = RankedPoset::new(poset).expect("the ambient layer is the least element");
    for (i, l) in layers.iter().enumerate() {
        assert_eq!(rp.rank(i), l.rank(), "poset rank is codimension");
    }
    let gp = validate_geometric(rp)?;
    let scheme = scheme_from_geometric(&gp);
    let atom_of = arr
        .characters
        .iter()
        .map(|c| {
            let h = intersect_layer(&layers[0], c).expect("dimension checked").remove(0);
            layers.iter().position(|l| *l == h).expect("hypertori are layers")
        })
        .collect();
    Ok(LayerPoset {
        poset: gp,
        scheme,
        layers,
        atom_of,
    })
}

pub fn arr_delete(arr: &ToricArrangement, c: &Character) -> Result<ToricArrangement, ToricError> {
    let i = arr.position(c)?;
    let mut chars = arr.characters.clone();
    chars.remove(i);
    ToricArrangement::new(arr.n, chars)
}

/// The arrangement induced on `H₀ = H_{α,t} ≅ Hom(Γ_α, ℚ/ℤ)`. With a unimodular
/// `W` whose first row is `α`, each `β = cα + β'` and `φ = φ₀ + ψ` with
/// `φ₀(α) = t`, so `H_{β,u} ∩ H₀ = {ψ(β') = u − ct}`. Writing `β' = dγ` with
/// `γ` primitive gives the `d` components `ψ(γ) = (u − ct + j)/d`.
pub fn arr_restrict(arr: &ToricArrangement, c: &Character) -> Result<ToricArrangement, ToricError> {
    let i0 = arr.position(c)?;
    let h0 = &arr.characters[i0];
    let (_, winv) = lattice::complete_to_unimodular(&h0.alpha);
    let mut out: Vec<Character> = Vec::new();
    let mut seen = HashSet::new();
    for (i, b) in arr.characters.iter().enumerate() {
        if i == i0 {
            continue;
        }
        // y = β W⁻¹
        let y: Vec<i64> = (0..arr.n).map(|j| (0..arr.n).map(|k| b.alpha[k] * winv[k][j]).sum()).collect();
        let rest = &y[1..];
        let d = gcd_all(rest);
        if d == 0 {
            // parallel to H₀ and distinct from it, hence disjoint
            continue;
        }
        let gamma: Vec<i64> = rest.iter().map(|x| x / d).collect();
        let shifted = b.phase - h0.phase * y[0];
        for j in 0..d {
            let name = if d == 1 { b.name.clone() } else { format!("{}#{}", b.name, j + 1) };
            let ch = Character::new(name, gamma.clone(), (shifted + j) / d)?;
            if seen.insert(ch.key()) {
                out.push(ch);
            }
        }
    }
    ToricArrangement::new(arr.n - 1, out)
}

/// The linear matroid of `{α : X ⊆ H_{α,t}}`.
pub fn arr_localize(arr: &ToricArrangement, layer: &Layer) -> Result<Matroid, ToricError> {
    let lp = layers_poset(arr)?;
    localize_in(arr, &lp, layer)
}

fn localize_in(arr: &ToricArrangement, lp: &LayerPoset, layer: &Layer) -> Result<Matroid, ToricError> {
    if lp.index_of(layer).is_none() {
        return Err(ToricError::NotALayer(layer.id()));
    }
    let (names, columns): (Vec<String>, Vec<Vec<i64>>) = arr
        .characters
        .iter()
        .filter(|c| layer.satisfies(c))
        .map(|c| (c.name.clone(), c.alpha.clone()))
        .unzip();
    Ok(linear_matroid(names, &columns)?)
}

/// Witness bijections for the three isomorphisms relating the scheme of
/// layers with deletion, restriction and localization. A `None` entry is a
/// failed isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementMinorsReport {
    /// `M(A) − H₀` onto `M(A ∖ H₀)`.
    pub deletion: Option<Vec<usize>>,
    /// `M(A)/H₀` onto `M(A^{H₀})`. The contraction need not be simple, so
    /// this can fail when restricted hypertori coincide.
    pub contraction: Option<Vec<usize>>,
    /// Flats of `M(A)/H₀` onto the layers of `A^{H₀}`.
    pub contraction_flats: Option<Vec<usize>>,
    /// The simplification of `M(A)/H₀` onto `M(A^{H₀})`.
    pub contraction_simplified: Option<Vec<usize>>,
    /// `M(A)_X` onto the scheme of the matroid of `A_X`.
    pub localization: Option<Vec<usize>>,
}

impl ArrangementMinorsReport {
    pub fn all_hold(&self) -> bool {
        self.deletion.is_some() && self.contraction.is_some() && self.localization.is_some()
    }

    /// Everything except the scheme-level contraction isomorphism.
    pub fn flats_hold(&self) -> bool {
        self.deletion.is_some()
            && self.contraction_flats.is_some()
            && self.contraction_simplified.is_some()
            && self.localization.is_some()
    }
}

pub fn verify_arrangement_minors(arr: &ToricArrangement, c: &Character, layer: &Layer) -> Result<ArrangementMinorsReport, ToricError> {
    let lp = layers_poset(arr)?;
    let i0 = arr.position(c)?;
    let x = lp.index_of(layer).ok_or_else(|| ToricError::NotALayer(layer.id()))?;
    let m = &lp.scheme;
    let a = flat_element(&lp.poset, m, lp.atom_of[i0]);

    let deleted = layers_poset(&arr_delete(arr, c)?)?;
    let deletion = find_scheme_isomorphism(&m.delete(a)?, &deleted.scheme);

    let restricted = layers_poset(&arr_restrict(arr, c)?)?;
    let minor = m.contract(a)?;
    let contraction = find_scheme_isomorphism(&minor, &restricted.scheme);
    let contraction_flats = find_isomorphism(&minor.flats(), restricted.poset.ranked());
    let contraction_simplified = find_scheme_isomorphism(&simplification(&minor), &restricted.scheme);

    let local = crate::constructions::scheme_from_matroid(&localize_in(arr, &lp, layer)?);
    let localization = find_scheme_isomorphism(&m.localization(flat_element(&lp.poset, m, x)), &local);

    Ok(ArrangementMinorsReport {
        deletion,
        contraction,
        contraction_flats,
        contraction_simplified,
        localization,
    })
}

/// Least common multiple of the phase denominators.
pub fn phase_denominator(arr: &ToricArrangement) -> i64 {
    arr.characters
        .iter()
        .fold(1, |l, c| num_integer::lcm(l, *c.phase.denom()))
}
