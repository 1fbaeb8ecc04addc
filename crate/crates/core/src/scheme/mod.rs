//! Matroid schemes: a simplicial poset `S` with rank labels `ρ` satisfying
//! M1–M5.
//!
//! Elements are addressed by their position in the underlying poset.

mod derived;
mod independence;
mod minors;
mod validate;

use fixedbitset::FixedBitSet;

use crate::axioms::AxiomViolation;
use crate::poset::{
    find_labeled_isomorphism, Poset, PosetError, RankedPoset, SimplicialPoset,
};

pub use derived::{check_derived_axioms, DerivedReport, PropertyResult};
pub use independence::{scheme_from_independence, validate_independence};
pub use validate::{first_violation, validate_scheme};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Axiom(#[from] AxiomViolation),
    #[error("expected {expected} rank labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("`{0}` is not an atom")]
    NotAnAtom(String),
    #[error("`{0}` is not a loop")]
    NotALoop(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidScheme {
    sp: SimplicialPoset,
    rho: Vec<usize>,
}

impl MatroidScheme {
    /// Ranks, certifies simplicial, and validates M1–M5.
    pub fn new(poset: Poset, rho: Vec<usize>) -> Result<Self, SchemeError> {
        let sp = SimplicialPoset::new(RankedPoset::new(poset)?)?;
        validate_scheme(sp, rho)
    }

    /// Builds from `(id, ρ)` pairs and identifier covers.
    pub fn from_labels<S: AsRef<str>, T: AsRef<str>>(
        elements: &[(S, usize)],
        covers: &[(T, T)],
    ) -> Result<Self, SchemeError> {
        let ids: Vec<&str> = elements.iter().map(|(s, _)| s.as_ref()).collect();
        let rho = elements.iter().map(|&(_, r)| r).collect();
        Self::new(Poset::new(&ids, covers)?, rho)
    }

    /// Skips axiom validation. Used to feed deliberately broken inputs to
    /// the checkers.
    pub fn from_parts_unchecked(sp: SimplicialPoset, rho: Vec<usize>) -> Self {
        assert_eq!(sp.len(), rho.len());
        Self { sp, rho }
    }

    pub fn simplicial(&self) -> &SimplicialPoset {
        &self.sp
    }

    pub fn ranked(&self) -> &RankedPoset {
        self.sp.ranked()
    }

    pub fn poset(&self) -> &Poset {
        self.sp.poset()
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn id(&self, x: usize) -> &str {
        self.poset().id(x)
    }

    pub fn require(&self, id: &str) -> Result<usize, PosetError> {
        self.poset().require(id)
    }

    pub fn rho(&self, x: usize) -> usize {
        self.rho[x]
    }

    pub fn rhos(&self) -> &[usize] {
        &self.rho
    }

    /// `|x|`.
    pub fn size(&self, x: usize) -> usize {
        self.sp.size(x)
    }

    pub fn bottom(&self) -> usize {
        self.sp.bottom()
    }

    pub fn atoms(&self) -> &[usize] {
        self.sp.atoms()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset().leq(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> Vec<usize> {
        self.poset().join(x, y)
    }

    pub fn names(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.id(x).to_string()).collect()
    }

    /// `ρ(M)`, the common rank of the maximal elements.
    pub fn rank(&self) -> usize {
        let maxima = self.poset().maximal_elements();
        let r = self.rho[maxima[0]];
        assert!(
            maxima.iter().all(|&m| self.rho[m] == r),
            "rank is constant on maximal elements of a valid scheme"
        );
        r
    }

    /// `M_x = (S≤x, ρ|S≤x)`, a matroid on the atoms below `x`.
    pub fn localization(&self, x: usize) -> MatroidScheme {
        let keep: Vec<usize> = self.poset().down_set(x).ones().collect();
        self.sub_scheme(&keep, 0).expect("a Boolean interval with M1-M3 is a matroid")
    }

    /// The induced labeled poset on `keep` with `ρ − shift`, validated.
    pub(crate) fn sub_scheme(&self, keep: &[usize], shift: usize) -> Result<MatroidScheme, SchemeError> {
        let (sub, kept) = self.poset().induced(keep);
        let sp = SimplicialPoset::new(RankedPoset::new(sub)?)?;
        let rho = kept.iter().map(|&k| self.rho[k] - shift).collect();
        validate_scheme(sp, rho)
    }

    /// Maximal elements of `{y ≥ x : ρ(y) = ρ(x)}`; exactly one for a valid
    /// scheme.
    pub fn closure_candidates(&self, x: usize) -> Vec<usize> {
        let r = self.rho[x];
        self.poset()
            .up_set(x)
            .ones()
            .filter(|&y| self.rho[y] == r)
            .filter(|&y| self.poset().upper_covers(y).iter().all(|&z| self.rho[z] != r))
            .collect()
    }

    pub fn try_closure(&self, x: usize) -> Result<usize, Vec<usize>> {
        let c = self.closure_candidates(x);
        if c.len() == 1 {
            Ok(c[0])
        } else {
            Err(c)
        }
    }

    /// `cl(x)`.
    pub fn closure(&self, x: usize) -> usize {
        self.try_closure(x)
            .unwrap_or_else(|c| panic!("closure of `{}` is not unique: {:?}", self.id(x), self.names(&c)))
    }

    pub fn closures(&self) -> Vec<usize> {
        (0..self.len()).map(|x| self.closure(x)).collect()
    }

    pub fn is_flat(&self, x: usize) -> bool {
        self.closure(x) == x
    }

    /// Flats in declaration order.
    pub fn flat_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_flat(x)).collect()
    }

    /// `F(M)` with rank `ρ`, plus the positions of the flats in `S`.
    pub fn flats_with_map(&self) -> (RankedPoset, Vec<usize>) {
        let (sub, kept) = self.poset().induced(&self.flat_elements());
        let rp = RankedPoset::new(sub).expect("flats are bounded below and ranked");
        for (i, &k) in kept.iter().enumerate() {
            assert_eq!(rp.rank(i), self.rho[k], "flat rank agrees with ρ");
        }
        (rp, kept)
    }

    pub fn flats(&self) -> RankedPoset {
        self.flats_with_map().0
    }

    pub fn is_independent(&self, x: usize) -> bool {
        self.rho[x] == self.size(x)
    }

    pub fn independents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_independent(x)).collect()
    }

    /// Maximal independent elements.
    pub fn bases(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                self.is_independent(x)
                    && self
                        .poset()
                        .upper_covers(x)
                        .iter()
                        .all(|&y| !self.is_independent(y))
            })
            .collect()
    }

    /// Minimal dependent elements.
    pub fn circuits(&self) -> Vec<usize> {
        let circuits: Vec<usize> = (0..self.len())
            .filter(|&x| {
                !self.is_independent(x)
                    && self
                        .poset()
                        .lower_covers(x)
                        .iter()
                        .all(|&y| self.is_independent(y))
            })
            .collect();
        for &c in &circuits {
            assert_eq!(self.rho[c] + 1, self.size(c), "circuit has ρ = |c| - 1");
        }
        circuits
    }

    /// The three equivalent loop conditions for atom `a`:
    /// `ρ(a) = 0`; `a` lies below every flat; `a` lies below every maximal
    /// element and below no basis.
    pub fn loop_conditions(&self, a: usize) -> [bool; 3] {
        let p = self.poset();
        let c1 = self.rho[a] == 0;
        let c2 = self.flat_elements().iter().all(|&x| p.leq(a, x));
        let c3 = p.maximal_elements().iter().all(|&m| p.leq(a, m))
            && self.bases().iter().all(|&b| !p.leq(a, b));
        [c1, c2, c3]
    }

    /// The three equivalent isthmus conditions for atom `a`:
    /// every `x ≱ a` joins `a` and every such join raises `ρ` by one; `a`
    /// lies below every basis; `a` lies below every maximal element and
    /// below no circuit.
    pub fn isthmus_conditions(&self, a: usize) -> [bool; 3] {
        let p = self.poset();
        let c1 = (0..self.len()).filter(|&x| !p.leq(a, x)).all(|x| {
            let joins = p.join(x, a);
            !joins.is_empty() && joins.iter().all(|&u| self.rho[u] == self.rho[x] + 1)
        });
        let c2 = self.bases().iter().all(|&b| p.leq(a, b));
        let c3 = p.maximal_elements().iter().all(|&m| p.leq(a, m))
            && self.circuits().iter().all(|&c| !p.leq(a, c));
        [c1, c2, c3]
    }

    fn agreed(&self, a: usize, conds: [bool; 3], what: &str) -> bool {
        assert!(
            conds.iter().all(|&c| c == conds[0]),
            "{what} conditions disagree at `{}`: {conds:?}",
            self.id(a)
        );
        conds[0]
    }

    pub fn is_loop(&self, a: usize) -> bool {
        self.agreed(a, self.loop_conditions(a), "loop")
    }

    pub fn is_isthmus(&self, a: usize) -> bool {
        self.agreed(a, self.isthmus_conditions(a), "isthmus")
    }

    pub fn loops(&self) -> Vec<usize> {
        self.atoms().iter().copied().filter(|&a| self.is_loop(a)).collect()
    }

    pub fn isthmuses(&self) -> Vec<usize> {
        self.atoms().iter().copied().filter(|&a| self.is_isthmus(a)).collect()
    }

    /// Every atom is a flat and not a loop.
    pub fn is_simple(&self) -> bool {
        self.atoms().iter().all(|&a| self.is_flat(a) && self.rho[a] != 0)
    }

    pub(crate) fn require_atom(&self, a: usize) -> Result<(), SchemeError> {
        if self.sp.is_atom(a) {
            Ok(())
        } else {
            Err(SchemeError::NotAnAtom(self.id(a).to_string()))
        }
    }

    /// Atoms not below `x`, as a bitset over atom positions, that have a
    /// common upper bound with `x`.
    pub(crate) fn joinable_atoms_outside(&self, x: usize, reach: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.atoms().len());
        for (k, &a) in self.atoms().iter().enumerate() {
            if reach.contains(a) && !self.leq(a, x) {
                out.insert(k);
            }
        }
        out
    }

    /// Elements with a common upper bound with `x`: the union of the
    /// down-sets of maximal elements above `x`.
    pub(crate) fn joinable_with(&self, x: usize) -> FixedBitSet {
        let p = self.poset();
        let mut reach = FixedBitSet::with_capacity(self.len());
        for m in p.up_set(x).ones() {
            if p.upper_covers(m).is_empty() {
                reach.union_with(p.down_set(m));
            }
        }
        reach
    }
}

/// A `ρ`-preserving poset isomorphism `m1 → m2`, if any.
pub fn find_scheme_isomorphism(m1: &MatroidScheme, m2: &MatroidScheme) -> Option<Vec<usize>> {
    find_labeled_isomorphism(m1.ranked(), m2.ranked(), m1.rhos(), m2.rhos())
}
