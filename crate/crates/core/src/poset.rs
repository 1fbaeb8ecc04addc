//! Finite posets stored by their cover relation.
//!
//! A [`Poset`] keeps its elements as opaque string identifiers in declaration
//! order. Reachability is precomputed as dense bitsets in both directions, so
//! order queries are constant time and the set-valued join/meet operations
//! (`⋁T` and `⋀T` as *sets* of minimal upper / maximal lower bounds) reduce to
//! bitset intersections.
//!
//! [`RankedPoset`] adds a bottom element and a rank function, and
//! [`SimplicialPoset`] certifies that every principal down-set is a Boolean
//! lattice.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polynomial::UnivariatePolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("cover relation has a cycle: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("cover ({0}, {1}) is implied by other covers")]
    NonHasseCover(String, String),
    #[error("expected a unique minimal element, found {}", fmt_list(.0))]
    NotBoundedBelow(Vec<String>),
    #[error("not ranked: chains {} and {} end at the same element with different lengths", fmt_chain(.short), fmt_chain(.long))]
    NotRanked { short: Vec<String>, long: Vec<String> },
    #[error("down-set of `{0}` is not a Boolean lattice")]
    NotSimplicial(String),
    #[error("`{0}` is not below `{1}`")]
    NotBelow(String, String),
    #[error("rank is not constant on maximal elements")]
    RankNotConstantOnMax,
}

fn fmt_list(ids: &[String]) -> String {
    format!("{{{}}}", ids.join(", "))
}

fn fmt_chain(ids: &[String]) -> String {
    ids.join(" < ")
}

/// A finite partial order given by its Hasse diagram.
#[derive(Clone)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    topo: Vec<usize>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self.covers().map(|(a, b)| (self.id(a), self.id(b))).collect();
        f.debug_struct("Poset")
            .field("elements", &self.ids)
            .field("covers", &covers)
            .finish()
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.upper == other.upper
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from identifiers and cover pairs `(lower, upper)`.
    pub fn new<S, T>(elements: &[S], covers: &[(T, T)]) -> Result<Self, PosetError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(PosetError::DuplicateIdentifier(id.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| PosetError::UnknownIdentifier(s.to_string()))
            };
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::build(ids, index, &pairs)
    }

    /// Builds a poset from identifiers and cover pairs given by position.
    pub fn from_indices(ids: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(PosetError::DuplicateIdentifier(id.clone()));
            }
        }
        for &(a, b) in covers {
            for c in [a, b] {
                if c >= ids.len() {
                    return Err(PosetError::UnknownIdentifier(format!("#{c}")));
                }
            }
        }
        Self::build(ids, index, covers)
    }

    fn build(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = ids.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(PosetError::CycleDetected(vec![ids[a].clone(), ids[a].clone()]));
            }
            if !seen.insert((a, b)) {
                return Err(PosetError::NonHasseCover(ids[a].clone(), ids[b].clone()));
            }
            upper[a].push(b);
            lower[b].push(a);
        }
        for v in upper.iter_mut().chain(lower.iter_mut()) {
            v.sort_unstable();
        }

        // Kahn's algorithm, smallest index first.
        let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(i) = ready.pop_first() {
            topo.push(i);
            for &j in &upper[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        if topo.len() < n {
            return Err(PosetError::CycleDetected(find_cycle(&ids, &lower, &indeg)));
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &i in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(i);
            for &j in &upper[i] {
                set.union_with(&up[j]);
            }
            up[i] = set;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for &i in &topo {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(i);
            for &j in &lower[i] {
                set.union_with(&down[j]);
            }
            down[i] = set;
        }

        for &(a, b) in pairs {
            if upper[a].iter().any(|&r| r != b && up[r].contains(b)) {
                return Err(PosetError::NonHasseCover(ids[a].clone(), ids[b].clone()));
            }
        }

        Ok(Self {
            ids,
            index,
            upper,
            lower,
            up,
            down,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize, PosetError> {
        self.index_of(id)
            .ok_or_else(|| PosetError::UnknownIdentifier(id.to_string()))
    }

    pub fn indices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>, PosetError> {
        ids.iter().map(|s| self.require(s.as_ref())).collect()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// Elements `y ≥ i`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// Elements `y ≤ i`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    /// A linear extension, smallest declaration index first among ready elements.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// Cover pairs ordered by lower element, then upper element.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    /// `⋁T`: the minimal common upper bounds of `t`. Empty when `t` has no
    /// common upper bound; the minimal elements of the poset when `t` is empty.
    pub fn upper_bound_minima(&self, t: &[usize]) -> Vec<usize> {
        let bounds = self.common_upper_bounds(t);
        // `bounds` is an up-set, so an element is minimal in it exactly when
        // none of its lower covers belongs to it.
        bounds
            .ones()
            .filter(|&u| self.lower[u].iter().all(|&c| !bounds.contains(c)))
            .collect()
    }

    /// `⋀T`: the maximal common lower bounds of `t`.
    pub fn lower_bound_maxima(&self, t: &[usize]) -> Vec<usize> {
        let bounds = self.common_lower_bounds(t);
        bounds
            .ones()
            .filter(|&u| self.upper[u].iter().all(|&c| !bounds.contains(c)))
            .collect()
    }

    pub fn common_upper_bounds(&self, t: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        match t.split_first() {
            None => set.insert_range(..),
            Some((&first, rest)) => {
                set.union_with(&self.up[first]);
                for &x in rest {
                    set.intersect_with(&self.up[x]);
                }
            }
        }
        set
    }

    pub fn common_lower_bounds(&self, t: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        match t.split_first() {
            None => set.insert_range(..),
            Some((&first, rest)) => {
                set.union_with(&self.down[first]);
                for &x in rest {
                    set.intersect_with(&self.down[x]);
                }
            }
        }
        set
    }

    /// `x ∨ y` as a set.
    pub fn join(&self, x: usize, y: usize) -> Vec<usize> {
        self.upper_bound_minima(&[x, y])
    }

    /// `x ∧ y` as a set.
    pub fn meet(&self, x: usize, y: usize) -> Vec<usize> {
        self.lower_bound_maxima(&[x, y])
    }

    /// Whether `x ∨ y ≠ ∅`.
    pub fn joinable(&self, x: usize, y: usize) -> bool {
        !self.up[x].is_disjoint(&self.up[y])
    }

    /// The induced subposet on `keep` (any order; duplicates ignored).
    /// Identifiers and their relative declaration order are preserved.
    pub fn induced(&self, keep: &[usize]) -> (Poset, Vec<usize>) {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut mask = FixedBitSet::with_capacity(self.len());
        for &k in &keep {
            mask.insert(k);
        }
        let position: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut covers = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            let mut above = self.up[a].clone();
            above.intersect_with(&mask);
            above.set(a, false);
            for b in above.ones() {
                let mut between = self.down[b].clone();
                between.intersect_with(&above);
                if between.count_ones(..) == 1 {
                    covers.push((i, position[&b]));
                }
            }
        }
        let ids = keep.iter().map(|&k| self.ids[k].clone()).collect();
        let poset = Poset::from_indices(ids, &covers).expect("induced subposet is well formed");
        (poset, keep)
    }
}

fn find_cycle(ids: &[String], lower: &[Vec<usize>], indeg: &[usize]) -> Vec<String> {
    // Every element left with positive in-degree has a predecessor that is
    // also left over, so walking predecessors must revisit an element.
    let stuck = |i: usize| indeg[i] > 0;
    let start = (0..ids.len()).find(|&i| stuck(i)).expect("a stuck element");
    let mut walk = vec![start];
    let mut pos = HashMap::from([(start, 0usize)]);
    let mut cur = start;
    loop {
        let prev = *lower[cur]
            .iter()
            .find(|&&p| stuck(p))
            .expect("stuck element has a stuck predecessor");
        if let Some(&k) = pos.get(&prev) {
            let mut cycle: Vec<usize> = walk[k..].to_vec();
            cycle.reverse();
            cycle.push(cycle[0]);
            return cycle.into_iter().map(|i| ids[i].clone()).collect();
        }
        pos.insert(prev, walk.len());
        walk.push(prev);
        cur = prev;
    }
}

/// A bounded-below poset with a rank function compatible with its covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPoset {
    poset: Poset,
    rank: Vec<usize>,
    bottom: usize,
}

/// Why a poset failed to be a geometric lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeDefect {
    NotBoundedBelow(Vec<String>),
    NotRanked { short: Vec<String>, long: Vec<String> },
    NoUniqueJoin { x: String, y: String, joins: Vec<String> },
    NoUniqueMeet { x: String, y: String, meets: Vec<String> },
    NotSemimodular { x: String, y: String },
    NotAtomic { x: String },
}

impl fmt::Display for LatticeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeDefect::NotBoundedBelow(m) => write!(f, "minimal elements {}", fmt_list(m)),
            LatticeDefect::NotRanked { short, long } => {
                write!(f, "unequal chains {} and {}", fmt_chain(short), fmt_chain(long))
            }
            LatticeDefect::NoUniqueJoin { x, y, joins } => {
                write!(f, "{x} ∨ {y} = {}", fmt_list(joins))
            }
            LatticeDefect::NoUniqueMeet { x, y, meets } => {
                write!(f, "{x} ∧ {y} = {}", fmt_list(meets))
            }
            LatticeDefect::NotSemimodular { x, y } => write!(f, "semimodularity fails at ({x}, {y})"),
            LatticeDefect::NotAtomic { x } => write!(f, "{x} is not a join of atoms"),
        }
    }
}

impl RankedPoset {
    /// Verifies a unique minimum and gradedness, then records the rank.
    pub fn new(poset: Poset) -> Result<Self, PosetError> {
        let minimal = poset.minimal_elements();
        if minimal.len() != 1 {
            return Err(PosetError::NotBoundedBelow(
                minimal.iter().map(|&i| poset.id(i).to_string()).collect(),
            ));
        }
        let bottom = minimal[0];
        let n = poset.len();
        let mut rank = vec![0usize; n];
        let mut pred = vec![usize::MAX; n];
        for &x in poset.linear_extension() {
            for &c in poset.lower_covers(x) {
                if rank[c] + 1 > rank[x] {
                    rank[x] = rank[c] + 1;
                    pred[x] = c;
                }
            }
        }
        let chain_to = |mut x: usize| {
            let mut chain = vec![x];
            while pred[x] != usize::MAX {
                x = pred[x];
                chain.push(x);
            }
            chain.reverse();
            chain
        };
        for &x in poset.linear_extension() {
            for &c in poset.lower_covers(x) {
                if rank[c] + 1 != rank[x] {
                    let mut short = chain_to(c);
                    short.push(x);
                    let long = chain_to(x);
                    let name = |v: Vec<usize>| v.into_iter().map(|i| poset.id(i).to_string()).collect();
                    return Err(PosetError::NotRanked {
                        short: name(short),
                        long: name(long),
                    });
                }
            }
        }
        Ok(Self { poset, rank, bottom })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Rank-1 elements in declaration order.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rank[i] == 1).collect()
    }

    /// The common rank of all maximal elements, if there is one.
    pub fn constant_max_rank(&self) -> Option<usize> {
        let maxima = self.poset.maximal_elements();
        let r = self.rank[maxima[0]];
        maxima.iter().all(|&m| self.rank[m] == r).then_some(r)
    }

    /// The closed interval `[0̂, top]` as a ranked poset.
    pub fn interval_below(&self, top: usize) -> (RankedPoset, Vec<usize>) {
        let keep: Vec<usize> = self.poset.down_set(top).ones().collect();
        let (sub, keep) = self.poset.induced(&keep);
        (RankedPoset::new(sub).expect("principal down-set is ranked"), keep)
    }

    /// The Möbius function `μ(0̂, ·)`.
    pub fn mobius(&self) -> Vec<BigInt> {
        let mut mu = vec![BigInt::zero(); self.len()];
        for &w in self.poset.linear_extension() {
            if w == self.bottom {
                mu[w] = BigInt::one();
                continue;
            }
            let mut sum = BigInt::zero();
            for u in self.poset.down_set(w).ones() {
                if u != w {
                    sum += &mu[u];
                }
            }
            mu[w] = -sum;
        }
        mu
    }

    /// `χ(t) = Σ_w μ(w) t^{ρ(P) − ρ(w)}`; requires rank constant on maxima.
    pub fn characteristic_polynomial(&self) -> Result<UnivariatePolynomial, PosetError> {
        let top = self
            .constant_max_rank()
            .ok_or(PosetError::RankNotConstantOnMax)?;
        let mu = self.mobius();
        let mut chi = UnivariatePolynomial::zero();
        for (w, m) in mu.into_iter().enumerate() {
            chi.add_term((top - self.rank[w]) as u32, m);
        }
        Ok(chi)
    }

    /// Lattice, semimodular and atomic.
    pub fn is_geometric_lattice(&self) -> Result<(), LatticeDefect> {
        let p = &self.poset;
        let name = |i: usize| p.id(i).to_string();
        let names = |v: &[usize]| v.iter().map(|&i| name(i)).collect::<Vec<_>>();
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                let joins = p.join(x, y);
                if joins.len() != 1 {
                    return Err(LatticeDefect::NoUniqueJoin {
                        x: name(x),
                        y: name(y),
                        joins: names(&joins),
                    });
                }
                let meets = p.meet(x, y);
                if meets.len() != 1 {
                    return Err(LatticeDefect::NoUniqueMeet {
                        x: name(x),
                        y: name(y),
                        meets: names(&meets),
                    });
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let j = p.join(x, y)[0];
                let m = p.meet(x, y)[0];
                if self.rank[x] + self.rank[y] < self.rank[j] + self.rank[m] {
                    return Err(LatticeDefect::NotSemimodular { x: name(x), y: name(y) });
                }
            }
        }
        let atoms = self.atoms();
        for x in 0..n {
            let below: Vec<usize> = atoms.iter().copied().filter(|&a| p.leq(a, x)).collect();
            if p.upper_bound_minima(&below) != [x] {
                return Err(LatticeDefect::NotAtomic { x: name(x) });
            }
        }
        Ok(())
    }
}

/// Ranks `p` and then checks it is a geometric lattice.
pub fn check_geometric_lattice(p: &Poset) -> Result<(), LatticeDefect> {
    match RankedPoset::new(p.clone()) {
        Ok(rp) => rp.is_geometric_lattice(),
        Err(PosetError::NotBoundedBelow(m)) => Err(LatticeDefect::NotBoundedBelow(m)),
        Err(PosetError::NotRanked { short, long }) => Err(LatticeDefect::NotRanked { short, long }),
        Err(e) => unreachable!("ranking only fails with bound or grading errors: {e}"),
    }
}

/// A ranked poset whose principal down-sets are Boolean lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPoset {
    ranked: RankedPoset,
    atoms: Vec<usize>,
    atom_pos: Vec<Option<usize>>,
    atoms_below: Vec<FixedBitSet>,
}

impl SimplicialPoset {
    /// Checks each down-set against the subset lattice of its atoms via
    /// `y ↦ at(P≤y)`.
    pub fn new(ranked: RankedPoset) -> Result<Self, PosetError> {
        let p = ranked.poset();
        let n = p.len();
        let atoms = ranked.atoms();
        let mut atom_pos = vec![None; n];
        for (k, &a) in atoms.iter().enumerate() {
            atom_pos[a] = Some(k);
        }
        let mut atoms_below = vec![FixedBitSet::with_capacity(atoms.len()); n];
        for &x in p.linear_extension() {
            let mut set = FixedBitSet::with_capacity(atoms.len());
            if let Some(k) = atom_pos[x] {
                set.insert(k);
            }
            for &c in p.lower_covers(x) {
                set.union_with(&atoms_below[c]);
            }
            atoms_below[x] = set;
        }
        let sp = Self {
            ranked,
            atoms,
            atom_pos,
            atoms_below,
        };
        // Down-sets of elements below a Boolean down-set are Boolean, so
        // checking the maximal elements decides the question; the full scan
        // only runs to name the first failing element.
        let maxima = sp.poset().maximal_elements();
        if maxima.iter().all(|&m| sp.down_set_is_boolean(m)) {
            return Ok(sp);
        }
        let bad = (0..n)
            .find(|&x| !sp.down_set_is_boolean(x))
            .expect("some element fails");
        Err(PosetError::NotSimplicial(sp.poset().id(bad).to_string()))
    }

    fn down_set_is_boolean(&self, x: usize) -> bool {
        let p = self.poset();
        let k = self.atoms_below[x].count_ones(..);
        if self.ranked.rank(x) != k || k >= usize::BITS as usize - 1 {
            return false;
        }
        let members: Vec<usize> = p.down_set(x).ones().collect();
        if members.len() != 1usize << k {
            return false;
        }
        let mut distinct = HashSet::with_capacity(members.len());
        if !members.iter().all(|&y| distinct.insert(&self.atoms_below[y])) {
            return false;
        }
        members.iter().all(|&y| {
            members
                .iter()
                .all(|&z| p.leq(y, z) == self.atoms_below[y].is_subset(&self.atoms_below[z]))
        })
    }

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

    pub fn bottom(&self) -> usize {
        self.ranked.bottom()
    }

    /// `|x|`, the number of atoms below `x`.
    pub fn size(&self, x: usize) -> usize {
        self.ranked.rank(x)
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn is_atom(&self, x: usize) -> bool {
        self.atom_pos[x].is_some()
    }

    /// Position of `x` in [`Self::atoms`], if it is an atom.
    pub fn atom_position(&self, x: usize) -> Option<usize> {
        self.atom_pos[x]
    }

    /// Atoms below `x`, as positions into [`Self::atoms`].
    pub fn atoms_below(&self, x: usize) -> &FixedBitSet {
        &self.atoms_below[x]
    }

    /// The unique element below `x` whose atom set is `atoms`, if `atoms` is a
    /// subset of `at(P≤x)`.
    pub fn element_below_with_atoms(&self, x: usize, atoms: &FixedBitSet) -> Option<usize> {
        self.poset()
            .down_set(x)
            .ones()
            .find(|&y| self.atoms_below[y] == *atoms)
    }

    /// `x ∖ a`, the complement of `a` in the Boolean lattice `P≤x`.
    pub fn complement(&self, x: usize, a: usize) -> Result<usize, PosetError> {
        if !self.poset().leq(a, x) {
            return Err(PosetError::NotBelow(
                self.poset().id(a).to_string(),
                self.poset().id(x).to_string(),
            ));
        }
        let mut target = self.atoms_below[x].clone();
        target.difference_with(&self.atoms_below[a]);
        Ok(self
            .element_below_with_atoms(x, &target)
            .expect("Boolean down-set contains every atom subset"))
    }
}

fn signatures(p: &RankedPoset, labels: Option<&[usize]>) -> Vec<[usize; 6]> {
    let q = p.poset();
    (0..p.len())
        .map(|i| {
            [
                p.rank(i),
                q.lower_covers(i).len(),
                q.upper_covers(i).len(),
                q.down_set(i).count_ones(..),
                q.up_set(i).count_ones(..),
                labels.map_or(0, |l| l[i]),
            ]
        })
        .collect()
}

/// Visits every isomorphism `p → q` (as a vector `φ[i] = j`) until the
/// visitor breaks. When labels are supplied, isomorphisms must preserve them.
pub fn for_each_isomorphism<F>(
    p: &RankedPoset,
    q: &RankedPoset,
    labels: Option<(&[usize], &[usize])>,
    mut visit: F,
) where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = p.len();
    if n != q.len() || p.poset().cover_count() != q.poset().cover_count() {
        return;
    }
    let sig_p = signatures(p, labels.map(|l| l.0));
    let sig_q = signatures(q, labels.map(|l| l.1));
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return;
    }

    let pp = p.poset();
    let qp = q.poset();
    let order = assignment_order(pp);
    let mut candidates: HashMap<[usize; 6], Vec<usize>> = HashMap::new();
    for (j, s) in sig_q.iter().enumerate() {
        candidates.entry(*s).or_default().push(j);
    }

    struct Search<'a, F> {
        pp: &'a Poset,
        qp: &'a Poset,
        order: &'a [usize],
        sig_p: &'a [[usize; 6]],
        candidates: &'a HashMap<[usize; 6], Vec<usize>>,
        phi: Vec<usize>,
        used: Vec<bool>,
        visit: F,
    }

    impl<F: FnMut(&[usize]) -> ControlFlow<()>> Search<'_, F> {
        fn consistent(&self, x: usize, y: usize) -> bool {
            let lower_ok = self.pp.lower_covers(x).iter().all(|&c| {
                let img = self.phi[c];
                img == usize::MAX || self.qp.lower_covers(y).binary_search(&img).is_ok()
            });
            lower_ok
                && self.pp.upper_covers(x).iter().all(|&c| {
                    let img = self.phi[c];
                    img == usize::MAX || self.qp.upper_covers(y).binary_search(&img).is_ok()
                })
        }

        fn run(&mut self, k: usize) -> ControlFlow<()> {
            if k == self.order.len() {
                return (self.visit)(&self.phi);
            }
            let x = self.order[k];
            let cands = &self.candidates[&self.sig_p[x]];
            for &y in cands {
                if self.used[y] || !self.consistent(x, y) {
                    continue;
                }
                self.phi[x] = y;
                self.used[y] = true;
                let flow = self.run(k + 1);
                self.phi[x] = usize::MAX;
                self.used[y] = false;
                flow?;
            }
            ControlFlow::Continue(())
        }
    }

    let mut search = Search {
        pp,
        qp,
        order: &order,
        sig_p: &sig_p,
        candidates: &candidates,
        phi: vec![usize::MAX; n],
        used: vec![false; n],
        visit: &mut visit,
    };
    let _ = search.run(0);
}

/// Greedy order: always place next the element with the most already-placed
/// cover neighbours (ties: higher rank position in the linear extension, then index).
fn assignment_order(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let mut placed = vec![false; n];
    let mut score = vec![0usize; n];
    let mut depth = vec![0usize; n];
    for &x in p.linear_extension() {
        depth[x] = p.lower_covers(x).iter().map(|&c| depth[c] + 1).max().unwrap_or(0);
    }
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .max_by(|&a, &b| {
                score[a]
                    .cmp(&score[b])
                    .then(depth[a].cmp(&depth[b]))
                    .then(b.cmp(&a))
            })
            .expect("an unplaced element");
        placed[next] = true;
        order.push(next);
        for &c in p.lower_covers(next).iter().chain(p.upper_covers(next)) {
            score[c] += 1;
        }
    }
    order
}

pub fn find_isomorphism(p: &RankedPoset, q: &RankedPoset) -> Option<Vec<usize>> {
    first_isomorphism(p, q, None)
}

pub fn find_labeled_isomorphism(
    p: &RankedPoset,
    q: &RankedPoset,
    labels_p: &[usize],
    labels_q: &[usize],
) -> Option<Vec<usize>> {
    first_isomorphism(p, q, Some((labels_p, labels_q)))
}

fn first_isomorphism(
    p: &RankedPoset,
    q: &RankedPoset,
    labels: Option<(&[usize], &[usize])>,
) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(p, q, labels, |phi| {
        found = Some(phi.to_vec());
        ControlFlow::Break(())
    });
    found
}
