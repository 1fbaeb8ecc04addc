//! Brute-force re-checks of the properties every matroid scheme must have.
//!
//! Nothing here assumes the input is valid: a scheme built with
//! [`MatroidScheme::from_parts_unchecked`] reports failures instead of
//! panicking.

use fixedbitset::FixedBitSet;

use super::MatroidScheme;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    /// `None` when the property holds.
    pub witness: Option<Vec<String>>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedReport {
    pub results: Vec<PropertyResult>,
}

impl DerivedReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn failures(&self) -> Vec<&PropertyResult> {
        self.results.iter().filter(|r| !r.passed()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

struct Ctx<'a> {
    m: &'a MatroidScheme,
    cl: Vec<usize>,
    flats: FixedBitSet,
    ind: FixedBitSet,
    bases: Vec<usize>,
    basis_set: FixedBitSet,
    circuits: Vec<usize>,
    circuit_set: FixedBitSet,
}

type Check = Option<Vec<String>>;

impl Ctx<'_> {
    fn name(&self, xs: &[usize]) -> Vec<String> {
        self.m.names(xs)
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.m.leq(x, y)
    }

    fn atoms(&self) -> &[usize] {
        self.m.atoms()
    }

    fn cl1(&self) -> Check {
        (0..self.m.len())
            .find(|&x| !self.leq(x, self.cl[x]))
            .map(|x| self.name(&[x, self.cl[x]]))
    }

    fn cl2(&self) -> Check {
        for x in 0..self.m.len() {
            for y in self.m.poset().up_set(x).ones() {
                if !self.leq(self.cl[x], self.cl[y]) {
                    return Some(self.name(&[x, y]));
                }
            }
        }
        None
    }

    fn cl3(&self) -> Check {
        (0..self.m.len())
            .find(|&x| self.cl[self.cl[x]] != self.cl[x])
            .map(|x| self.name(&[x]))
    }

    fn cl4(&self) -> Check {
        let atoms = self.atoms();
        for x in 0..self.m.len() {
            for &b in atoms {
                for u in self.m.join(x, b) {
                    let cu = self.cl[u];
                    for &a in atoms {
                        if !self.leq(a, cu) || self.leq(a, self.cl[x]) {
                            continue;
                        }
                        let ok = self
                            .m
                            .join(x, a)
                            .into_iter()
                            .any(|v| self.leq(v, cu) && self.leq(b, self.cl[v]));
                        if !ok {
                            return Some(self.name(&[x, a, b, u]));
                        }
                    }
                }
            }
        }
        None
    }

    fn b1(&self) -> Check {
        self.bases.is_empty().then(Vec::new)
    }

    fn b2(&self) -> Check {
        let sp = self.m.simplicial();
        for &x in &self.bases {
            for &y in &self.bases {
                if x == y {
                    continue;
                }
                for &a in self.atoms() {
                    if !self.leq(a, x) || self.leq(a, y) {
                        continue;
                    }
                    let xa = sp.complement(x, a).expect("a ≤ x");
                    let ok = self.atoms().iter().any(|&b| {
                        if !self.leq(b, y) || self.leq(b, x) {
                            return false;
                        }
                        let joins = self.m.join(xa, b);
                        !joins.is_empty() && joins.iter().all(|&u| self.basis_set.contains(u))
                    });
                    if !ok {
                        return Some(self.name(&[x, y, a]));
                    }
                }
            }
        }
        None
    }

    fn c1(&self) -> Check {
        self.circuit_set
            .contains(self.m.bottom())
            .then(|| self.name(&[self.m.bottom()]))
    }

    fn c2(&self) -> Check {
        for &x in &self.circuits {
            for &y in &self.circuits {
                if x != y && self.leq(x, y) {
                    return Some(self.name(&[x, y]));
                }
            }
        }
        None
    }

    fn c3(&self) -> Check {
        for &x in &self.circuits {
            for &y in &self.circuits {
                if x == y {
                    continue;
                }
                for u in self.m.join(x, y) {
                    for &a in self.atoms() {
                        if !(self.leq(a, x) && self.leq(a, y)) {
                            continue;
                        }
                        let ok = self
                            .circuits
                            .iter()
                            .any(|&z| self.leq(z, u) && !self.leq(a, z));
                        if !ok {
                            return Some(self.name(&[x, y, u, a]));
                        }
                    }
                }
            }
        }
        None
    }

    fn circuit_shape(&self) -> Check {
        for &c in &self.circuits {
            if self.m.rho(c) + 1 != self.m.size(c) {
                return Some(self.name(&[c]));
            }
            for y in self.m.poset().down_set(c).ones() {
                if y != c && !self.ind.contains(y) {
                    return Some(self.name(&[c, y]));
                }
            }
        }
        None
    }

    fn basis_rank(&self) -> Check {
        let maxima = self.m.poset().maximal_elements();
        let r = self.m.rho(maxima[0]);
        self.bases
            .iter()
            .find(|&&b| self.m.rho(b) != r)
            .map(|&b| self.name(&[b]))
    }

    fn rk1(&self) -> Check {
        for x in 0..self.m.len() {
            for &a in self.atoms() {
                for u in self.m.join(x, a) {
                    let (rx, ru) = (self.m.rho(x), self.m.rho(u));
                    if ru < rx || ru > rx + 1 {
                        return Some(self.name(&[x, a, u]));
                    }
                }
            }
        }
        None
    }

    /// Every `⋁T` lies inside one class of elements with equal atom sets,
    /// so comparing ρ within those classes covers all `T ⊆ S`.
    fn rk2(&self) -> Check {
        let sp = self.m.simplicial();
        for u in 0..self.m.len() {
            for v in u + 1..self.m.len() {
                if sp.atoms_below(u) == sp.atoms_below(v) && self.m.rho(u) != self.m.rho(v) {
                    return Some(self.name(&[u, v]));
                }
            }
        }
        None
    }

    fn rk3(&self) -> Check {
        let maxima = self.m.poset().maximal_elements();
        let r = self.m.rho(maxima[0]);
        maxima
            .iter()
            .find(|&&u| self.m.rho(u) != r)
            .map(|&u| self.name(&[maxima[0], u]))
    }

    fn local_flats(&self) -> Check {
        let p = self.m.poset();
        for x in self.flats.ones() {
            for y in p.down_set(x).ones() {
                // closure of y inside the Boolean lattice S≤x
                let r = self.m.rho(y);
                let mut local_max = p.up_set(y).clone();
                local_max.intersect_with(p.down_set(x));
                let candidates: Vec<usize> = local_max
                    .ones()
                    .filter(|&z| self.m.rho(z) == r)
                    .filter(|&z| {
                        p.upper_covers(z)
                            .iter()
                            .all(|&w| !local_max.contains(w) || self.m.rho(w) != r)
                    })
                    .collect();
                let local_flat = candidates == [y];
                if local_flat != self.flats.contains(y) {
                    return Some(self.name(&[x, y]));
                }
            }
        }
        None
    }

    fn closure2(&self) -> Check {
        let p = self.m.poset();
        for x in 0..self.m.len() {
            for y in 0..self.m.len() {
                let mut bounds = p.common_upper_bounds(&[self.cl[x], self.cl[y]]);
                bounds.intersect_with(&self.flats);
                let flat_joins = bounds.ones().filter(|&u| {
                    let mut below = p.down_set(u).clone();
                    below.intersect_with(&bounds);
                    below.count_ones(..) == 1
                });
                let joins = self.m.join(x, y);
                for u in flat_joins {
                    if !joins.iter().any(|&v| self.cl[v] == u) {
                        return Some(self.name(&[x, y, u]));
                    }
                }
            }
        }
        None
    }
}

/// Re-verifies CL1–CL4, B1–B2, C1–C3, the rank properties of joins with
/// atoms, equal-rank joins and maxima, local flats, and lifting of flat joins.
pub fn check_derived_axioms(m: &MatroidScheme) -> DerivedReport {
    let n = m.len();
    let mut cl = Vec::with_capacity(n);
    let mut closure_failure = None;
    for x in 0..n {
        match m.try_closure(x) {
            Ok(c) => cl.push(c),
            Err(cands) => {
                let mut w = vec![m.id(x).to_string()];
                w.extend(m.names(&cands));
                closure_failure.get_or_insert(w);
                cl.push(x);
            }
        }
    }
    let mut flats = FixedBitSet::with_capacity(n);
    let mut ind = FixedBitSet::with_capacity(n);
    for x in 0..n {
        if cl[x] == x {
            flats.insert(x);
        }
        if m.rho(x) == m.size(x) {
            ind.insert(x);
        }
    }
    let p = m.poset();
    let bases: Vec<usize> = ind
        .ones()
        .filter(|&x| p.upper_covers(x).iter().all(|&y| !ind.contains(y)))
        .collect();
    let circuits: Vec<usize> = (0..n)
        .filter(|&x| !ind.contains(x) && p.lower_covers(x).iter().all(|&y| ind.contains(y)))
        .collect();
    let to_set = |xs: &[usize]| {
        let mut s = FixedBitSet::with_capacity(n);
        for &x in xs {
            s.insert(x);
        }
        s
    };
    let ctx = Ctx {
        m,
        basis_set: to_set(&bases),
        circuit_set: to_set(&circuits),
        cl,
        flats,
        ind,
        bases,
        circuits,
    };

    let closure_based = |check: &dyn Fn(&Ctx) -> Check| match &closure_failure {
        Some(w) => Some(w.clone()),
        None => check(&ctx),
    };
    let results = vec![
        ("CL1", closure_based(&|c| c.cl1())),
        ("CL2", closure_based(&|c| c.cl2())),
        ("CL3", closure_based(&|c| c.cl3())),
        ("CL4", closure_based(&|c| c.cl4())),
        ("B1", ctx.b1()),
        ("B2", ctx.b2()),
        ("BASIS-RANK", ctx.basis_rank()),
        ("C1", ctx.c1()),
        ("C2", ctx.c2()),
        ("C3", ctx.c3()),
        ("CIRCUIT-SHAPE", ctx.circuit_shape()),
        ("RK1", ctx.rk1()),
        ("RK2", ctx.rk2()),
        ("RK3", ctx.rk3()),
        ("LOCAL-FLATS", closure_based(&|c| c.local_flats())),
        ("CLOSURE-JOIN", closure_based(&|c| c.closure2())),
    ];
    DerivedReport {
        results: results
            .into_iter()
            .map(|(name, witness)| PropertyResult { name, witness })
            .collect(),
    }
}
