//! Tutte polynomials of matroid schemes and the characteristic-polynomial
//! identity for loopless schemes.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polynomial::{BivariatePolynomial, UnivariatePolynomial};
use crate::scheme::{MatroidScheme, SchemeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TutteError {
    #[error("scheme has loops: {}", .0.join(", "))]
    HasLoops(Vec<String>),
    /// The recursion reached a minor that fails the scheme axioms, so the
    /// recurrence does not apply to it.
    #[error("minor on {{{}}} is not a matroid scheme: {reason}", .elements.join(","))]
    MinorNotAScheme { elements: Vec<String>, reason: String },
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `Σ_{(i,j)} c_{ij} (x−1)^i (y−1)^j`, expanded.
pub fn shifted_expansion(counts: &BTreeMap<(u32, u32), BigInt>) -> BivariatePolynomial {
    let mut out = BivariatePolynomial::zero();
    for (&(i, j), c) in counts {
        let (bi, bj) = (binomial_row(i), binomial_row(j));
        for (p, cp) in bi.iter().enumerate() {
            for (q, cq) in bj.iter().enumerate() {
                let sign = if (i as usize - p + j as usize - q).is_multiple_of(2) { 1 } else { -1 };
                out.add_term(p as u32, q as u32, c * cp * cq * sign);
            }
        }
    }
    out
}

/// `Σ_w (x−1)^{ρ(M)−ρ(w)} (y−1)^{|w|−ρ(w)}`.
pub fn tutte_direct(m: &MatroidScheme) -> BivariatePolynomial {
    let r = m.rank();
    let mut counts = BTreeMap::new();
    for w in 0..m.len() {
        let key = ((r - m.rho(w)) as u32, (m.size(w) - m.rho(w)) as u32);
        *counts.entry(key).or_insert_with(BigInt::zero) += 1;
    }
    shifted_expansion(&counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TutteCase {
    Ordinary,
    Loop,
    Isthmus,
}

/// A minor of the scheme given by its element set: `S≥r` minus the up-sets of
/// some atoms. The root `r` is the unique minimal member.
struct Engine<'a> {
    m: &'a MatroidScheme,
    priority: Vec<usize>,
    memo: HashMap<FixedBitSet, BivariatePolynomial>,
}

impl Engine<'_> {
    fn root(&self, view: &FixedBitSet) -> usize {
        view.ones()
            .min_by_key(|&w| (self.m.size(w), w))
            .expect("views are nonempty")
    }

    fn classify(&self, view: &FixedBitSet, root: usize, a: usize) -> TutteCase {
        let m = self.m;
        let base = m.rho(root);
        if m.rho(a) == base {
            return TutteCase::Loop;
        }
        let p = m.poset();
        // constant on maximal members when the view is a scheme
        let rank = view.ones().map(|w| m.rho(w)).max().expect("views are nonempty") - base;
        let size0 = m.size(root);
        let all_bases_above = view
            .ones()
            .filter(|&w| m.rho(w) - base == rank && m.size(w) - size0 == rank)
            .all(|w| p.leq(a, w));
        if all_bases_above {
            TutteCase::Isthmus
        } else {
            TutteCase::Ordinary
        }
    }

    fn check(&self, view: &FixedBitSet, root: usize) -> Result<(), TutteError> {
        if view.count_ones(..) == self.m.len() {
            return Ok(());
        }
        let keep: Vec<usize> = view.ones().collect();
        self.m
            .sub_scheme(&keep, self.m.rho(root))
            .map(|_| ())
            .map_err(|e| TutteError::MinorNotAScheme {
                elements: keep.iter().map(|&w| self.m.id(w).to_string()).collect(),
                reason: e.to_string(),
            })
    }

    fn eval(&mut self, view: FixedBitSet) -> Result<BivariatePolynomial, TutteError> {
        if let Some(t) = self.memo.get(&view) {
            return Ok(t.clone());
        }
        let root = self.root(&view);
        let result = if view.count_ones(..) == 1 {
            BivariatePolynomial::one()
        } else {
            self.check(&view, root)?;
            let p = self.m.poset();
            let mut atoms: Vec<usize> = p
                .upper_covers(root)
                .iter()
                .copied()
                .filter(|&a| view.contains(a))
                .collect();
            atoms.sort_by_key(|&a| self.priority[a]);
            let cases: Vec<TutteCase> = atoms
                .iter()
                .map(|&a| self.classify(&view, root, a))
                .collect();
            let pick = |want: TutteCase| atoms.iter().zip(&cases).find(|(_, &c)| c == want).map(|(&a, _)| a);
            let (a, case) = pick(TutteCase::Ordinary)
                .map(|a| (a, TutteCase::Ordinary))
                .or_else(|| pick(TutteCase::Loop).map(|a| (a, TutteCase::Loop)))
                .or_else(|| pick(TutteCase::Isthmus).map(|a| (a, TutteCase::Isthmus)))
                .expect("a non-singleton view has an atom");
            let mut del = view.clone();
            del.difference_with(p.up_set(a));
            let mut con = view.clone();
            con.intersect_with(p.up_set(a));
            match case {
                TutteCase::Ordinary => &self.eval(del)? + &self.eval(con)?,
                TutteCase::Loop => &BivariatePolynomial::y() * &self.eval(con)?,
                TutteCase::Isthmus => {
                    let xm1 = &BivariatePolynomial::x() - &BivariatePolynomial::one();
                    &(&xm1 * &self.eval(del)?) + &self.eval(con)?
                }
            }
        };
        self.memo.insert(view, result.clone());
        Ok(result)
    }
}

/// Deletion-contraction with the first ordinary atom in declaration order,
/// then loops, then isthmuses. Every minor met on the way is validated;
/// the first one that is not a scheme is reported.
pub fn tutte_delcon(m: &MatroidScheme) -> Result<BivariatePolynomial, TutteError> {
    let priority: Vec<usize> = (0..m.len()).collect();
    tutte_delcon_with_priority(m, &priority)
}

/// As [`tutte_delcon`], but atoms are tried in increasing `priority[a]`.
pub fn tutte_delcon_with_priority(m: &MatroidScheme, priority: &[usize]) -> Result<BivariatePolynomial, TutteError> {
    assert_eq!(priority.len(), m.len());
    let mut engine = Engine {
        m,
        priority: priority.to_vec(),
        memo: HashMap::new(),
    };
    let mut all = FixedBitSet::with_capacity(m.len());
    all.insert_range(..);
    engine.eval(all)
}

/// One application of the recurrence at atom `a`, with both minors'
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelConStep {
    pub case: TutteCase,
    pub deletion: BivariatePolynomial,
    pub contraction: BivariatePolynomial,
    pub combined: BivariatePolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DelConError {
    #[error(transparent)]
    Minor(#[from] SchemeError),
    #[error(transparent)]
    Tutte(#[from] TutteError),
}

pub fn delcon_step(m: &MatroidScheme, a: usize) -> Result<DelConStep, DelConError> {
    let deletion = tutte_delcon(&m.delete(a)?)?;
    let contraction = tutte_delcon(&m.contract(a)?)?;
    let case = if m.is_loop(a) {
        TutteCase::Loop
    } else if m.is_isthmus(a) {
        TutteCase::Isthmus
    } else {
        TutteCase::Ordinary
    };
    let combined = match case {
        TutteCase::Ordinary => &deletion + &contraction,
        TutteCase::Loop => &BivariatePolynomial::y() * &contraction,
        TutteCase::Isthmus => {
            let xm1 = &BivariatePolynomial::x() - &BivariatePolynomial::one();
            &(&xm1 * &deletion) + &contraction
        }
    };
    Ok(DelConStep {
        case,
        deletion,
        contraction,
        combined,
    })
}

/// `(T(1,1), T(2,2))`, asserted equal to `(|B(M)|, |S|)`.
pub fn tutte_point_checks(m: &MatroidScheme) -> (BigInt, BigInt) {
    let t = tutte_direct(m);
    let t11 = t.evaluate_i64(1, 1);
    let t22 = t.evaluate_i64(2, 2);
    assert_eq!(t11, BigInt::from(m.bases().len()), "T(1,1) = |B(M)|");
    assert_eq!(t22, BigInt::from(m.len()), "T(2,2) = |S|");
    (t11, t22)
}

/// `χ_F(t)` computed by Möbius inversion on the flats and as
/// `(−1)^ρ(M) T(1−t, 0)`; both routes and the pointwise Möbius formula are
/// asserted to agree.
pub fn charpoly_identity(m: &MatroidScheme) -> Result<UnivariatePolynomial, TutteError> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(TutteError::HasLoops(
            loops.iter().map(|&a| m.id(a).to_string()).collect(),
        ));
    }
    let (flats, map) = m.flats_with_map();
    let by_moebius = flats
        .characteristic_polynomial()
        .expect("flats have constant rank on maxima");
    let mut by_tutte = tutte_direct(m).at_one_minus_t_zero();
    if m.rank() % 2 == 1 {
        by_tutte = &by_tutte * &UnivariatePolynomial::constant(-1);
    }
    assert_eq!(by_moebius, by_tutte, "χ_F(t) = (−1)^ρ T(1−t, 0)");

    let mu = flats.mobius();
    let mut sums: HashMap<usize, BigInt> = HashMap::new();
    for u in 0..m.len() {
        let sign = if m.size(u).is_multiple_of(2) { 1 } else { -1 };
        *sums.entry(m.closure(u)).or_insert_with(BigInt::zero) += sign;
    }
    for (i, &w) in map.iter().enumerate() {
        assert_eq!(mu[i], sums.get(&w).cloned().unwrap_or_default(), "μ_F(w) = Σ_{{cl(u)=w}} (−1)^|u|");
    }
    Ok(by_moebius)
}
