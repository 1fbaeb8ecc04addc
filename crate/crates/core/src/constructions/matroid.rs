use num_bigint::BigInt;
use num_traits::Zero;

use super::ConstructionError;
use crate::axioms::{set_name, Axiom, AxiomViolation};
use crate::poset::Poset;
use crate::scheme::MatroidScheme;

const MAX_GROUND: usize = 20;

/// A matroid on a small ground set, with the rank of every subset stored by
/// bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: Vec<String>,
    rank: Vec<usize>,
}

impl Matroid {
    /// Checks R1–R3. Submodularity is checked in its local form
    /// `ρ(X+a) + ρ(X+b) ≥ ρ(X+a+b) + ρ(X)`, which is equivalent for integer
    /// rank functions; the witness is the pair `(X+a, X+b)`.
    pub fn new(ground: Vec<String>, rank: Vec<usize>) -> Result<Self, ConstructionError> {
        let n = ground.len();
        if n > MAX_GROUND {
            return Err(ConstructionError::VertexCap { vertices: n, cap: MAX_GROUND });
        }
        if rank.len() != 1 << n {
            return Err(ConstructionError::Invalid(format!(
                "expected {} rank values, got {}",
                1usize << n,
                rank.len()
            )));
        }
        let m = Self { ground, rank };
        let name = |s: usize| m.subset_name(s);
        for s in 0..1usize << n {
            if m.rank[s] > s.count_ones() as usize {
                return Err(AxiomViolation::new(Axiom::R1, vec![name(s)], "ρ(X) > |X|").into());
            }
        }
        for s in 0..1usize << n {
            for e in 0..n {
                if s & (1 << e) == 0 && m.rank[s] > m.rank[s | 1 << e] {
                    return Err(AxiomViolation::new(Axiom::R2, vec![name(s), name(s | 1 << e)], "ρ(X) > ρ(Y) for X ⊆ Y").into());
                }
            }
        }
        for s in 0..1usize << n {
            for a in 0..n {
                for b in a + 1..n {
                    if s & (1 << a | 1 << b) != 0 {
                        continue;
                    }
                    let (sa, sb, sab) = (s | 1 << a, s | 1 << b, s | 1 << a | 1 << b);
                    if m.rank[sa] + m.rank[sb] < m.rank[sab] + m.rank[s] {
                        return Err(AxiomViolation::new(
                            Axiom::R3,
                            vec![name(sa), name(sb)],
                            "ρ(X) + ρ(Y) < ρ(X∪Y) + ρ(X∩Y)",
                        )
                        .into());
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// `ρ` of the subset with bitmask `s`.
    pub fn rank_of(&self, s: usize) -> usize {
        self.rank[s]
    }

    pub fn rank(&self) -> usize {
        self.rank[(1 << self.len()) - 1]
    }

    pub fn subset_name(&self, s: usize) -> String {
        let names: Vec<&str> = (0..self.len())
            .filter(|&e| s & (1 << e) != 0)
            .map(|e| self.ground[e].as_str())
            .collect();
        set_name(&names)
    }
}

/// `U_{r,n}` on `1..=n`.
pub fn uniform_matroid(r: usize, n: usize) -> Result<Matroid, ConstructionError> {
    if r > n {
        return Err(ConstructionError::Invalid(format!("U_{{{r},{n}}} needs r ≤ n")));
    }
    if n > MAX_GROUND {
        return Err(ConstructionError::VertexCap { vertices: n, cap: MAX_GROUND });
    }
    let ground = (1..=n).map(|i| i.to_string()).collect();
    let rank = (0..1usize << n).map(|s| (s.count_ones() as usize).min(r)).collect();
    Matroid::new(ground, rank)
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub(crate) fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// The column matroid of an integer matrix given by its columns.
pub fn linear_matroid(names: Vec<String>, columns: &[Vec<i64>]) -> Result<Matroid, ConstructionError> {
    if names.len() != columns.len() {
        return Err(ConstructionError::Invalid("one name per column".into()));
    }
    if let Some(d) = columns.first().map(Vec::len) {
        if columns.iter().any(|c| c.len() != d) {
            return Err(ConstructionError::Invalid("columns have different lengths".into()));
        }
    }
    let n = columns.len();
    if n > MAX_GROUND {
        return Err(ConstructionError::VertexCap { vertices: n, cap: MAX_GROUND });
    }
    let rank = (0..1usize << n)
        .map(|s| {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .filter(|&e| s & (1 << e) != 0)
                .map(|e| columns[e].iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            integer_rank(&rows)
        })
        .collect();
    Matroid::new(names, rank)
}

/// The matroid as a scheme on the Boolean lattice of its ground set. Subsets
/// are ordered by size, then lexicographically by position.
pub fn scheme_from_matroid(m: &Matroid) -> MatroidScheme {
    let n = m.len();
    let mut masks: Vec<usize> = (0..1usize << n).collect();
    let positions = |s: usize| (0..n).filter(|&e| s & (1 << e) != 0).collect::<Vec<_>>();
    masks.sort_by_key(|&s| (s.count_ones(), positions(s)));
    let mut index = vec![0usize; 1 << n];
    for (i, &s) in masks.iter().enumerate() {
        index[s] = i;
    }
    let mut covers = Vec::new();
    for &s in &masks {
        for e in 0..n {
            if s & (1 << e) == 0 {
                covers.push((index[s], index[s | 1 << e]));
            }
        }
    }
    let ids = masks.iter().map(|&s| m.subset_name(s)).collect();
    let rho = masks.iter().map(|&s| m.rank_of(s)).collect();
    let poset = Poset::from_indices(ids, &covers).expect("Boolean lattice");
    MatroidScheme::new(poset, rho).expect("a matroid is a matroid scheme")
}
