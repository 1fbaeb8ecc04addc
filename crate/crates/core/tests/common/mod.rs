#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mscheme::axioms::Axiom;
use mscheme::constructions::{
    dowling_poset, linear_matroid, quotient_scheme, scheme_from_matroid, scheme_from_semimatroid, uniform_matroid,
    FiniteGroup, GroupAction, Semimatroid,
};
use mscheme::io::{read_json, ArrangementFile, SchemeFile};
use mscheme::poset::Poset;
use mscheme::scheme::MatroidScheme;
use mscheme::toric::{layers_poset, ToricArrangement};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn scheme_file(name: &str) -> SchemeFile {
    read_json(&fixtures_dir().join(format!("{name}.json"))).unwrap()
}

pub fn fixture(name: &str) -> MatroidScheme {
    scheme_file(name).scheme().unwrap().unwrap()
}

pub fn fixture_poset(name: &str) -> Poset {
    scheme_file(name).poset().unwrap().unwrap()
}

pub fn arrangement(name: &str) -> ToricArrangement {
    let f: ArrangementFile = read_json(&fixtures_dir().join(format!("{name}.json"))).unwrap();
    f.arrangement().unwrap().unwrap()
}

pub const SCHEME_FIXTURES: [&str; 9] =
    ["isth", "cw_l", "cw_r", "nonpos", "singleton", "dow_triv", "dow_nontriv", "qfix", "qfix2"];

pub fn fixture_schemes() -> Vec<(String, MatroidScheme)> {
    SCHEME_FIXTURES.iter().map(|n| (n.to_string(), fixture(n))).collect()
}

pub fn z2_on(points: &[&str], g: &[usize]) -> GroupAction {
    let pts: Vec<String> = points.iter().map(|s| s.to_string()).collect();
    let id: Vec<usize> = (0..pts.len()).collect();
    GroupAction::new(FiniteGroup::cyclic(2), pts, vec![id, g.to_vec()]).unwrap()
}

fn primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1
}

pub fn random_arrangement(rng: &mut ChaCha8Rng, n: usize, count: usize, max_den: i64) -> Option<ToricArrangement> {
    let mut pairs = Vec::new();
    let mut tries = 0;
    while pairs.len() < count && tries < 100 {
        tries += 1;
        let alpha: Vec<i64> = (0..n)
            .map(|_| if rng.gen_bool(0.15) { 2 * [-1, 1][rng.gen_range(0..2)] } else { rng.gen_range(-1..=1) })
            .collect();
        if !primitive(&alpha) {
            continue;
        }
        let d = rng.gen_range(1..=max_den);
        let t = Rational64::new(rng.gen_range(0..d), d);
        pairs.push((alpha, t));
    }
    ToricArrangement::from_pairs(n, &pairs).ok()
}

pub fn random_arrangements(seed: u64, count: usize) -> Vec<ToricArrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=if n == 1 { 3 } else { 5 });
        if let Some(a) = random_arrangement(&mut rng, n, k, 4) {
            out.push(a);
        }
    }
    out
}

/// Semimatroid with `k` parallel pairs, rank `min(|f|, r)` on partial
/// transversals.
fn paired_semimatroid(k: usize, r: usize) -> Option<Semimatroid> {
    let names: Vec<String> = (0..k).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
    let facets: Vec<Vec<usize>> = (0..1usize << k)
        .map(|mask| (0..k).map(|i| 2 * i + (mask >> i & 1)).collect())
        .collect();
    Semimatroid::from_facets(names, &facets, |f| f.len().min(r)).ok()
}

fn base_schemes(rng: &mut ChaCha8Rng) -> Vec<(String, MatroidScheme)> {
    let mut out = Vec::new();
    for n in 0..=5 {
        for r in 0..=n {
            out.push((format!("U{r},{n}"), scheme_from_matroid(&uniform_matroid(r, n).unwrap())));
        }
    }
    for i in 0..20 {
        let (d, n) = [(2, 4), (3, 4), (3, 5), (2, 5)][i % 4];
        let cols: Vec<Vec<i64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        let names = (0..n).map(|j| format!("e{j}")).collect();
        out.push((format!("linear{cols:?}"), scheme_from_matroid(&linear_matroid(names, &cols).unwrap())));
    }
    for k in 1..=3 {
        for r in 1..=k {
            let Some(sm) = paired_semimatroid(k, r) else { continue };
            out.push((format!("semi{k},{r}"), scheme_from_semimatroid(&sm)));
            let pts: Vec<String> = sm.vertices().to_vec();
            let names: Vec<&str> = pts.iter().map(String::as_str).collect();
            let all: Vec<usize> = (0..2 * k).map(|j| j ^ 1).collect();
            let first: Vec<usize> = (0..2 * k).map(|j| if j < 2 { j ^ 1 } else { j }).collect();
            for (label, g) in [("all", all), ("first", first)] {
                if let Ok(q) = quotient_scheme(&sm, &z2_on(&names, &g)) {
                    out.push((format!("quotient{k},{r},{label}"), q.scheme));
                }
            }
        }
    }
    for n in 1..=3 {
        let actions = [
            GroupAction::trivial(FiniteGroup::trivial(), vec!["p".into()]),
            GroupAction::trivial(FiniteGroup::cyclic(2), vec!["p".into()]),
            z2_on(&["+", "-"], &[0, 1]),
            z2_on(&["+", "-"], &[1, 0]),
        ];
        for (i, act) in actions.iter().enumerate() {
            if n == 3 && i >= 2 {
                continue;
            }
            if let Ok((_, m)) = dowling_poset(n, act) {
                out.push((format!("dowling{n},{i}"), m));
            }
        }
    }
    for (i, arr) in random_arrangements(rng.gen(), 25).iter().enumerate() {
        if let Ok(lp) = layers_poset(arr) {
            out.push((format!("toric{i}"), lp.scheme));
        }
    }
    out
}

fn random_minor(rng: &mut ChaCha8Rng, m: &MatroidScheme) -> Option<(String, MatroidScheme)> {
    let atoms = m.atoms().to_vec();
    match rng.gen_range(0..3) {
        0 if !atoms.is_empty() => {
            let a = *atoms.choose(rng).unwrap();
            m.delete(a).ok().map(|d| (format!("-{}", m.id(a)), d))
        }
        1 => {
            let x = rng.gen_range(0..m.len());
            m.contract(x).ok().map(|c| (format!("/{}", m.id(x)), c))
        }
        _ => {
            let keep: Vec<usize> = atoms.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
            m.restrict(&keep).ok().map(|r| (format!("|{}", keep.len()), r))
        }
    }
}

/// At least 100 valid schemes of moderate size: base constructions plus
/// random minors of them (only those that are still schemes).
pub fn generated_schemes(seed: u64) -> Vec<(String, MatroidScheme)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<_> = base_schemes(&mut rng).into_iter().filter(|(_, m)| m.len() <= 300).collect();
    let mut out = base.clone();
    for (name, m) in &base {
        let mut cur = (name.clone(), m.clone());
        for _ in 0..2 {
            if let Some((op, next)) = random_minor(&mut rng, &cur.1) {
                cur = (format!("{}{op}", cur.0), next);
                out.push(cur.clone());
            }
        }
    }
    out
}

/// Order relation from the covers by transitive closure.
pub fn brute_leq(p: &Poset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in p.covers() {
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    leq
}

/// First violated axiom of M1–M5 by literal pairwise search, reported with
/// the same witness tuple conventions as the library.
pub fn brute_first_violation(p: &Poset, rho: &[usize]) -> Option<(Axiom, Vec<String>)> {
    let n = p.len();
    let leq = brute_leq(p);
    let atoms: Vec<usize> = (0..n).filter(|&a| (0..n).filter(|&z| leq[z][a]).count() == 2).collect();
    let size = |x: usize| atoms.iter().filter(|&&a| leq[a][x]).count();
    let joins = |x: usize, y: usize| -> Vec<usize> {
        let ub: Vec<usize> = (0..n).filter(|&u| leq[x][u] && leq[y][u]).collect();
        ub.iter().copied().filter(|&u| !ub.iter().any(|&v| v != u && leq[v][u])).collect()
    };
    let meets = |x: usize, y: usize| -> Vec<usize> {
        let lb: Vec<usize> = (0..n).filter(|&l| leq[l][x] && leq[l][y]).collect();
        lb.iter().copied().filter(|&l| !lb.iter().any(|&v| v != l && leq[l][v])).collect()
    };
    let name = |xs: &[usize]| xs.iter().map(|&x| p.id(x).to_string()).collect::<Vec<_>>();

    for x in 0..n {
        if rho[x] > size(x) {
            return Some((Axiom::M1, name(&[x])));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if leq[x][y] && rho[x] > rho[y] {
                return Some((Axiom::M2, name(&[x, y])));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for u in joins(x, y) {
                let m = meets(x, y);
                assert_eq!(m.len(), 1, "joinable elements have a unique meet");
                if rho[x] + rho[y] < rho[u] + rho[m[0]] {
                    return Some((Axiom::M3, name(&[x, y, u, m[0]])));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !joins(x, y).is_empty() {
                continue;
            }
            if let Some(l) = meets(x, y).into_iter().find(|&l| rho[l] == rho[x]) {
                return Some((Axiom::M4, name(&[x, y, l])));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if rho[x] < rho[y] && !atoms.iter().any(|&a| leq[a][y] && !leq[a][x] && !joins(x, a).is_empty()) {
                return Some((Axiom::M5, name(&[x, y])));
            }
        }
    }
    None
}

/// Grid points `k/N` of `(ℝ/ℤ)ⁿ`, as numerator vectors, in mixed-radix
/// order (first coordinate slowest).
pub fn grid(n: usize, big_n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..big_n).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

fn grid_index(p: &[i64], big_n: i64) -> usize {
    p.iter().fold(0i64, |acc, &x| acc * big_n + x) as usize
}

fn grid_point(mut idx: usize, n: usize, big_n: i64) -> Vec<i64> {
    let mut p = vec![0; n];
    for x in p.iter_mut().rev() {
        *x = (idx % big_n as usize) as i64;
        idx /= big_n as usize;
    }
    p
}

/// `t·N` as an integer; panics if the grid is too coarse for the phase.
fn level(t: Rational64, big_n: i64) -> i64 {
    let tn = t * Rational64::from_integer(big_n);
    assert!(tn.is_integer(), "grid too coarse for the phase");
    tn.to_integer()
}

fn on_level_num(alpha: &[i64], tn: i64, p: &[i64], big_n: i64) -> bool {
    let s: i64 = alpha.iter().zip(p).map(|(a, x)| a * x).sum();
    (s - tn).rem_euclid(big_n) == 0
}

/// Does `α·(p/N) ≡ t (mod 1)`? Needs `t·N` integral.
pub fn on_level(alpha: &[i64], t: Rational64, p: &[i64], big_n: i64) -> bool {
    on_level_num(alpha, level(t, big_n), p, big_n)
}

fn small_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * small_det(&minor)
            })
            .sum(),
    }
}

fn subsets<T: Clone>(xs: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![vec![]];
    }
    if xs.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<T>> = subsets(&xs[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, xs[0].clone());
            s
        })
        .collect();
    with.extend(subsets(&xs[1..], k));
    with
}

/// gcd of the `k × k` minors.
fn determinantal_divisor(rows: &[Vec<i64>], n: usize, k: usize) -> i64 {
    let idx: Vec<usize> = (0..rows.len()).collect();
    let cols: Vec<usize> = (0..n).collect();
    let mut g = 0i64;
    for rs in subsets(&idx, k) {
        for cs in subsets(&cols, k) {
            let m: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c]).collect()).collect();
            g = num_integer::gcd(g, small_det(&m));
        }
    }
    g
}

/// Largest elementary divisor of the rows, as a ratio of determinantal
/// divisors. Solutions of `A x ≡ t` have denominators dividing it times
/// the denominator of `t`, so each component of the intersection has such
/// a point.
fn top_elementary_divisor(rows: &[Vec<i64>], n: usize) -> i64 {
    let (k, dk) = rank_and_divisor(rows, n);
    if k == 0 {
        return 1;
    }
    dk / determinantal_divisor(rows, n, k - 1)
}

/// Rank of a list of integer vectors and the gcd of its nonzero maximal
/// minors; `(0, 1)` for the empty list.
fn rank_and_divisor(rows: &[Vec<i64>], n: usize) -> (usize, i64) {
    for k in (1..=n.min(rows.len())).rev() {
        let g = determinantal_divisor(rows, n, k);
        if g != 0 {
            return (k, g);
        }
    }
    (0, 1)
}

/// Integer vectors `v ≠ 0` with `|v_i| ≤ r` and `A v = 0`.
pub fn kernel_vectors(rows: &[Vec<i64>], n: usize, r: i64) -> Vec<Vec<i64>> {
    grid(n, 2 * r + 1)
        .into_iter()
        .map(|p| p.into_iter().map(|x| x - r).collect::<Vec<i64>>())
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| rows.iter().all(|a| a.iter().zip(v).map(|(x, y)| x * y).sum::<i64>() == 0))
        .collect()
}

/// A few short vectors generating `ker A ∩ ℤⁿ`. A full-rank sublattice of
/// the kernel is all of it exactly when its maximal minors are coprime,
/// since the kernel is saturated. Vectors are kept only when they change
/// the rank or that gcd, which leaves the generated lattice unchanged.
pub fn kernel_generators(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let d = n - rank_and_divisor(rows, n).0;
    if d == 0 {
        return vec![];
    }
    for r in 1..=8 {
        let mut kept: Vec<Vec<i64>> = Vec::new();
        let mut state = (0, 1);
        for v in kernel_vectors(rows, n, r) {
            kept.push(v);
            let next = rank_and_divisor(&kept, n);
            if next == state {
                kept.pop();
            } else {
                state = next;
            }
        }
        if state == (d, 1) {
            return kept;
        }
    }
    panic!("no short kernel basis for {rows:?}");
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Sorted grid indices.
pub type GridSet = Vec<usize>;

/// Grid points of `H_{α,t}` at denominator `N`, found by solving for a
/// coordinate where `α` is a unit. Generated characters always have one.
pub fn hypertorus_points(alpha: &[i64], t: Rational64, big_n: i64) -> GridSet {
    let n = alpha.len();
    let j = alpha.iter().position(|a| a.abs() == 1).expect("a unit coefficient");
    let tn = level(t, big_n);
    let free = (big_n as usize).pow(n as u32 - 1);
    let mut out: GridSet = (0..free)
        .map(|k| {
            let rest = grid_point(k, n - 1, big_n);
            let mut p: Vec<i64> = rest[..j].to_vec();
            p.push(0);
            p.extend_from_slice(&rest[j..]);
            let s: i64 = alpha.iter().zip(&p).map(|(a, x)| a * x).sum();
            p[j] = (alpha[j] * (tn - s)).rem_euclid(big_n);
            debug_assert!(on_level_num(alpha, tn, &p, big_n));
            grid_index(&p, big_n)
        })
        .collect();
    out.sort_unstable();
    out
}

/// A layer found on the grid: the component through `point` of the
/// intersection of the characters in `mask`, which are independent.
#[derive(Debug, Clone)]
pub struct GridLayer {
    pub mask: usize,
    pub codim: usize,
    pub point: Vec<Rational64>,
    /// Generators of the integer directions along the layer.
    pub directions: Vec<Vec<i64>>,
    /// Generators of the integer characters constant on the layer.
    pub normals: Vec<Vec<i64>>,
}

fn dot_q(a: &[i64], x: &[Rational64]) -> Rational64 {
    a.iter().zip(x).map(|(&c, &v)| v * c).sum()
}

fn is_integral(x: Rational64) -> bool {
    x.is_integer()
}

impl GridLayer {
    /// Is the layer inside `α·φ ≡ t`?
    pub fn on(&self, alpha: &[i64], t: Rational64) -> bool {
        self.directions.iter().all(|v| alpha.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == 0)
            && is_integral(dot_q(alpha, &self.point) - t)
    }

    /// Is `other` inside this layer? The characters constant here must be
    /// constant on `other`, with the same values.
    pub fn contains(&self, other: &GridLayer) -> bool {
        self.normals.iter().all(|b| other.on(b, dot_q(b, &self.point)))
    }
}

/// Every layer, including the torus, from exhaustive grid enumeration of
/// each intersection of independent characters. Such an intersection
/// `A φ ≡ t` has a point on each component with denominator dividing
/// `D · d`, where `D` is the phase denominator and `d` the top elementary
/// divisor of `A`; every layer is a component of one of them. Grid points
/// of one component differ by `v/N` for integer directions `v`.
pub fn grid_layers(arr: &ToricArrangement) -> Vec<GridLayer> {
    let n = arr.n();
    let chars = arr.characters();
    let zero = Rational64::from_integer(0);
    let mut found: Vec<GridLayer> = vec![GridLayer {
        mask: 0,
        codim: 0,
        point: vec![zero; n],
        directions: kernel_generators(&[], n),
        normals: vec![],
    }];
    for mask in 1..1usize << chars.len() {
        let sel: Vec<usize> = (0..chars.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let rows: Vec<Vec<i64>> = sel.iter().map(|&i| chars[i].alpha.clone()).collect();
        if sel.len() > n || rank_and_divisor(&rows, n).0 != sel.len() {
            continue;
        }
        let d = sel.iter().fold(1i64, |l, &i| num_integer::lcm(l, *chars[i].phase.denom()));
        let big_n = d * top_elementary_divisor(&rows, n);
        let mut inside = hypertorus_points(&chars[sel[0]].alpha, chars[sel[0]].phase, big_n);
        for &i in &sel[1..] {
            let tn = level(chars[i].phase, big_n);
            inside.retain(|&g| on_level_num(&chars[i].alpha, tn, &grid_point(g, n, big_n), big_n));
        }
        let directions = kernel_generators(&rows, n);
        let normals = kernel_generators(&directions, n);
        let mut uf = UnionFind((0..inside.len()).collect());
        for (pos, &i) in inside.iter().enumerate() {
            let p = grid_point(i, n, big_n);
            for v in &directions {
                let q: Vec<i64> = p.iter().zip(v).map(|(x, d)| (x + d).rem_euclid(big_n)).collect();
                let other = inside.binary_search(&grid_index(&q, big_n)).expect("directions stay inside");
                uf.union(pos, other);
            }
        }
        let mut reps = BTreeSet::new();
        for pos in 0..inside.len() {
            let root = uf.find(pos);
            reps.insert(root);
        }
        for r in reps {
            let p = grid_point(inside[r], n, big_n);
            let layer = GridLayer {
                mask,
                codim: sel.len(),
                point: p.iter().map(|&x| Rational64::new(x, big_n)).collect(),
                directions: directions.clone(),
                normals: normals.clone(),
            };
            if !found.iter().any(|f| f.codim == layer.codim && f.contains(&layer)) {
                found.push(layer);
            }
        }
    }
    found
}

/// Direct Tutte sum recomputed from the covers alone.
pub fn brute_tutte(m: &MatroidScheme) -> mscheme::polynomial::BivariatePolynomial {
    use mscheme::polynomial::BivariatePolynomial;
    let p = m.poset();
    let leq = brute_leq(p);
    let n = p.len();
    let atoms: Vec<usize> = (0..n).filter(|&a| (0..n).filter(|&z| leq[z][a]).count() == 2).collect();
    let rank = m.rhos().iter().copied().max().unwrap_or(0);
    let xm1 = &BivariatePolynomial::x() - &BivariatePolynomial::one();
    let ym1 = &BivariatePolynomial::y() - &BivariatePolynomial::one();
    let mut t = BivariatePolynomial::zero();
    for w in 0..n {
        let size = atoms.iter().filter(|&&a| leq[a][w]).count();
        let r = m.rho(w);
        t = &t + &(&xm1.pow((rank - r) as u32) * &ym1.pow((size - r) as u32));
    }
    t
}

fn caught<T>(f: impl FnOnce() -> T) -> Result<T, String> {
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).map_err(|e| {
        e.downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())
    })
}

/// Every derived property of a valid scheme. Returns failure
/// descriptions; empty means all hold.
pub fn scheme_property_failures(m: &MatroidScheme, rng: &mut ChaCha8Rng) -> Vec<String> {
    use mscheme::geometric::validate_geometric_with_cap;
    use mscheme::tutte::{charpoly_identity, tutte_delcon_with_priority, tutte_direct};

    let mut fails = Vec::new();
    if let Some(v) = brute_first_violation(m.poset(), m.rhos()) {
        fails.push(format!("brute validator: {v:?}"));
    }
    let report = m.clone();
    for r in mscheme::scheme::check_derived_axioms(&report).failures() {
        fails.push(format!("{} at {:?}", r.name, r.witness));
    }
    for &a in m.atoms() {
        let l = m.loop_conditions(a);
        if l[0] != l[1] || l[1] != l[2] {
            fails.push(format!("loop conditions disagree at {}: {l:?}", m.id(a)));
        }
        let i = m.isthmus_conditions(a);
        if i[0] != i[1] || i[1] != i[2] {
            fails.push(format!("isthmus conditions disagree at {}: {i:?}", m.id(a)));
        }
    }
    let direct = tutte_direct(m);
    if direct != brute_tutte(m) {
        fails.push("tutte_direct differs from the sum over covers".into());
    }
    for _ in 0..3 {
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.shuffle(rng);
        match tutte_delcon_with_priority(m, &order) {
            Ok(t) if t == direct => {}
            Ok(t) => fails.push(format!("deletion-contraction gave {t}, direct {direct}")),
            Err(e) => fails.push(format!("deletion-contraction: {e}")),
        }
    }
    let (t11, t22) = (direct.evaluate_i64(1, 1), direct.evaluate_i64(2, 2));
    if t11 != m.bases().len().into() || t22 != m.len().into() {
        fails.push(format!("point checks ({t11}, {t22}) vs ({}, {})", m.bases().len(), m.len()));
    }
    if m.loops().is_empty() {
        if let Err(e) = caught(|| charpoly_identity(m)) {
            fails.push(format!("characteristic polynomial identity: {e}"));
        }
    }
    if let Err(e) = validate_geometric_with_cap(m.flats(), usize::MAX) {
        fails.push(format!("flats not geometric: {e}"));
    }
    fails
}

/// Round trips between schemes, geometric posets and independence data.
pub fn cryptomorphism_failures(m: &MatroidScheme) -> Vec<String> {
    use mscheme::geometric::{scheme_from_geometric, validate_geometric_with_cap};
    use mscheme::poset::find_isomorphism;
    use mscheme::scheme::{find_scheme_isomorphism, scheme_from_independence};

    let mut fails = Vec::new();
    match validate_geometric_with_cap(m.flats(), usize::MAX) {
        Ok(gp) => {
            let built = scheme_from_geometric(&gp);
            if find_isomorphism(&built.flats(), gp.ranked()).is_none() {
                fails.push("flats(scheme_from_geometric(P)) is not P".into());
            }
            if m.is_simple() && find_scheme_isomorphism(&built, m).is_none() {
                fails.push("scheme_from_geometric(flats(M)) is not M".into());
            }
        }
        Err(e) => fails.push(format!("flats not geometric: {e}")),
    }
    match scheme_from_independence(m.simplicial().clone(), &m.independents()) {
        Ok(back) if &back == m => {}
        Ok(_) => fails.push("independence round trip changed the scheme".into()),
        Err(e) => fails.push(format!("independence round trip: {e}")),
    }
    fails
}

/// Layer count and order of the layers poset against [`grid_layers`]. A
/// library layer matches a grid layer when both have the same codimension
/// and the grid layer satisfies its equations; the library lattice must be
/// saturated, so the layer is connected and the match exact.
pub fn grid_oracle_failures(arr: &ToricArrangement) -> Vec<String> {
    let Ok(lp) = layers_poset(arr) else {
        return vec!["layers_poset failed".into()];
    };
    let brute = grid_layers(arr);
    let mut fails = Vec::new();
    if brute.len() != lp.layers.len() {
        fails.push(format!("{} layers, grid finds {}", lp.layers.len(), brute.len()));
    }
    let mut image = Vec::new();
    for l in &lp.layers {
        let rows: Vec<Vec<i64>> = l.lattice().to_vec();
        if rank_and_divisor(&rows, arr.n()) != (rows.len(), 1) {
            fails.push(format!("layer {} has a non-saturated lattice", l.id()));
        }
        let hits: Vec<usize> = (0..brute.len())
            .filter(|&g| brute[g].codim == rows.len() && rows.iter().zip(l.phases()).all(|(r, &t)| brute[g].on(r, t)))
            .collect();
        match hits[..] {
            [g] => image.push(g),
            _ => {
                fails.push(format!("layer {} matches {} grid layers", l.id(), hits.len()));
                return fails;
            }
        }
    }
    if image.iter().collect::<BTreeSet<_>>().len() != image.len() {
        fails.push("two layers match the same grid layer".into());
    }
    let p = lp.poset.poset();
    for i in 0..image.len() {
        for j in 0..image.len() {
            if p.leq(i, j) != brute[image[i]].contains(&brute[image[j]]) {
                fails.push(format!("order disagrees at ({}, {})", lp.layers[i].id(), lp.layers[j].id()));
            }
        }
    }
    fails
}

/// Brute-force order data of a poset: `leq`, atoms, joins and meets.
pub struct Brute {
    pub leq: Vec<Vec<bool>>,
    pub atoms: Vec<usize>,
}

impl Brute {
    pub fn new(p: &Poset) -> Self {
        let leq = brute_leq(p);
        let n = p.len();
        let atoms = (0..n).filter(|&a| (0..n).filter(|&z| leq[z][a]).count() == 2).collect();
        Self { leq, atoms }
    }

    fn n(&self) -> usize {
        self.leq.len()
    }

    pub fn joins(&self, t: &[usize]) -> Vec<usize> {
        let ub: Vec<usize> = (0..self.n()).filter(|&u| t.iter().all(|&x| self.leq[x][u])).collect();
        ub.iter().copied().filter(|&u| !ub.iter().any(|&v| v != u && self.leq[v][u])).collect()
    }

    pub fn meets(&self, x: usize, y: usize) -> Vec<usize> {
        let lb: Vec<usize> = (0..self.n()).filter(|&l| self.leq[l][x] && self.leq[l][y]).collect();
        lb.iter().copied().filter(|&l| !lb.iter().any(|&v| v != l && self.leq[l][v])).collect()
    }

    pub fn height(&self, x: usize) -> usize {
        // longest chain from the bottom, by brute recursion over the order
        let below: Vec<usize> = (0..self.n()).filter(|&y| y != x && self.leq[y][x]).collect();
        below.iter().map(|&y| self.height(y) + 1).max().unwrap_or(0)
    }
}

/// Does the reported witness really violate the named axiom?
pub fn witness_violates(p: &Poset, rho: Option<&[usize]>, axiom: Axiom, witness: &[String]) -> bool {
    let b = Brute::new(p);
    let idx = |s: &str| p.index_of(s).unwrap_or_else(|| panic!("unknown `{s}`"));
    let set = |s: &str| -> Vec<usize> {
        s.trim_matches(|c| c == '{' || c == '}')
            .split(',')
            .filter(|t| !t.is_empty())
            .map(&idx)
            .collect()
    };
    let heights: Vec<usize> = (0..p.len()).map(|x| b.height(x)).collect();
    let r = |x: usize| rho.map_or(heights[x], |r| r[x]);
    match axiom {
        Axiom::M4 => {
            let (x, y, l) = (idx(&witness[0]), idx(&witness[1]), idx(&witness[2]));
            b.meets(x, y).contains(&l) && r(x) == r(l) && b.joins(&[x, y]).is_empty()
        }
        Axiom::M5 => {
            let (x, y) = (idx(&witness[0]), idx(&witness[1]));
            r(x) < r(y) && !b.atoms.iter().any(|&a| b.leq[a][y] && !b.leq[a][x] && !b.joins(&[x, a]).is_empty())
        }
        Axiom::G2 => {
            let (x, atoms, y) = (idx(&witness[0]), set(&witness[1]), idx(&witness[2]));
            atoms.iter().all(|a| b.atoms.contains(a))
                && b.joins(&atoms).contains(&y)
                && r(x) < r(y)
                && r(y) == atoms.len()
                && !atoms.iter().any(|&a| !b.leq[a][x] && !b.joins(&[x, a]).is_empty())
        }
        other => panic!("no re-check for {other:?}"),
    }
}

pub fn semimatroid_fixture(name: &str) -> Semimatroid {
    let f: mscheme::io::SemimatroidFile = read_json(&fixtures_dir().join(format!("{name}.json"))).unwrap();
    f.semimatroid(mscheme::constructions::DEFAULT_VERTEX_CAP).unwrap().unwrap()
}

pub fn action_fixture(group: &str, action: &str) -> GroupAction {
    let g: mscheme::io::GroupFile = read_json(&fixtures_dir().join(format!("{group}.json"))).unwrap();
    let a: mscheme::io::ActionFile = read_json(&fixtures_dir().join(format!("{action}.json"))).unwrap();
    a.action(g.group().unwrap().unwrap()).unwrap().unwrap()
}
