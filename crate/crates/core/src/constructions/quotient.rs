use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;

use super::{scheme_from_semimatroid, ConstructionError, GroupAction, Semimatroid};
use crate::poset::Poset;
use crate::polynomial::BivariatePolynomial;
use crate::scheme::MatroidScheme;
use crate::tutte::{shifted_expansion, tutte_direct};

/// `M/G` together with the orbit data behind `T_{G↷M}`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub scheme: MatroidScheme,
    /// Quotient element of each face, indexed like [`Semimatroid::faces`].
    pub face_orbit: Vec<usize>,
    /// `(A, m_G(A), ρ(A))` with `A` listed as quotient atoms, for every `A`
    /// with `m_G(A) > 0`.
    pub multiplicities: Vec<(Vec<usize>, usize, usize)>,
    /// `Σ_A m_G(A) (x−1)^{ρ(M)−ρ(A)} (y−1)^{|A|−ρ(A)}`.
    pub action_tutte: BivariatePolynomial,
}

impl Quotient {
    /// `m_G(A)` for atoms named by identifier, zero when no face has orbit
    /// set `A`.
    pub fn multiplicity(&self, atoms: &[&str]) -> usize {
        let mut want: Vec<usize> = atoms
            .iter()
            .map(|a| self.scheme.require(a).expect("known atom"))
            .collect();
        want.sort_unstable();
        self.multiplicities
            .iter()
            .find(|(a, _, _)| *a == want)
            .map_or(0, |&(_, m, _)| m)
    }
}

/// Builds `C/G` with `ρ_G(Gx) = ρ(x)` after checking that the action
/// preserves faces and ranks and is translative. Orbits are named
/// `G·<least face>`. Asserts `T_{M/G} = T_{G↷M}`.
pub fn quotient_scheme(sm: &Semimatroid, act: &GroupAction) -> Result<Quotient, ConstructionError> {
    let g = act.group();
    let n = sm.vertices().len();
    let mut point_of = Vec::with_capacity(n);
    for v in sm.vertices() {
        let p = act
            .points()
            .iter()
            .position(|q| q == v)
            .ok_or_else(|| ConstructionError::Action(format!("vertex {v} is not acted on")))?;
        point_of.push(p);
    }
    if act.points().len() != n {
        return Err(ConstructionError::Action("action points differ from the vertices".into()));
    }
    let mut vertex_of = vec![0; n];
    for (v, &p) in point_of.iter().enumerate() {
        vertex_of[p] = v;
    }
    let perm: Vec<Vec<usize>> = (0..g.order())
        .map(|h| (0..n).map(|v| vertex_of[act.act(h, point_of[v])]).collect())
        .collect();
    let apply = |h: usize, f: u64| -> u64 {
        (0..n).filter(|&v| f & (1 << v) != 0).fold(0, |m, v| m | 1 << perm[h][v])
    };

    for &f in sm.faces() {
        for h in 0..g.order() {
            let gf = apply(h, f);
            match sm.rank_of(gf) {
                None => {
                    return Err(ConstructionError::NotComplexInvariant {
                        element: g.name(h).to_string(),
                        face: sm.face_name(f),
                    })
                }
                Some(r) if Some(r) != sm.rank_of(f) => {
                    return Err(ConstructionError::NotRankInvariant {
                        element: g.name(h).to_string(),
                        face: sm.face_name(f),
                    })
                }
                _ => {}
            }
        }
    }
    for v in 0..n {
        for h in 0..g.order() {
            let w = perm[h][v];
            if w != v && sm.is_face(1 << v | 1 << w) {
                return Err(ConstructionError::NotTranslative {
                    vertex: sm.vertices()[v].clone(),
                    element: g.name(h).to_string(),
                });
            }
        }
    }

    let faces = sm.faces();
    let face_index: HashMap<u64, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    // faces are sorted, so the first face met in each orbit is its least member
    let mut face_orbit = vec![usize::MAX; faces.len()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, &f) in faces.iter().enumerate() {
        if face_orbit[i] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(i);
        for h in 0..g.order() {
            face_orbit[face_index[&apply(h, f)]] = k;
        }
    }
    let mut covers = BTreeSet::new();
    for (k, &r) in reps.iter().enumerate() {
        let y = faces[r];
        for v in 0..n {
            if y & (1 << v) != 0 {
                covers.insert((face_orbit[face_index[&(y & !(1 << v))]], k));
            }
        }
    }
    let ids: Vec<String> = reps.iter().map(|&r| format!("G·{}", sm.face_name(faces[r]))).collect();
    let rho: Vec<usize> = reps.iter().map(|&r| sm.rank_of(faces[r]).expect("face")).collect();
    for (i, &f) in faces.iter().enumerate() {
        assert_eq!(sm.rank_of(f), Some(rho[face_orbit[i]]), "ρ_G is well defined");
    }
    let covers: Vec<(usize, usize)> = covers.into_iter().collect();
    let poset = Poset::from_indices(ids, &covers).expect("quotient of a ranked poset is a poset");
    let scheme = MatroidScheme::new(poset, rho)?;

    let vertex_atom: Vec<usize> = (0..n).map(|v| face_orbit[face_index[&(1u64 << v)]]).collect();
    let mut by_set: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for (k, &r) in reps.iter().enumerate() {
        let f = faces[r];
        let mut a: Vec<usize> = (0..n).filter(|&v| f & (1 << v) != 0).map(|v| vertex_atom[v]).collect();
        a.sort_unstable();
        a.dedup();
        let entry = by_set.entry(a).or_insert((0, scheme.rho(k)));
        entry.0 += 1;
        assert_eq!(entry.1, scheme.rho(k), "ρ is constant on ⋁A");
    }
    let rank = scheme.rank();
    let mut counts = BTreeMap::new();
    for (a, &(m, r)) in &by_set {
        *counts.entry(((rank - r) as u32, (a.len() - r) as u32)).or_insert_with(|| BigInt::from(0)) += m;
    }
    let action_tutte = shifted_expansion(&counts);
    assert_eq!(tutte_direct(&scheme), action_tutte, "T_{{M/G}} = T_{{G↷M}}");
    let multiplicities = by_set.into_iter().map(|(a, (m, r))| (a, m, r)).collect();
    Ok(Quotient {
        scheme,
        face_orbit,
        multiplicities,
        action_tutte,
    })
}

/// Compares flats, independent elements and circuits of `M/G` with the
/// orbits of those of `M`. Returns the first mismatch.
pub fn verify_quotient_identities(sm: &Semimatroid, q: &Quotient) -> Result<(), String> {
    let m = scheme_from_semimatroid(sm);
    let orbit_set = |xs: Vec<usize>| xs.into_iter().map(|x| q.face_orbit[x]).collect::<BTreeSet<_>>();
    let quotient_set = |xs: Vec<usize>| xs.into_iter().collect::<BTreeSet<_>>();
    let checks = [
        ("flats", orbit_set(m.flat_elements()), quotient_set(q.scheme.flat_elements())),
        ("independents", orbit_set(m.independents()), quotient_set(q.scheme.independents())),
        ("circuits", orbit_set(m.circuits()), quotient_set(q.scheme.circuits())),
    ];
    for (name, upstairs, downstairs) in checks {
        if upstairs != downstairs {
            let show = |s: &BTreeSet<usize>| q.scheme.names(&s.iter().copied().collect::<Vec<_>>()).join(" ");
            return Err(format!(
                "{name}: orbits of M give [{}], M/G gives [{}]",
                show(&upstairs),
                show(&downstairs)
            ));
        }
    }
    Ok(())
}
