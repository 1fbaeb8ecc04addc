//! The quotient of a semimatroid by a translative group action.

use mscheme::constructions::{quotient_scheme, verify_quotient_identities, FiniteGroup, GroupAction, Semimatroid};
use mscheme::tutte::tutte_direct;

fn main() {
    // two parallel classes {a1,a2} and {b1,b2}; Z/2 swaps within each
    let v: Vec<String> = ["a1", "a2", "b1", "b2"].iter().map(|s| s.to_string()).collect();
    let sm = Semimatroid::from_facets(v.clone(), &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]], |f| f.len()).unwrap();
    let act = GroupAction::new(FiniteGroup::cyclic(2), v, vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
    let q = quotient_scheme(&sm, &act).unwrap();
    println!("quotient elements: {:?}", q.scheme.poset().ids());
    println!("T(M/G) = {}", tutte_direct(&q.scheme));
    println!("T(G acting on M) = {}", q.action_tutte);
    println!("m_G({{Ga1, Gb1}}) = {}", q.multiplicity(&["G·{a1}", "G·{b1}"]));
    println!("identities: {:?}", verify_quotient_identities(&sm, &q));
}
