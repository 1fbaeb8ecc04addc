//! Möbius function and characteristic polynomial of the Boolean lattice on
//! three atoms, and the geometric-lattice test.

use mscheme::poset::{Poset, RankedPoset};

fn main() {
    let ids: Vec<String> = (0..8u32).map(|m| format!("{m:03b}")).collect();
    let mut covers = Vec::new();
    for m in 0..8usize {
        for b in 0..3 {
            if m & (1 << b) == 0 {
                covers.push((m, m | 1 << b));
            }
        }
    }
    let rp = RankedPoset::new(Poset::from_indices(ids, &covers).unwrap()).unwrap();
    let top = rp.poset().maximal_elements()[0];
    println!("μ(0̂, 1̂) = {}", rp.mobius()[top]);
    println!("χ(t) = {}", rp.characteristic_polynomial().unwrap());
    println!("geometric lattice: {:?}", rp.is_geometric_lattice());
}
