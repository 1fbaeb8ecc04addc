//! Dowling posets over Z/2 with a two-point action, trivial or swapping.

use mscheme::constructions::{dowling_poset, FiniteGroup, GroupAction};
use mscheme::tutte::{charpoly_identity, tutte_direct};

fn main() {
    let points = vec!["+".to_string(), "-".into()];
    for (label, g) in [("trivial", vec![0, 1]), ("swap", vec![1, 0])] {
        let act = GroupAction::new(FiniteGroup::cyclic(2), points.clone(), vec![vec![0, 1], g]).unwrap();
        let (gp, m) = dowling_poset(2, &act).unwrap();
        println!("{label}: {} poset elements, {} atoms, scheme of size {}", gp.len(), gp.ranked().atoms().len(), m.len());
        println!("  T = {}", tutte_direct(&m));
        println!("  χ = {}", charpoly_identity(&m).unwrap());
    }
}
