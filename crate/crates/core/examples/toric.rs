//! Layers of a toric arrangement in the 2-torus.

use num_rational::Rational64;

use mscheme::toric::{layers_poset, verify_arrangement_minors, Character, Layer, ToricArrangement};
use mscheme::tutte::tutte_direct;

fn main() {
    let zero = Rational64::from_integer(0);
    let arr = ToricArrangement::from_pairs(2, &[(vec![1, -1], zero), (vec![1, 1], zero)]).unwrap();
    let lp = layers_poset(&arr).unwrap();
    for (i, layer) in lp.layers.iter().enumerate() {
        println!("{i}: {} (rank {})", layer.id(), lp.poset.ranked().rank(i));
    }
    println!("T = {}", tutte_direct(&lp.scheme));

    let h0 = Character::new("H1", vec![1, -1], zero).unwrap();
    let report = verify_arrangement_minors(&arr, &h0, &Layer::ambient(2)).unwrap();
    println!("deletion, restriction and localization agree: {}", report.all_hold());
}
