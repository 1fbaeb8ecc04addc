//! Validating rank labels on a simplicial poset, with witnesses for the
//! first violated axiom.

use mscheme::scheme::{check_derived_axioms, MatroidScheme};

const ISTH: [(&str, &str); 6] = [("0", "a"), ("0", "b"), ("a", "u"), ("a", "v"), ("b", "u"), ("b", "v")];

fn main() {
    let good = MatroidScheme::from_labels(&[("0", 0), ("a", 1), ("b", 1), ("u", 2), ("v", 2)], &ISTH).unwrap();
    println!("bases: {:?}", good.names(&good.bases()));
    println!("isthmuses: {:?}", good.names(&good.isthmuses()));
    let report = check_derived_axioms(&good);
    println!("derived properties hold: {}", report.all_pass());

    // v drops to the rank of its atoms
    let bad = MatroidScheme::from_labels(&[("0", 0), ("a", 1), ("b", 1), ("u", 2), ("v", 1)], &ISTH);
    match bad {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
}
