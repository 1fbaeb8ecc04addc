//! Tutte polynomials by direct summation and by deletion-contraction.

use std::path::Path;

use mscheme::io::{read_json, SchemeFile};
use mscheme::tutte::{charpoly_identity, delcon_step, tutte_delcon, tutte_direct, tutte_point_checks};

fn load(name: &str) -> mscheme::scheme::MatroidScheme {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let file: SchemeFile = read_json(&path).unwrap();
    file.scheme().unwrap().unwrap()
}

fn main() {
    let m = load("isth.json");
    println!("T = {}", tutte_direct(&m));
    let step = delcon_step(&m, m.require("a").unwrap()).unwrap();
    println!(
        "at a ({:?}): T(M-a) = {}, T(M/a) = {}, combined {}",
        step.case, step.deletion, step.contraction, step.combined
    );
    println!("(T(1,1), T(2,2)) = {:?}", tutte_point_checks(&m));
    println!("χ = {}", charpoly_identity(&m).unwrap());

    // contracting an atom of this one leaves the class of schemes
    let n = load("nonpos.json");
    println!("direct: {}", tutte_direct(&n));
    match tutte_delcon(&n) {
        Ok(t) => println!("deletion-contraction: {t}"),
        Err(e) => println!("deletion-contraction: {e}"),
    }
}
