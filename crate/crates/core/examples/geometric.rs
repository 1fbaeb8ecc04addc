//! Flats posets, the G1/G2 check and simplification.

use std::path::Path;

use mscheme::geometric::{scheme_from_geometric, simplification, validate_geometric};
use mscheme::io::{read_json, SchemeFile};
use mscheme::poset::RankedPoset;
use mscheme::scheme::find_scheme_isomorphism;

fn file(name: &str) -> SchemeFile {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    read_json(&path).unwrap()
}

fn main() {
    for name in ["cw_l.json", "cw_r.json"] {
        let m = file(name).scheme().unwrap().unwrap();
        let gp = validate_geometric(m.flats()).unwrap();
        let s = simplification(&m);
        println!("{name}: {} elements, {} flats, simplification has {}", m.len(), gp.len(), s.len());
        let back = scheme_from_geometric(&gp);
        println!("  flats of the rebuilt scheme match: {}", find_scheme_isomorphism(&back, &s).is_some());
    }

    let p = file("notgeom.json").poset().unwrap().unwrap();
    match validate_geometric(RankedPoset::new(p).unwrap()) {
        Ok(_) => println!("notgeom: geometric"),
        Err(e) => println!("notgeom: {e}"),
    }
}
