//! Hermite and Smith normal forms over the integers.

use mscheme::toric::lattice::{complete_to_unimodular, hnf, saturate, snf};

fn main() {
    let m = vec![vec![4, 6, 2], vec![2, 2, 0]];
    let (h, u) = hnf(&m, 3);
    println!("H = {h:?}, U = {u:?}");
    let (d, ..) = snf(&m, 3);
    println!("D = {d:?}");
    println!("saturation = {:?}", saturate(&m, 3));
    let (w, winv) = complete_to_unimodular(&[2, 3, 5]);
    println!("W = {w:?}, W⁻¹ = {winv:?}");
}
