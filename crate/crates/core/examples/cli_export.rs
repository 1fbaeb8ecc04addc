//! Driving the command-line interface in-process.

use std::path::Path;

use mscheme::cli::run_with_fixtures;

fn main() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for args in [
        vec!["mscheme", "check", "scheme", "fixtures/isth.json"],
        vec!["mscheme", "export", "dot", "fixtures/isth.json"],
        vec!["mscheme", "construct", "uniform", "1", "2"],
    ] {
        let out = run_with_fixtures(&args, Some(fixtures.clone()));
        println!("$ {} -> exit {}", args[1..].join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
