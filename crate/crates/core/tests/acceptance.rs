//! One test per acceptance criterion. Each prints a single PASS or FAIL
//! line to the real standard error, then asserts.

mod common;

use std::io::Write as _;

use num_bigint::BigInt;
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mscheme::axioms::Axiom;
use mscheme::constructions::{quotient_scheme, verify_quotient_identities};
use mscheme::geometric::validate_geometric;
use mscheme::polynomial::BivariatePolynomial;
use mscheme::poset::{find_isomorphism, Poset, RankedPoset};
use mscheme::scheme::{find_scheme_isomorphism, MatroidScheme, SchemeError};
use mscheme::toric::{layers_poset, verify_arrangement_minors, Layer};
use mscheme::tutte::{charpoly_identity, delcon_step, tutte_delcon, tutte_direct, tutte_point_checks, TutteCase};

fn report(n: u32, what: &str, fails: &[String]) {
    let verdict = if fails.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr();
    let _ = writeln!(err, "criterion {n:>2} {verdict}: {what}");
    for f in fails {
        let _ = writeln!(err, "    {f}");
    }
    assert!(fails.is_empty(), "criterion {n}: {fails:?}");
}

/// `Σ c xⁱ yʲ` from `(c, i, j)` triples.
fn poly(terms: &[(i64, u32, u32)]) -> BivariatePolynomial {
    let (x, y) = (BivariatePolynomial::x(), BivariatePolynomial::y());
    terms.iter().fold(BivariatePolynomial::zero(), |acc, &(c, i, j)| {
        &acc + &(&BivariatePolynomial::constant(c) * &(&x.pow(i) * &y.pow(j)))
    })
}

fn corpus(seed: u64) -> Vec<(String, MatroidScheme)> {
    common::fixture_schemes().into_iter().chain(common::generated_schemes(seed)).collect()
}

#[test]
fn criterion_01_tutte_values_by_both_algorithms() {
    let cases = [
        ("isth", poly(&[(1, 2, 0), (1, 0, 0)])),
        ("nonpos", poly(&[(1, 3, 0), (3, 1, 0), (-2, 0, 0)])),
        ("dow_triv", poly(&[(1, 2, 0), (4, 1, 0), (3, 0, 0), (4, 0, 1), (2, 0, 2)])),
        ("dow_nontriv", poly(&[(1, 2, 0), (4, 1, 0), (1, 0, 0), (4, 0, 1)])),
    ];
    let mut fails = Vec::new();
    for (name, want) in &cases {
        let m = common::fixture(name);
        let direct = tutte_direct(&m);
        if &direct != want {
            fails.push(format!("{name}: direct {direct}, expected {want}"));
        }
        match tutte_delcon(&m) {
            Ok(t) if &t == want => {}
            Ok(t) => fails.push(format!("{name}: deletion-contraction {t}, expected {want}")),
            Err(e) => fails.push(format!("{name}: deletion-contraction failed: {e}")),
        }
    }
    report(1, "Tutte polynomials of ISTH, NONPOS, DOW-TRIV, DOW-NONTRIV", &fails);
}

#[test]
fn criterion_02_characteristic_polynomial_three_ways() {
    let mut fails = Vec::new();
    for name in ["dow_triv", "dow_nontriv"] {
        let m = common::fixture(name);
        let moebius = m.flats().characteristic_polynomial().unwrap();
        let identity = charpoly_identity(&m).unwrap();
        let t = tutte_direct(&m);
        let sign: i64 = if m.rank().is_multiple_of(2) { 1 } else { -1 };
        for s in -3i64..=6 {
            let want = BigInt::from((s - 2) * (s - 4));
            let via_t = t.evaluate_i64(1 - s, 0) * sign;
            let got = [moebius.evaluate(&BigInt::from(s)), identity.evaluate(&BigInt::from(s)), via_t];
            if got.iter().any(|g| g != &want) {
                fails.push(format!("{name} at t={s}: {got:?}, expected {want}"));
            }
        }
    }
    report(2, "chi = t^2 - 6t + 8 by Moebius, by the Tutte identity and pointwise", &fails);
}

#[test]
fn criterion_03_worked_deletion_contraction_step() {
    let m = common::fixture("isth");
    let step = delcon_step(&m, m.require("a").unwrap()).unwrap();
    let x = BivariatePolynomial::x();
    let one = BivariatePolynomial::one();
    let mut fails = Vec::new();
    if step.case != TutteCase::Isthmus {
        fails.push(format!("case {:?}", step.case));
    }
    if step.deletion != x {
        fails.push(format!("T(M-a) = {}", step.deletion));
    }
    if step.contraction != &x + &one {
        fails.push(format!("T(M/a) = {}", step.contraction));
    }
    let combined = &(&(&x - &one) * &step.deletion) + &step.contraction;
    if step.combined != combined || combined != tutte_direct(&m) {
        fails.push(format!("combined {} vs (x-1)x + (x+1) = {combined}", step.combined));
    }
    report(3, "ISTH step T(M-a) = x, T(M/a) = x+1, (x-1)x + (x+1)", &fails);
}

fn relabelled(m: &MatroidScheme, labels: &[usize]) -> Result<MatroidScheme, SchemeError> {
    MatroidScheme::new(m.poset().clone(), labels.to_vec())
}

#[test]
fn criterion_04_axiom_negative_controls() {
    let cw_r = common::fixture("cw_r");
    let ids: Vec<&str> = cw_r.poset().ids().iter().map(String::as_str).collect();
    assert_eq!(ids, ["0", "1", "2", "3", "4", "1'", "4'"]);
    let mut fails = Vec::new();
    for (labels, axiom) in [([0, 0, 1, 1, 1, 1, 1], Axiom::M4), ([0, 1, 1, 1, 1, 2, 1], Axiom::M5)] {
        match relabelled(&cw_r, &labels) {
            Err(SchemeError::Axiom(v)) if v.axiom == axiom => {
                if !common::witness_violates(cw_r.poset(), Some(&labels), axiom, &v.witness) {
                    fails.push(format!("{axiom:?} witness {:?} does not re-verify", v.witness));
                }
            }
            other => fails.push(format!("{labels:?}: expected {axiom:?}, got {other:?}")),
        }
    }
    let p = common::fixture_poset("notgeom");
    match validate_geometric(RankedPoset::new(p.clone()).unwrap()) {
        Err(mscheme::geometric::GeometricError::Axiom(v)) if v.axiom == Axiom::G2 => {
            if v.witness != ["1", "{3,4}", "4'"] {
                fails.push(format!("G2 witness {:?}", v.witness));
            }
            if !common::witness_violates(&p, None, Axiom::G2, &v.witness) {
                fails.push("G2 witness does not re-verify".into());
            }
        }
        other => fails.push(format!("notgeom: {other:?}")),
    }
    report(4, "CW-R fails M4 and M5, NOTGEOM fails G2, witnesses re-verified", &fails);
}

#[test]
fn criterion_05_flats_of_cw_l_and_cw_r() {
    let ranked = |ids: &[&str], covers: &[(&str, &str)]| RankedPoset::new(Poset::new(ids, covers).unwrap()).unwrap();
    let cw_l_expected = ranked(
        &["0", "1", "2", "3", "u", "v"],
        &[("0", "1"), ("0", "2"), ("0", "3"), ("1", "u"), ("2", "u"), ("3", "u"), ("2", "v"), ("3", "v")],
    );
    let cw_r_expected = ranked(&["0", "p", "q"], &[("0", "p"), ("0", "q")]);
    let mut fails = Vec::new();
    for (name, expected, size) in [("cw_l", cw_l_expected, 6), ("cw_r", cw_r_expected, 3)] {
        let f = common::fixture(name).flats();
        if f.len() != size {
            fails.push(format!("{name}: {} flats", f.len()));
        }
        if find_isomorphism(&f, &expected).is_none() {
            fails.push(format!("{name}: flats differ from the expected poset"));
        }
        if let Err(e) = validate_geometric(f) {
            fails.push(format!("{name}: {e}"));
        }
    }
    report(5, "flats of CW-L (6) and CW-R (3) have the expected shape and are geometric", &fails);
}

#[test]
fn criterion_06_cryptomorphism_round_trips() {
    let all = corpus(61);
    let generated = all.len() - common::SCHEME_FIXTURES.len();
    let mut fails = Vec::new();
    if generated < 100 {
        fails.push(format!("only {generated} generated schemes"));
    }
    for (name, m) in &all {
        fails.extend(common::cryptomorphism_failures(m).into_iter().map(|f| format!("{name}: {f}")));
    }
    report(6, &format!("cryptomorphisms on {} fixtures and {generated} generated schemes", common::SCHEME_FIXTURES.len()), &fails);
}

#[test]
fn criterion_07_point_checks() {
    let mut fails = Vec::new();
    for (name, m) in corpus(71) {
        let t = tutte_direct(&m);
        let got = (t.evaluate_i64(1, 1), t.evaluate_i64(2, 2));
        let want = (BigInt::from(m.bases().len()), BigInt::from(m.len()));
        if got != want {
            fails.push(format!("{name}: {got:?} vs {want:?}"));
        }
    }
    let nonpos = tutte_point_checks(&common::fixture("nonpos"));
    if nonpos != (BigInt::from(2), BigInt::from(12)) {
        fails.push(format!("nonpos: {nonpos:?}"));
    }
    report(7, "T(1,1) = |B| and T(2,2) = |S|; NONPOS gives (2, 12)", &fails);
}

#[test]
fn criterion_08_toric_reproduction() {
    let arr = common::arrangement("toric1");
    let lp = layers_poset(&arr).unwrap();
    let mut fails = Vec::new();
    if lp.layers.len() != 5 {
        fails.push(format!("{} layers", lp.layers.len()));
    }
    let by_rank = |r: usize| lp.layers.iter().filter(|l| l.rank() == r).count();
    if (by_rank(0), by_rank(1), by_rank(2)) != (1, 2, 2) {
        fails.push(format!("ranks {:?}", (by_rank(0), by_rank(1), by_rank(2))));
    }
    let half = Rational64::new(1, 2);
    for phi in [[Rational64::from_integer(0); 2], [half, half]] {
        if lp.index_of(&Layer::point(&phi)).is_none() {
            fails.push(format!("no point layer at {phi:?}"));
        }
    }
    if find_scheme_isomorphism(&lp.scheme, &common::fixture("isth")).is_none() {
        fails.push("scheme is not ISTH".into());
    }
    let h0 = arr
        .characters()
        .iter()
        .find(|c| c.alpha == [1, -1] && c.phase == Rational64::from_integer(0))
        .expect("H0 in the arrangement")
        .clone();
    for layer in &lp.layers {
        let rep = verify_arrangement_minors(&arr, &h0, layer).unwrap();
        if !rep.all_hold() {
            fails.push(format!("at {}: {rep:?}", layer.id()));
        }
    }
    report(8, "TORIC1 has 5 layers, scheme ISTH, deletion/restriction/localization agree", &fails);
}

#[test]
fn criterion_09_quotient_identities() {
    let mut fails = Vec::new();
    let sm = common::semimatroid_fixture("semi4");
    let q = quotient_scheme(&sm, &common::action_fixture("z2", "swap")).unwrap();
    let want = poly(&[(1, 2, 0), (1, 0, 0)]);
    let direct = tutte_direct(&q.scheme);
    if direct != want || q.action_tutte != want {
        fails.push(format!("T(M/G) = {direct}, T(G on M) = {}", q.action_tutte));
    }
    let m_g = q.multiplicity(&["G·{a1}", "G·{b1}"]);
    if m_g != 2 {
        fails.push(format!("m_G = {m_g}"));
    }
    if let Err(e) = verify_quotient_identities(&sm, &q) {
        fails.push(format!("identities: {e}"));
    }
    if find_scheme_isomorphism(&q.scheme, &common::fixture("qfix")).is_none() {
        fails.push("quotient differs from the QFIX fixture".into());
    }
    let q2 = quotient_scheme(&common::semimatroid_fixture("semi4c"), &common::action_fixture("z2", "swap_c")).unwrap();
    let c = q2.scheme.require("G·{c}").unwrap();
    if let Err(e) = q2.scheme.check_loop_del_contr(c) {
        fails.push(format!("QFIX2 loop: {e}"));
    }
    report(9, "QFIX T = x^2+1 both ways, m_G = 2, identities; QFIX2 loop check", &fails);
}

#[test]
fn criterion_10_property_suite() {
    let all = corpus(101);
    let generated = all.len() - common::SCHEME_FIXTURES.len();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut fails = Vec::new();
    if generated < 100 {
        fails.push(format!("only {generated} generated schemes"));
    }
    for (name, m) in &all {
        fails.extend(common::scheme_property_failures(m, &mut rng).into_iter().map(|f| format!("{name}: {f}")));
    }
    report(10, &format!("property suite on fixtures and {generated} generated schemes"), &fails);
}

#[test]
fn criterion_11_toric_grid_oracle() {
    let arrs = common::random_arrangements(111, 60);
    let mut fails = Vec::new();
    for arr in &arrs {
        if arr.characters().iter().any(|c| *c.phase.denom() > 4) {
            fails.push(format!("{:?}: denominator above 4", arr.characters()));
        }
        fails.extend(common::grid_oracle_failures(arr).into_iter().map(|f| format!("{:?}: {f}", arr.characters())));
    }
    report(11, &format!("layers and order of {} generated arrangements against the grid", arrs.len()), &fails);
}
