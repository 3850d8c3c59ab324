//! Acceptance checks. The whole suite runs once; the report prints one line
//! per criterion and each criterion is asserted by its own test.

use std::sync::OnceLock;

use gengreen::verify::{run_all, CriterionResult};

fn results() -> &'static [CriterionResult] {
    static RESULTS: OnceLock<Vec<CriterionResult>> = OnceLock::new();
    RESULTS.get_or_init(|| {
        let r = run_all(usize::MAX);
        for line in &r {
            println!("{line}");
        }
        r
    })
}

fn check(id: u8) {
    let r = results().iter().find(|r| r.id == id).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn report() {
    assert_eq!(results().len(), 10);
}

#[test]
fn criterion_01_matrix_equation() {
    check(1);
}

#[test]
fn criterion_02_flag_counts() {
    check(2);
}

#[test]
fn criterion_03_paving() {
    check(3);
}

#[test]
fn criterion_04_ennola_matrices() {
    check(4);
}

#[test]
fn criterion_05_ennola_tables() {
    check(5);
}

#[test]
fn criterion_06_nu_regular() {
    check(6);
}

#[test]
fn criterion_07_order_identities() {
    check(7);
}

#[test]
fn criterion_08_characters() {
    check(8);
}

#[test]
fn criterion_09_centralizers() {
    check(9);
}

#[test]
fn criterion_10_kostka_foulkes() {
    check(10);
}
