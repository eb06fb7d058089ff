//! End-to-end acceptance suite: one test per criterion, each printing
//! its own pass/fail line. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use coha::acceptance::{criteria, DEFAULT_SEED};

fn run(id: usize) {
    let all = criteria();
    let criterion = all.iter().find(|c| c.id == id).expect("criterion id");
    match (criterion.run)(DEFAULT_SEED) {
        Ok(()) => println!("criterion {:>2} PASS - {}", criterion.id, criterion.name),
        Err(msg) => {
            println!("criterion {:>2} FAIL - {}: {}", criterion.id, criterion.name, msg);
            panic!("criterion {} failed: {}", criterion.id, msg);
        }
    }
}

#[test]
fn criterion_01_shuffle_identities() {
    run(1);
}

#[test]
fn criterion_02_algebra_laws() {
    run(2);
}

#[test]
fn criterion_03_counts_vs_oracle() {
    run(3);
}

#[test]
fn criterion_04_hn_factorization() {
    run(4);
}

#[test]
fn criterion_05_dt_extraction() {
    run(5);
}

#[test]
fn criterion_06_series_cross_check() {
    run(6);
}

#[test]
fn criterion_07_kernel_lemma() {
    run(7);
}

#[test]
fn criterion_08_tensor_decomposition() {
    run(8);
}

#[test]
fn criterion_09_hilbert_modules() {
    run(9);
}

#[test]
fn criterion_10_point_count_reciprocity() {
    run(10);
}
