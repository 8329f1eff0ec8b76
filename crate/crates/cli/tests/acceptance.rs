//! Acceptance suite: runs every criterion at its stated tolerance and prints
//! one pass/fail line per criterion (`--nocapture` to see them). Each
//! criterion also carries a wall-clock budget.

use std::time::{Duration, Instant};
use trilin_cli::criteria::run_one;

fn run_criterion(id: usize, budget: Duration) {
    let start = Instant::now();
    let result = run_one(id);
    let elapsed = start.elapsed();
    println!(
        "acceptance {:02} {} {} ({} ms)",
        result.id,
        if result.passed { "PASS" } else { "FAIL" },
        result.name,
        elapsed.as_millis()
    );
    assert!(
        result.passed,
        "criterion {:02} {}: {}",
        result.id, result.name, result.detail
    );
    assert!(
        elapsed <= budget,
        "criterion {:02} took {:?}, budget {:?}",
        result.id,
        elapsed,
        budget
    );
}

#[test]
fn acceptance_01_signature_chain() {
    run_criterion(1, Duration::from_secs(1));
}

#[test]
fn acceptance_02_flip_group() {
    run_criterion(2, Duration::from_secs(1));
}

#[test]
fn acceptance_03_word_permutation_soundness() {
    run_criterion(3, Duration::from_secs(30));
}

#[test]
fn acceptance_04_reflexive_regularity() {
    run_criterion(4, Duration::from_secs(10));
}

#[test]
fn acceptance_05_equalities_2_1_to_2_3() {
    run_criterion(5, Duration::from_secs(10));
}

#[test]
fn acceptance_06_composition_battery() {
    run_criterion(6, Duration::from_secs(20));
}

#[test]
fn acceptance_07_mixed_word_identities() {
    run_criterion(7, Duration::from_secs(10));
}

#[test]
fn acceptance_08_limit_separation_triangular() {
    run_criterion(8, Duration::from_secs(5));
}

#[test]
fn acceptance_09_rank_one_regularity() {
    run_criterion(9, Duration::from_secs(5));
}

#[test]
fn acceptance_10_reflexive_middle() {
    run_criterion(10, Duration::from_secs(5));
}

#[test]
fn acceptance_11_theorem21_consistency() {
    run_criterion(11, Duration::from_secs(5));
}

#[test]
fn acceptance_12_composed_examples() {
    run_criterion(12, Duration::from_secs(10));
}
