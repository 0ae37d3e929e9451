//! Acceptance suite: one test per criterion on the default grid, each printing a
//! single pass/fail line and enforcing its time budget. The CLI and property tests
//! live in the same binary so that every suite runs even when a criterion fails.

use std::io::Write;
use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use weakdeg::verify::{run_criterion, Grid, Kind};

mod cli;
mod properties;

static SERIAL: Mutex<()> = Mutex::new(());

/// Held by timed tests so they do not share the CPU with each other.
pub fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

// written to the process stdout directly so the lines survive output capture
fn report(text: &str) {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn criterion(id: u32, budget_secs: u64) {
    let _guard = serial();
    let grid = Grid::default();
    let start = Instant::now();
    let outcome = run_criterion(id, &grid).expect("criterion id");
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    let in_time = elapsed <= budget;
    let mut text = format!(
        "{}  [{:.1}s of {budget_secs}s{}]\n",
        outcome.line(),
        elapsed.as_secs_f64(),
        if in_time { "" } else { " OVER BUDGET" }
    );
    for note in &outcome.notes {
        text.push_str(&format!("    note: {note}\n"));
    }
    for failure in outcome.failures.iter().skip(1) {
        text.push_str(&format!("    also failing: {failure}\n"));
    }
    report(&text);
    let kind = match outcome.kind {
        Kind::Theorem => "theorem",
        Kind::Observation => "observation",
    };
    assert!(
        outcome.passed(),
        "criterion {id} ({kind}) failed: {}",
        outcome.line()
    );
    assert!(
        in_time,
        "criterion {id} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_01_not_mod_exact() {
    criterion(1, 60);
}

#[test]
fn criterion_02_mod_lower_bound_and_tightness() {
    criterion(2, 120);
}

#[test]
fn criterion_03_gap_observation() {
    criterion(3, 120);
}

#[test]
fn criterion_04_symmetric_equivalence() {
    criterion(4, 120);
}

#[test]
fn criterion_05_psi_basis_and_determinant() {
    criterion(5, 10);
}

#[test]
fn criterion_06_tensor_weak_nondegenerate() {
    criterion(6, 120);
}

#[test]
fn criterion_07_composite_reduction() {
    criterion(7, 180);
}

#[test]
fn criterion_08_hilbert_bridge_and_distance_bound() {
    criterion(8, 120);
}

#[test]
fn criterion_09_residue_immunity() {
    criterion(9, 120);
}

#[test]
fn criterion_10_transforms_duality_restriction() {
    criterion(10, 60);
}
