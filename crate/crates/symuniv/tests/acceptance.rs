//! Acceptance suite: one test per criterion, each printing a pass/fail
//! summary line. Criteria hold a global lock so heavy scans never compete
//! for the worker pool, keeping the reported runtimes meaningful; shared
//! coefficient caches are warmed outside each criterion's own timer.

use std::sync::Mutex;

use symuniv::verify::{self, CriterionReport};

static SERIAL: Mutex<()> = Mutex::new(());

fn run(criterion: impl FnOnce() -> CriterionReport, budget_seconds: f64) {
    let guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let report = criterion();
    println!("{}", report.summary_line());
    for check in &report.checks {
        println!(
            "    {} {} {:.6e} (measured {:.6e}){}",
            check.name,
            check.cmp,
            check.bound,
            check.measured,
            if check.pass { "" } else { "  <-- FAIL" }
        );
    }
    drop(guard);
    assert!(
        report.pass,
        "{}: failing checks {:#?}",
        report.summary_line(),
        report.failing()
    );
    assert!(
        report.seconds <= budget_seconds,
        "criterion {} exceeded its runtime budget: {:.1}s > {budget_seconds}s",
        report.id,
        report.seconds
    );
}

#[test]
fn criterion_01_exact_modular_form_kernel() {
    run(verify::criterion_1, 120.0);
}

#[test]
fn criterion_02_von_mangoldt_oracle() {
    run(verify::criterion_2, 60.0);
}

#[test]
fn criterion_03_zeta_factorization() {
    run(verify::criterion_3, 60.0);
}

#[test]
fn criterion_04_prime_number_theorem() {
    run(verify::criterion_4, 60.0);
}

#[test]
fn criterion_05_window_density() {
    run(verify::criterion_5, 60.0);
}

#[test]
fn criterion_06_gamma_and_functional_equation() {
    run(verify::criterion_6, 60.0);
}

#[test]
fn criterion_07_mean_square() {
    run(verify::criterion_7, 300.0);
}

#[test]
fn criterion_08_random_model_distribution() {
    run(verify::criterion_8, 600.0);
}

#[test]
fn criterion_09_random_product_non_vanishing() {
    run(verify::criterion_9, 120.0);
}

#[test]
fn criterion_10_universality_searches() {
    run(verify::criterion_10, 600.0);
}
