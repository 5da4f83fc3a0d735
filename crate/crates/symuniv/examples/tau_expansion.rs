//! Exact discriminant coefficients: expand tau(n) to a configurable
//! bound, cross-check the first values against the direct product route,
//! and print normalized eigenvalues with their Satake angles.
//!
//! Usage: cargo run --release -p symuniv --example tau_expansion [N]

use std::time::Instant;

use symuniv::modform::qexp_newform;
use symuniv::verify::oracles::delta_direct_product;

fn main() -> symuniv::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("N must be a positive integer"))
        .unwrap_or(100_000);

    let started = Instant::now();
    let form = qexp_newform(12, n)?;
    println!(
        "expanded tau(1..{n}) in {:.2}s (theta-identity route)",
        started.elapsed().as_secs_f64()
    );

    println!("\n n     tau(n)        lambda(n)");
    for i in 1..=12.min(n) {
        println!(
            "{i:2}  {:>10}   {:+.12}",
            form.exact_coeff(i),
            form.lambda(i)
        );
    }

    let check_to = n.min(2000);
    let started = Instant::now();
    let oracle = delta_direct_product(check_to)?;
    let agree = (1..=check_to).all(|i| form.exact_coeff(i) == oracle.coeff(i));
    println!(
        "\ndual-route check to n = {check_to}: {} ({:.2}s)",
        if agree { "exact agreement" } else { "MISMATCH" },
        started.elapsed().as_secs_f64()
    );

    println!("\nSatake angles at the first primes:");
    for p in [2u64, 3, 5, 7, 11, 13] {
        if (p as usize) <= n {
            let angle = form.satake_angle(p)?;
            println!(
                "  p = {p:2}: lambda = {:+.6}, theta = {:.6}",
                form.lambda(p as usize),
                angle.theta
            );
        }
    }
    Ok(())
}
