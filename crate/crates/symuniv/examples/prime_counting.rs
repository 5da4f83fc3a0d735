//! Prime-counting sums for the Rankin-Selberg von Mangoldt weights: the
//! psi and theta sums normalized by x, and the density of primes with
//! large |lambda(p^m)| against the theoretical lower bound.
//!
//! Usage: cargo run --release -p symuniv --example prime_counting [X]

use symuniv::modform::qexp_newform;
use symuniv::prime_stats::{pi_delta, prime_sums, PrimeTable};

fn main() -> symuniv::Result<()> {
    let x: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("X must be a positive integer"))
        .unwrap_or(200_000);

    let form = qexp_newform(12, x as usize)?;
    let table = PrimeTable::new(x);

    println!("prime sums at x = {x} (weight 12):");
    println!(" m    psi(x)/x    theta(x)/x    pi_w(x)/(x/ln x)");
    for m in 1..=4 {
        let rep = prime_sums(&form, &table, m, x)?;
        println!(
            " {m}    {:.5}     {:.5}       {:.5}",
            rep.psi_ratio, rep.theta_ratio, rep.pi_ratio
        );
    }

    println!("\ndensity of primes with |lambda(p)| >= delta over ({}, {x}]:", x / 2);
    println!(" delta   empirical   lower bound");
    for delta in [0.25, 0.5, 0.75] {
        let rep = pi_delta(&form, &table, 1, delta, x, (x / 2, x))?;
        println!(
            " {delta:.2}    {:.4}      {:.4}",
            rep.ratio, rep.lower_bound
        );
    }
    Ok(())
}
