//! Satake angles of the discriminant form against the Sato-Tate density
//! (2/pi) sin^2(theta): a coarse histogram over [0, pi].
//!
//! Usage: cargo run --release -p symuniv --example satake_sato_tate [N]

use symuniv::modform::qexp_newform;
use symuniv::prime_stats::PrimeTable;

fn main() -> symuniv::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("N must be a positive integer"))
        .unwrap_or(200_000);

    let form = qexp_newform(12, n)?;
    let table = PrimeTable::new(n as u64);

    const BINS: usize = 16;
    let mut counts = [0usize; BINS];
    for &p in table.primes() {
        let theta = form.satake_angle(p)?.theta;
        let bin = ((theta / std::f64::consts::PI) * BINS as f64) as usize;
        counts[bin.min(BINS - 1)] += 1;
    }
    let total = table.primes().len() as f64;

    println!("Satake angle histogram over {} primes (p <= {n}):", table.primes().len());
    println!("{:>12}  {:>9}  {:>9}   histogram", "bin", "empirical", "sato-tate");
    for (i, &c) in counts.iter().enumerate() {
        let lo = i as f64 / BINS as f64 * std::f64::consts::PI;
        let hi = (i + 1) as f64 / BINS as f64 * std::f64::consts::PI;
        // integral of (2/pi) sin^2 over [lo, hi]
        let st = (hi - lo) / std::f64::consts::PI
            - ((2.0 * hi).sin() - (2.0 * lo).sin()) / (2.0 * std::f64::consts::PI);
        let emp = c as f64 / total;
        let bar = "#".repeat((emp * 320.0).round() as usize);
        println!("[{lo:.2}, {hi:.2})  {emp:>9.5}  {st:>9.5}   {bar}");
    }

    let max_dev = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let lo = i as f64 / BINS as f64 * std::f64::consts::PI;
            let hi = (i + 1) as f64 / BINS as f64 * std::f64::consts::PI;
            let st = (hi - lo) / std::f64::consts::PI
                - ((2.0 * hi).sin() - (2.0 * lo).sin()) / (2.0 * std::f64::consts::PI);
            (c as f64 / total - st).abs()
        })
        .fold(0.0, f64::max);
    println!("\nmax bin deviation from the Sato-Tate measure: {max_dev:.5}");
    Ok(())
}
