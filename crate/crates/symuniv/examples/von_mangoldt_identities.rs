//! The von Mangoldt coefficients of the Rankin-Selberg square three ways:
//! the Chebyshev closed form, the decomposition into a zeta part plus an
//! oscillating part, and the polynomial log-derivative of the local
//! factor. All three agree far below 1e-9.
//!
//! Usage: cargo run --release -p symuniv --example von_mangoldt_identities

use symuniv::modform::qexp_newform;
use symuniv::sympower::{
    local_factor, log_deriv_oracle, von_mangoldt_psi, von_mangoldt_rs,
    zeta_factorization_residual, LKind,
};

fn main() -> symuniv::Result<()> {
    let form = qexp_newform(12, 200)?;

    println!("m  p   nu   closed form     decomposition   log-derivative");
    let mut worst = 0.0f64;
    for m in 1..=4u32 {
        let kind = LKind::rankin_selberg(m)?;
        for p in [2u64, 3, 5] {
            let factor = local_factor(&form, p, kind)?;
            let oracle = log_deriv_oracle(&factor, 4)?;
            for nu in 1..=4u32 {
                let closed = von_mangoldt_rs(&form, m, p, nu)?.value;
                let decomposed =
                    (m + 1) as f64 * (p as f64).ln() + von_mangoldt_psi(&form, m, p, nu)?;
                let derived = oracle[(nu - 1) as usize];
                worst = worst
                    .max((closed - decomposed).abs())
                    .max((closed - derived).abs());
                if nu <= 2 {
                    println!(
                        "{m}  {p}   {nu}   {closed:>13.9}   {decomposed:>13.9}   {derived:>13.9}"
                    );
                }
            }
        }
    }
    println!("\nmax disagreement across all routes: {worst:.3e}");

    println!("\nlocal zeta-factorization residuals (double-double expansion):");
    for m in 1..=4u32 {
        let r = [2u64, 3, 5, 7, 11, 13]
            .iter()
            .map(|&p| zeta_factorization_residual(&form, p, m).unwrap())
            .fold(0.0, f64::max);
        println!("  m = {m}: max residual over p <= 13: {r:.3e}");
    }
    Ok(())
}
