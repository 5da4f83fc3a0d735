//! Dirichlet coefficient tables for the symmetric powers and their
//! Rankin-Selberg squares: first values, the divisor-function bound, and
//! multiplicativity.
//!
//! Usage: cargo run --release -p symuniv --example dirichlet_coefficients

use symuniv::modform::qexp_newform;
use symuniv::sympower::{dirichlet_coefficients, divisor_z, LKind};

fn main() -> symuniv::Result<()> {
    let n = 20_000;
    let form = qexp_newform(12, n)?;

    println!(" n   sym1        sym2        sym4        rs1         rs2");
    let kinds = [
        LKind::Sym(1),
        LKind::Sym(2),
        LKind::Sym(4),
        LKind::RankinSelberg(1),
        LKind::RankinSelberg(2),
    ];
    let tables: Vec<_> = kinds
        .iter()
        .map(|&k| dirichlet_coefficients(&form, k, n))
        .collect::<symuniv::Result<_>>()?;
    for i in 1..=10usize {
        print!("{i:2}");
        for t in &tables {
            print!("  {:+.7}", t.get(i));
        }
        println!();
    }

    println!("\ndivisor bound |lambda_F(n)| <= d_z(n):");
    for (kind, table) in kinds.iter().zip(&tables) {
        let z = kind.divisor_order();
        let mut worst_ratio = 0.0f64;
        for i in 2..=n as u64 {
            let bound = divisor_z(z, i);
            worst_ratio = worst_ratio.max(table.get(i as usize).abs() / bound);
        }
        println!(
            "  {}: z = {z:2}, max |lambda(n)| / d_z(n) over n <= {n}: {worst_ratio:.5}",
            kind.label()
        );
    }

    println!("\nmultiplicativity spot checks (sym2):");
    let sym2 = &tables[1];
    for (a, b) in [(4usize, 9usize), (8, 27), (25, 49), (3, 128)] {
        println!(
            "  lambda({a})*lambda({b}) = {:+.10}  vs  lambda({}) = {:+.10}",
            sym2.get(a) * sym2.get(b),
            a * b,
            sym2.get(a * b)
        );
    }
    Ok(())
}
