//! The completed function for sym1: recover the sign numerically, check
//! the reflection symmetry, and cross-check against the Dirichlet series
//! in the absolute-convergence region.
//!
//! Usage: cargo run --release -p symuniv --example functional_equation

use num_complex::Complex64;
use symuniv::lvalue::{completed_lambda, functional_equation_check, gamma_spec};
use symuniv::modform::qexp_newform;
use symuniv::numeric::ln_gamma_c;
use symuniv::sympower::LKind;

fn main() -> symuniv::Result<()> {
    let form = qexp_newform(12, 20_000)?;

    let fe = functional_equation_check(&form)?;
    println!("recovered sign: {:+}", fe.epsilon);
    println!("max |Lambda(s) - eps Lambda(1-s)| over test points: {:.3e}", fe.residual);

    // reflection pairs across the central point
    println!("\n s            Lambda(s)                  Lambda(1-s)");
    for s in [Complex64::new(0.3, 2.0), Complex64::new(0.75, 0.0)] {
        let a = completed_lambda(&form, LKind::Sym(1), s)?;
        let b = completed_lambda(&form, LKind::Sym(1), Complex64::new(1.0, 0.0) - s)?;
        println!(
            " {:.2}{:+.2}i   {:+.10e} {:+.10e}i   {:+.10e} {:+.10e}i",
            s.re, s.im, a.re, a.im, b.re, b.im
        );
    }

    // Lambda(2) against Gamma_C(2 + 11/2) times the Dirichlet series
    let s = Complex64::new(2.0, 0.0);
    let lam = completed_lambda(&form, LKind::Sym(1), s)?;
    let mut series = Complex64::new(0.0, 0.0);
    for n in 1..=20_000usize {
        series += form.lambda(n) * (-s * (n as f64).ln()).exp();
    }
    let reference = ln_gamma_c(s + 5.5).exp() * series;
    println!(
        "\nLambda(2) = {:.12e}, Gamma_C(7.5) * L(2) = {:.12e}, gap {:.2e}",
        lam.re,
        reference.re,
        (lam - reference).norm()
    );

    println!("\ngamma factors at weight 12:");
    for kind in [LKind::Sym(2), LKind::RankinSelberg(1)] {
        let spec = gamma_spec(kind, 12);
        let desc: Vec<String> = spec
            .factors
            .iter()
            .map(|f| format!("{:?}(s + {})", f.kind, f.shift))
            .collect();
        println!("  {}: {} (degree {})", kind.label(), desc.join(" "), spec.degree());
    }
    Ok(())
}
