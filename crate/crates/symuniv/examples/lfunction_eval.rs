//! Evaluate L(s, F) in both modes. In the absolute-convergence region the
//! smoothed partial sum and the Euler product agree closely; inside the
//! strip only the smoothed mode applies and the stability estimate (the
//! X vs 2X difference) is the accuracy witness.
//!
//! Usage: cargo run --release -p symuniv --example lfunction_eval

use num_complex::Complex64;
use symuniv::lvalue::{EvalParams, LSeries};
use symuniv::modform::qexp_newform;
use symuniv::sympower::LKind;

fn main() -> symuniv::Result<()> {
    let form = qexp_newform(12, 60_000)?;

    for kind in [LKind::Sym(1), LKind::Sym(2), LKind::RankinSelberg(1)] {
        let lser = LSeries::new(&form, kind, 60_000)?;
        println!(
            "{} (degree {}, strip sigma > {:.4}):",
            kind.label(),
            kind.degree(),
            kind.sigma_strip()
        );

        let s = Complex64::new(3.0, 1.0);
        let smooth = lser.eval(s, &EvalParams::smoothed(1500.0))?;
        let euler = lser.eval(s, &EvalParams::euler(20_000))?;
        println!(
            "  s = 3+1i   smoothed {:+.12} {:+.12}i   euler {:+.12} {:+.12}i   gap {:.2e}",
            smooth.re,
            smooth.im,
            euler.re,
            euler.im,
            (smooth.value() - euler.value()).norm()
        );

        let sigma = kind.sigma_strip() + 0.35 * (1.0 - kind.sigma_strip());
        for t in [0.0, 14.1] {
            let s = Complex64::new(sigma, t);
            let v = lser.eval(s, &EvalParams::for_height(t))?;
            println!(
                "  s = {:.3}{t:+}i   L = {:+.8} {:+.8}i   stability {:.2e}",
                sigma, v.re, v.im, v.stability
            );
        }
        println!();
    }
    Ok(())
}
