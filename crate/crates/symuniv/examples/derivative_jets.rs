//! Derivative jets through Cauchy contour quadrature: compare against
//! central finite differences, then recover a hidden jet target by a
//! grid scan over shifts.
//!
//! Usage: cargo run --release -p symuniv --example derivative_jets

use num_complex::Complex64;
use symuniv::lvalue::{EvalParams, LSeries};
use symuniv::modform::qexp_newform;
use symuniv::sympower::LKind;
use symuniv::universality::{derivative_vector, vector_target_search};

fn main() -> symuniv::Result<()> {
    let form = qexp_newform(12, 4000)?;
    let lser = LSeries::new(&form, LKind::Sym(2), 4000)?;
    let (sigma, t) = (0.85, 1.3);

    let jet = derivative_vector(&lser, sigma, t, 4)?;
    println!("jet of L at {sigma} + {t}i (sym2):");
    for (j, v) in jet.iter().enumerate() {
        println!("  L^({j}) = {:+.10} {:+.10}i", v.re, v.im);
    }

    let h = 1e-4;
    let params = EvalParams::for_height(t + 0.1);
    let up = lser.eval_value(Complex64::new(sigma + h, t), &params)?;
    let dn = lser.eval_value(Complex64::new(sigma - h, t), &params)?;
    let fd = (up - dn) / (2.0 * h);
    println!(
        "\ncentral finite difference for L': {:+.10} {:+.10}i  (gap {:.2e})",
        fd.re,
        fd.im,
        (jet[1] - fd).norm()
    );

    // hidden jet target on a short grid
    let (t_span, dt) = (20.0, 0.1);
    let t0 = 13.7;
    let target = derivative_vector(&lser, sigma, t0, 3)?;
    let res = vector_target_search(&lser, sigma, &target, t_span, dt)?;
    println!(
        "\nhidden jet at t0 = {t0}: recovered best_t = {}, distance = {:.3e}",
        res.best_t, res.distance
    );

    // an arbitrary target is best-effort: report the grid minimum
    let wish = vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let res = vector_target_search(&lser, sigma, &wish, t_span, dt)?;
    println!(
        "target (1, 0, 0): closest grid shift t = {} at distance {:.4}",
        res.best_t, res.distance
    );
    Ok(())
}
