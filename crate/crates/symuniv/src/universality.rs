//! Shift searches and derivative jets: fit exponential-polynomial targets
//! on a disc, scan vertical shifts for the best sup-distance, report the
//! fraction of good shifts, and recover derivative vectors through Cauchy
//! contour quadrature.
//!
//! The density estimate is always a grid fraction over a finite scan; no
//! liminf claim is attached to it.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lvalue::{EvalParams, LSeries};
use crate::sympower::LKind;

/// Closed disc `|s - center| <= radius` on the real axis, constrained to
/// lie strictly inside the comparison strip.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiscRegion {
    pub center: f64,
    pub radius: f64,
    sigma_strip: f64,
}

impl DiscRegion {
    pub fn new(kind: LKind, center: f64, radius: f64) -> Result<Self> {
        let lo = kind.sigma_strip();
        if radius <= 0.0 {
            return Err(Error::invalid("disc radius must be positive"));
        }
        if center - radius <= lo || center + radius >= 1.0 {
            return Err(Error::invalid(format!(
                "disc [{:.4}, {:.4}] must lie inside ({:.4}, 1)",
                center - radius,
                center + radius,
                lo
            )));
        }
        Ok(DiscRegion {
            center,
            radius,
            sigma_strip: lo,
        })
    }

    /// Per-kind default disc, kept inside the strip with margin. For
    /// `sym2` this is center 0.85, radius 0.05; narrow strips (the higher
    /// Rankin-Selberg squares) scale the radius down with the width.
    pub fn default_for(kind: LKind) -> Self {
        let lo = kind.sigma_strip();
        let width = 1.0 - lo;
        let radius = (0.2 * width).min(0.05);
        let center = lo + 0.55 * width;
        DiscRegion {
            center,
            radius,
            sigma_strip: lo,
        }
    }

    pub fn sigma_strip(&self) -> f64 {
        self.sigma_strip
    }

    /// `n` equispaced points on the boundary circle, counterclockwise
    /// from the rightmost point.
    pub fn boundary_points(&self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|i| {
                let phi = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Complex64::new(self.center, 0.0) + Complex64::from_polar(self.radius, phi)
            })
            .collect()
    }
}

/// Max modulus of the difference over paired boundary samples. For
/// analytic functions the maximum principle turns this boundary sup into
/// the disc sup.
pub fn sup_dist(g: &[Complex64], h: &[Complex64]) -> f64 {
    assert_eq!(g.len(), h.len());
    g.iter()
        .zip(h)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Sup-distance of two functions over `n_boundary` boundary points.
pub fn sup_dist_fn<F, G>(f: F, g: G, region: &DiscRegion, n_boundary: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    if n_boundary < 64 {
        return Err(Error::invalid("boundary sampling needs at least 64 points"));
    }
    let pts = region.boundary_points(n_boundary);
    Ok(pts
        .iter()
        .map(|&s| (f(s) - g(s)).norm())
        .fold(0.0, f64::max))
}

const VANISH_FLOOR: f64 = 1e-280;
const BRANCH_LIMIT: f64 = 3.0;

/// Least-squares polynomial `q` with `e^q` close to the sampled target,
/// in the scaled basis `((s - center)/radius)^j`.
#[derive(Debug, Clone, Serialize)]
pub struct PolyFit {
    pub region: DiscRegion,
    pub coeffs: Vec<Complex64>,
    pub sup_residual: f64,
}

impl PolyFit {
    pub fn q_eval(&self, s: Complex64) -> Complex64 {
        let z = (s - self.region.center) / self.region.radius;
        let mut v = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            v = v * z + c;
        }
        v
    }

    pub fn exp_q(&self, s: Complex64) -> Complex64 {
        self.q_eval(s).exp()
    }
}

/// Fit `q` to a continuous log branch of the target along the boundary.
///
/// `samples` must be the target values at `region.boundary_points(n)`;
/// the branch is continued by nearest-argument tracking, and on equispaced
/// circle points the least-squares fit reduces to a truncated DFT of the
/// tracked logs.
pub fn poly_exp_target(
    region: &DiscRegion,
    samples: &[Complex64],
    degree: usize,
) -> Result<PolyFit> {
    let n = samples.len();
    if n < 2 * (degree + 1) {
        return Err(Error::invalid(format!(
            "need at least {} samples for degree {degree}",
            2 * (degree + 1)
        )));
    }
    for (i, v) in samples.iter().enumerate() {
        if v.norm() < VANISH_FLOOR {
            return Err(Error::NonVanishingViolation { index: i });
        }
    }
    let mut logs = Vec::with_capacity(n);
    let mut acc = samples[0].ln();
    logs.push(acc);
    for i in 1..n {
        let step = (samples[i] / samples[i - 1]).ln();
        if step.im.abs() > BRANCH_LIMIT {
            return Err(Error::ResolutionError { index: i - 1 });
        }
        acc += step;
        logs.push(acc);
    }
    // truncated DFT = least squares on the unit-circle Vandermonde
    let mut coeffs = Vec::with_capacity(degree + 1);
    for j in 0..=degree {
        let mut c = Complex64::new(0.0, 0.0);
        for (i, l) in logs.iter().enumerate() {
            let phi = -2.0 * std::f64::consts::PI * (i * j % n) as f64 / n as f64;
            c += l * Complex64::from_polar(1.0, phi);
        }
        coeffs.push(c / n as f64);
    }
    let fit = PolyFit {
        region: *region,
        coeffs,
        sup_residual: 0.0,
    };
    let pts = region.boundary_points(n);
    let sup_residual = pts
        .iter()
        .zip(samples)
        .map(|(&s, &v)| (fit.exp_q(s) - v).norm())
        .fold(0.0, f64::max);
    Ok(PolyFit {
        sup_residual,
        ..fit
    })
}

/// Result of a vertical-shift scan against a fixed target.
#[derive(Debug, Clone, Serialize)]
pub struct ShiftSearchResult {
    pub best_t: f64,
    pub best_err: f64,
    /// fraction of scanned shifts with sup-error strictly below `eps`
    pub good_set_measure: f64,
    pub eps: f64,
    pub t_span: f64,
    pub dt: f64,
    pub n_boundary: usize,
    pub n_grid: usize,
    /// per-shift sup-errors in grid order
    #[serde(skip)]
    pub errors: Vec<f64>,
}

/// Scan `t = 0, dt, 2 dt, ..., <= t_span`, computing the boundary
/// sup-distance between `L(. + it)` and the target samples at each shift.
pub fn shift_search(
    lser: &LSeries,
    region: &DiscRegion,
    target: &[Complex64],
    t_span: f64,
    dt: f64,
    eps: f64,
) -> Result<ShiftSearchResult> {
    let n_boundary = target.len();
    if n_boundary < 64 {
        return Err(Error::invalid("boundary sampling needs at least 64 points"));
    }
    if dt <= 0.0 || t_span <= 0.0 {
        return Err(Error::invalid("scan needs positive t_span and dt"));
    }
    if (region.sigma_strip() - lser.sigma_strip()).abs() > 1e-12 {
        return Err(Error::invalid("disc region was built for a different kind"));
    }
    if let Some(i) = target.iter().position(|v| v.norm() < VANISH_FLOOR) {
        return Err(Error::HypothesisViolation(format!(
            "target vanishes on the disc (boundary sample {i})"
        )));
    }
    let boundary = region.boundary_points(n_boundary);
    let n_grid = (t_span / dt).floor() as usize + 1;
    // one parameter set per shift, sized for the top of the contour
    let top = EvalParams::for_height(t_span + region.radius);
    if top.n_terms > lser.bound() {
        return Err(Error::InsufficientCache {
            needed: top.n_terms,
            available: lser.bound(),
        });
    }
    let errors: Vec<f64> = (0..n_grid)
        .into_par_iter()
        .map(|j| {
            let t = j as f64 * dt;
            let params = EvalParams::for_height(t + region.radius);
            let mut err = 0.0f64;
            for (b, phi) in boundary.iter().zip(target) {
                let v = lser.eval_value(b + Complex64::new(0.0, t), &params)?;
                err = err.max((v - phi).norm());
            }
            Ok(err)
        })
        .collect::<Result<_>>()?;
    let (best_idx, best_err) = errors
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, &e)| (i, e))
        .expect("non-empty grid");
    let good = errors.iter().filter(|&&e| e < eps).count();
    Ok(ShiftSearchResult {
        best_t: best_idx as f64 * dt,
        best_err,
        good_set_measure: good as f64 / n_grid as f64,
        eps,
        t_span,
        dt,
        n_boundary,
        n_grid,
        errors,
    })
}

/// Derivatives `(f, f', ..., f^{(J-1)})` at `s0` by trapezoidal quadrature
/// of the Cauchy integral on a circle of radius `rho`. One ring of
/// evaluations serves every order.
pub fn contour_derivatives<F>(
    f: F,
    s0: Complex64,
    rho: f64,
    j_count: usize,
    nodes: usize,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if j_count < 1 {
        return Err(Error::invalid("need at least one derivative order"));
    }
    if rho <= 0.0 {
        return Err(Error::ContourViolation("radius must be positive".into()));
    }
    if nodes < 16 {
        return Err(Error::invalid("contour quadrature needs at least 16 nodes"));
    }
    let values: Vec<Complex64> = (0..nodes)
        .into_par_iter()
        .map(|l| {
            let phi = 2.0 * std::f64::consts::PI * l as f64 / nodes as f64;
            f(s0 + Complex64::from_polar(rho, phi))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(j_count);
    let mut factorial = 1.0f64;
    for j in 0..j_count {
        if j > 0 {
            factorial *= j as f64;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, v) in values.iter().enumerate() {
            let phi = -2.0 * std::f64::consts::PI * ((l * j) % nodes) as f64 / nodes as f64;
            acc += v * Complex64::from_polar(1.0, phi);
        }
        out.push(acc / nodes as f64 * factorial / rho.powi(j as i32));
    }
    Ok(out)
}

pub const DEFAULT_CONTOUR_NODES: usize = 256;

/// Derivative jet of `L` at `sigma + it` with the default contour radius,
/// half the distance to the strip boundary.
pub fn derivative_vector(
    lser: &LSeries,
    sigma: f64,
    t: f64,
    j_count: usize,
) -> Result<Vec<Complex64>> {
    let lo = lser.sigma_strip();
    if sigma <= lo || sigma >= 1.0 {
        return Err(Error::ContourViolation(format!(
            "default contour needs sigma in ({lo:.4}, 1)"
        )));
    }
    let rho = 0.5 * (sigma - lo).min(1.0 - sigma);
    derivative_vector_with(lser, sigma, t, j_count, rho, DEFAULT_CONTOUR_NODES)
}

/// Derivative jet with explicit contour radius and node count. The
/// contour must stay right of the strip abscissa; evaluation parameters
/// are fixed across the ring so the quadrature sees one smooth function.
pub fn derivative_vector_with(
    lser: &LSeries,
    sigma: f64,
    t: f64,
    j_count: usize,
    rho: f64,
    nodes: usize,
) -> Result<Vec<Complex64>> {
    let lo = lser.sigma_strip();
    if rho <= 0.0 || sigma - rho <= lo {
        return Err(Error::ContourViolation(format!(
            "contour of radius {rho:.4} at sigma = {sigma:.4} crosses Re s = {lo:.4}"
        )));
    }
    let params = EvalParams::for_height(t.abs() + rho);
    if params.n_terms > lser.bound() {
        return Err(Error::InsufficientCache {
            needed: params.n_terms,
            available: lser.bound(),
        });
    }
    let s0 = Complex64::new(sigma, t);
    contour_derivatives(|z| lser.eval_value(z, &params), s0, rho, j_count, nodes)
}

#[derive(Debug, Clone, Serialize)]
pub struct JetSearchResult {
    pub best_t: f64,
    pub distance: f64,
    pub t_span: f64,
    pub dt: f64,
    pub j_count: usize,
}

/// Scan shifts minimizing the Euclidean distance between the derivative
/// jet at `sigma + it` and a target vector. Best effort: the scan returns
/// its grid minimum whether or not the target is approachable.
pub fn vector_target_search(
    lser: &LSeries,
    sigma: f64,
    target: &[Complex64],
    t_span: f64,
    dt: f64,
) -> Result<JetSearchResult> {
    let j_count = target.len();
    if j_count == 0 || j_count > 5 {
        return Err(Error::invalid("jet length must be between 1 and 5"));
    }
    if sigma <= lser.sigma_strip() || sigma >= 1.0 {
        return Err(Error::OutOfRegion(format!(
            "jet search needs sigma in ({:.4}, 1)",
            lser.sigma_strip()
        )));
    }
    if dt <= 0.0 || t_span <= 0.0 {
        return Err(Error::invalid("scan needs positive t_span and dt"));
    }
    let n_grid = (t_span / dt).floor() as usize + 1;
    let distances: Vec<f64> = (0..n_grid)
        .into_par_iter()
        .map(|i| {
            let t = i as f64 * dt;
            let jet = derivative_vector(lser, sigma, t, j_count)?;
            Ok(jet
                .iter()
                .zip(target)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt())
        })
        .collect::<Result<_>>()?;
    let (best_idx, distance) = distances
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, &d)| (i, d))
        .expect("non-empty grid");
    Ok(JetSearchResult {
        best_t: best_idx as f64 * dt,
        distance,
        t_span,
        dt,
        j_count,
    })
}
