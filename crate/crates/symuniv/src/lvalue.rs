//! Numerical evaluation of `L(s, F)`: gamma-factor data, smoothed partial
//! sums and Euler products with stability estimates, the completed
//! function and sign determination for `sym^1`, and mean-square / growth
//! diagnostics.
//!
//! In-strip values use Gaussian-smoothed partial sums
//! `sum lambda_F(n) n^{-s} exp(-(n/X)^2)`. For `Re s` well inside the
//! absolute-convergence region these converge fast; inside the strip they
//! are heuristic approximations whose only accuracy witness is the
//! reported stability estimate (the difference between the `X` and `2X`
//! runs). No claim of rigorous in-strip error bounds is made.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modform::HeckeEigenform;
use crate::numeric::{integrate_gl, ln_gamma_c, ln_gamma_r};
use crate::sympower::{
    dirichlet_coefficients, local_factor_from_theta, spf_sieve, DirichletCoefficients, LKind,
};

/// `sigma_F`, the lower abscissa of the comparison strip.
pub fn sigma_strip(kind: LKind) -> f64 {
    kind.sigma_strip()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaKind {
    /// `Gamma_R(s) = pi^{-s/2} Gamma(s/2)`
    R,
    /// `Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)`
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaFactor {
    pub kind: GammaKind,
    pub shift: f64,
}

/// Archimedean factor as a list of shifted `Gamma_R` / `Gamma_C` terms,
/// multiplicities unfolded into repetition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaFactorSpec {
    pub factors: Vec<GammaFactor>,
}

impl GammaFactorSpec {
    /// Total degree, counting `Gamma_C` as 2 and `Gamma_R` as 1.
    pub fn degree(&self) -> u32 {
        self.factors
            .iter()
            .map(|f| match f.kind {
                GammaKind::R => 1,
                GammaKind::C => 2,
            })
            .sum()
    }

    /// `log L_infty(s)`; shifts up to 100 occur, so everything stays in
    /// log space.
    pub fn ln_eval(&self, s: Complex64) -> Complex64 {
        self.factors
            .iter()
            .map(|f| match f.kind {
                GammaKind::R => ln_gamma_r(s + f.shift),
                GammaKind::C => ln_gamma_c(s + f.shift),
            })
            .sum()
    }
}

/// Gamma-factor shape for `(kind, k)`, split on the parity of `m`.
pub fn gamma_spec(kind: LKind, k: u32) -> GammaFactorSpec {
    let m = kind.m();
    let kf = (k - 1) as f64;
    let mut factors = Vec::new();
    match kind {
        LKind::Sym(_) => {
            if m % 2 == 1 {
                let n = (m - 1) / 2;
                for nu in 0..=n {
                    factors.push(GammaFactor {
                        kind: GammaKind::C,
                        shift: (nu as f64 + 0.5) * kf,
                    });
                }
            } else {
                let n = m / 2;
                factors.push(GammaFactor {
                    kind: GammaKind::R,
                    shift: if n % 2 == 1 { 1.0 } else { 0.0 },
                });
                for nu in 1..=n {
                    factors.push(GammaFactor {
                        kind: GammaKind::C,
                        shift: nu as f64 * kf,
                    });
                }
            }
        }
        LKind::RankinSelberg(_) => {
            if m % 2 == 1 {
                let n = (m - 1) / 2;
                for _ in 0..=n {
                    factors.push(GammaFactor {
                        kind: GammaKind::C,
                        shift: 0.0,
                    });
                }
            } else {
                let n = m / 2;
                factors.push(GammaFactor {
                    kind: GammaKind::R,
                    shift: 0.0,
                });
                for _ in 0..n {
                    factors.push(GammaFactor {
                        kind: GammaKind::C,
                        shift: 0.0,
                    });
                }
            }
            for nu in 1..=m {
                for _ in 0..(m - nu + 1) {
                    factors.push(GammaFactor {
                        kind: GammaKind::C,
                        shift: nu as f64 * kf,
                    });
                }
            }
        }
    }
    GammaFactorSpec { factors }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EvalMode {
    Smoothed,
    EulerProduct,
}

/// Evaluation parameters. In smoothed mode `n_terms` must cover the
/// Gaussian tail (`n_terms >= X sqrt(92)` puts the dropped weight below
/// 1e-40 relative); in Euler mode `n_terms` is the prime cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalParams {
    pub x_smoothing: f64,
    pub n_terms: usize,
    pub mode: EvalMode,
}

impl EvalParams {
    /// Smoothed-mode parameters with the default tail rule `N = 10 X`.
    pub fn smoothed(x: f64) -> Self {
        EvalParams {
            x_smoothing: x,
            n_terms: (10.0 * x).ceil() as usize,
            mode: EvalMode::Smoothed,
        }
    }

    /// Default height-adapted parameters: `X = max(50, 3 |t|)`.
    pub fn for_height(t: f64) -> Self {
        Self::smoothed(50f64.max(3.0 * t.abs()))
    }

    pub fn euler(p_max: usize) -> Self {
        EvalParams {
            x_smoothing: 0.0,
            n_terms: p_max,
            mode: EvalMode::EulerProduct,
        }
    }

    fn validate(&self) -> Result<()> {
        match self.mode {
            EvalMode::Smoothed => {
                if self.x_smoothing < 1.0 {
                    return Err(Error::invalid("smoothing length must be >= 1"));
                }
                let needed = (self.x_smoothing * 92f64.sqrt()).ceil() as usize;
                if self.n_terms < needed {
                    return Err(Error::invalid(format!(
                        "n_terms = {} truncates the Gaussian tail; need >= {needed}",
                        self.n_terms
                    )));
                }
            }
            EvalMode::EulerProduct => {
                if self.n_terms < 2 {
                    return Err(Error::invalid("Euler cutoff must be >= 2"));
                }
            }
        }
        Ok(())
    }
}

/// Evaluated point with its stability estimate: the absolute difference
/// against a run at doubled resolution (2X, or 2P in Euler mode).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Evaluation {
    pub re: f64,
    pub im: f64,
    pub stability: f64,
}

impl Evaluation {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// An L-function ready for numerical work: the kind, its Dirichlet
/// coefficients up to a bound, and the Satake angles at every prime in
/// range.
#[derive(Debug, Clone)]
pub struct LSeries {
    kind: LKind,
    weight: u32,
    coeffs: DirichletCoefficients,
    /// `(p, theta_p)` for every prime `p <= bound`.
    thetas: Vec<(u64, f64)>,
}

impl LSeries {
    pub fn new(form: &HeckeEigenform, kind: LKind, n_coeffs: usize) -> Result<Self> {
        let coeffs = dirichlet_coefficients(form, kind, n_coeffs)?;
        let spf = spf_sieve(n_coeffs);
        let mut thetas = Vec::new();
        for p in 2..=n_coeffs {
            if spf[p] == p as u32 {
                thetas.push((p as u64, form.satake_angle(p as u64)?.theta));
            }
        }
        Ok(LSeries {
            kind,
            weight: form.weight(),
            coeffs,
            thetas,
        })
    }

    pub fn kind(&self) -> LKind {
        self.kind
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn bound(&self) -> usize {
        self.coeffs.bound()
    }

    pub fn sigma_strip(&self) -> f64 {
        self.kind.sigma_strip()
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.coeffs.get(n)
    }

    pub fn coefficients(&self) -> &DirichletCoefficients {
        &self.coeffs
    }

    pub fn prime_thetas(&self) -> &[(u64, f64)] {
        &self.thetas
    }

    fn check_terms(&self, needed: usize) -> Result<()> {
        if needed > self.bound() {
            return Err(Error::InsufficientCache {
                needed,
                available: self.bound(),
            });
        }
        Ok(())
    }

    /// Single evaluation without the stability companion run.
    pub fn eval_value(&self, s: Complex64, params: &EvalParams) -> Result<Complex64> {
        params.validate()?;
        match params.mode {
            EvalMode::Smoothed => {
                if s.re <= self.sigma_strip() {
                    return Err(Error::OutOfRegion(format!(
                        "smoothed mode needs Re s > {:.4}, got {:.4}",
                        self.sigma_strip(),
                        s.re
                    )));
                }
                self.check_terms(params.n_terms)?;
                Ok(self.smoothed_sum(s, params.x_smoothing, params.n_terms))
            }
            EvalMode::EulerProduct => {
                if s.re <= 1.0 {
                    return Err(Error::OutOfRegion(format!(
                        "Euler mode needs Re s > 1, got {:.4}",
                        s.re
                    )));
                }
                self.check_terms(params.n_terms)?;
                self.euler_product(s, params.n_terms as u64)
            }
        }
    }

    /// Evaluation with a stability estimate from a doubled-resolution run.
    /// Needs coefficients (or angles) up to twice the requested cutoff.
    pub fn eval(&self, s: Complex64, params: &EvalParams) -> Result<Evaluation> {
        let value = self.eval_value(s, params)?;
        let doubled = match params.mode {
            EvalMode::Smoothed => EvalParams {
                x_smoothing: 2.0 * params.x_smoothing,
                n_terms: 2 * params.n_terms,
                mode: EvalMode::Smoothed,
            },
            EvalMode::EulerProduct => EvalParams::euler(2 * params.n_terms),
        };
        let refined = self.eval_value(s, &doubled)?;
        Ok(Evaluation {
            re: value.re,
            im: value.im,
            stability: (value - refined).norm(),
        })
    }

    fn smoothed_sum(&self, s: Complex64, x: f64, n_terms: usize) -> Complex64 {
        let table = self.coeffs.table();
        let mut acc = Complex64::new(0.0, 0.0);
        let inv_x2 = 1.0 / (x * x);
        for (n, &lam) in table.iter().enumerate().take(n_terms + 1).skip(1) {
            if lam == 0.0 {
                continue;
            }
            let ln_n = (n as f64).ln();
            let mag = lam * (-s.re * ln_n - (n * n) as f64 * inv_x2).exp();
            let phase = -s.im * ln_n;
            acc += Complex64::new(mag * phase.cos(), mag * phase.sin());
        }
        acc
    }

    fn euler_product(&self, s: Complex64, p_max: u64) -> Result<Complex64> {
        let mut log_acc = Complex64::new(0.0, 0.0);
        for &(p, theta) in &self.thetas {
            if p > p_max {
                break;
            }
            let factor = local_factor_from_theta(p, theta, self.kind)?;
            let x = (-s * (p as f64).ln()).exp();
            let d = factor.eval(x);
            if d.norm() == 0.0 {
                return Err(Error::NumericInstability(format!(
                    "local factor vanished at p = {p}"
                )));
            }
            log_acc -= d.ln();
        }
        Ok(log_acc.exp())
    }

    /// Empirical mean square along `Re s = sigma` against the diagonal
    /// reference with the same Gaussian weights folded in.
    pub fn mean_square(&self, sigma: f64, t_max: f64, dt: f64) -> Result<MeanSquareReport> {
        if sigma <= self.sigma_strip() {
            return Err(Error::OutOfRegion(format!(
                "mean square needs sigma > {:.4}",
                self.sigma_strip()
            )));
        }
        if t_max < 100.0 {
            return Err(Error::invalid("mean square needs T >= 100"));
        }
        if dt <= 0.0 {
            return Err(Error::invalid("grid step must be positive"));
        }
        let params = EvalParams::for_height(t_max);
        self.check_terms(params.n_terms)?;
        let n_grid = (t_max / dt).floor() as usize;
        let values: Vec<f64> = (0..n_grid)
            .into_par_iter()
            .map(|j| {
                let t = (j as f64 + 0.5) * dt;
                self.smoothed_sum(Complex64::new(sigma, t), params.x_smoothing, params.n_terms)
                    .norm_sqr()
            })
            .collect();
        let m_emp = values.iter().sum::<f64>() * dt / t_max;
        let inv_x2 = 1.0 / (params.x_smoothing * params.x_smoothing);
        let mut m_ref = 0.0;
        for n in 1..=params.n_terms.min(self.bound()) {
            let lam = self.coeffs.get(n);
            if lam == 0.0 {
                continue;
            }
            let w = (-((n * n) as f64) * inv_x2).exp();
            m_ref += lam * lam * (n as f64).powf(-2.0 * sigma) * w * w;
        }
        Ok(MeanSquareReport {
            kind: self.kind.label(),
            weight: self.weight,
            sigma,
            t_max,
            dt,
            x_smoothing: params.x_smoothing,
            n_terms: params.n_terms,
            n_grid,
            m_emp,
            m_ref,
            ratio: m_emp / m_ref,
        })
    }

    /// Least-squares slope of `log |L(sigma + it)|` against `log t`,
    /// reported next to the convexity exponent. Informational only.
    pub fn growth_diagnostic(&self, sigma: f64, t_samples: &[f64]) -> Result<GrowthDiagnostic> {
        if t_samples.len() < 8 {
            return Err(Error::invalid("growth diagnostic needs at least 8 samples"));
        }
        if t_samples.windows(2).any(|w| w[1] <= w[0]) || t_samples[0] < 1.0 {
            return Err(Error::invalid(
                "sample heights must be strictly increasing and >= 1",
            ));
        }
        if sigma <= self.sigma_strip() {
            return Err(Error::OutOfRegion(format!(
                "growth diagnostic needs sigma > {:.4}",
                self.sigma_strip()
            )));
        }
        let max_needed = EvalParams::for_height(*t_samples.last().unwrap()).n_terms;
        self.check_terms(max_needed)?;
        let points: Vec<(f64, f64)> = t_samples
            .par_iter()
            .map(|&t| {
                let params = EvalParams::for_height(t);
                let v = self
                    .smoothed_sum(Complex64::new(sigma, t), params.x_smoothing, params.n_terms)
                    .norm();
                (t.ln(), v.max(1e-300).ln())
            })
            .collect();
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let cov = points
            .iter()
            .map(|p| (p.0 - mx) * (p.1 - my))
            .sum::<f64>();
        let var = points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
        Ok(GrowthDiagnostic {
            kind: self.kind.label(),
            sigma,
            n_samples: t_samples.len(),
            fitted_exponent: cov / var,
            convexity_exponent: self.kind.convexity_exponent(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeanSquareReport {
    pub kind: String,
    pub weight: u32,
    pub sigma: f64,
    pub t_max: f64,
    pub dt: f64,
    pub x_smoothing: f64,
    pub n_terms: usize,
    pub n_grid: usize,
    pub m_emp: f64,
    pub m_ref: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthDiagnostic {
    pub kind: String,
    pub sigma: f64,
    pub n_samples: usize,
    pub fitted_exponent: f64,
    pub convexity_exponent: f64,
}

/// Sign and residual of the completed-function symmetry for `sym^1`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FunctionalEquationData {
    pub epsilon: i32,
    pub residual: f64,
}

const THETA_TERMS: usize = 14;
const QUAD_UPPER: f64 = 14.0;
const QUAD_PANELS: usize = 16;

/// `theta(y) = sum c(n) exp(-2 pi n y)` for `y >= 1`; fourteen terms put
/// the dropped tail below 1e-30.
fn theta_series(form: &HeckeEigenform, y: f64) -> f64 {
    let a = (form.weight() as f64 - 1.0) / 2.0;
    let mut acc = 0.0;
    for n in 1..=THETA_TERMS {
        let c = form.lambda(n) * (n as f64).powf(a);
        acc += c * (-2.0 * std::f64::consts::PI * n as f64 * y).exp();
    }
    acc
}

/// Split-integral completed value with a candidate sign:
/// `2 int_1^inf theta(y) (y^{s+a} + eps y^{1-s+a}) dy/y`.
fn lambda_split_integral(form: &HeckeEigenform, s: Complex64, eps: f64) -> Complex64 {
    let a = (form.weight() as f64 - 1.0) / 2.0;
    integrate_gl(
        |y| {
            let ln_y = y.ln();
            // y^{s+a-1} and y^{(1-s)+a-1}
            let direct = ((s + (a - 1.0)) * ln_y).exp();
            let mirrored = ((Complex64::new(a, 0.0) - s) * ln_y).exp();
            (direct + mirrored * eps) * theta_series(form, y)
        },
        1.0,
        QUAD_UPPER,
        QUAD_PANELS,
    ) * 2.0
}

fn plain_dirichlet(form: &HeckeEigenform, s: Complex64, n_terms: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=n_terms.min(form.truncation()) {
        let lam = form.lambda(n);
        if lam != 0.0 {
            acc += lam * (-s * (n as f64).ln()).exp();
        }
    }
    acc
}

fn determine_epsilon(form: &HeckeEigenform) -> Result<f64> {
    if form.truncation() < 2000 {
        return Err(Error::InsufficientCache {
            needed: 2000,
            available: form.truncation(),
        });
    }
    let a = (form.weight() as f64 - 1.0) / 2.0;
    // Discriminate in the absolute-convergence region, where the
    // Dirichlet series pins the completed value independently of the sign.
    let mut best = (f64::INFINITY, 1.0);
    for eps in [1.0, -1.0] {
        let mut dist = 0.0;
        for sigma0 in [2.5, 3.0] {
            let s = Complex64::new(sigma0, 0.0);
            let reference =
                ln_gamma_c(s + a).exp() * plain_dirichlet(form, s, form.truncation().min(20_000));
            dist += (lambda_split_integral(form, s, eps) - reference).norm();
        }
        if dist < best.0 {
            best = (dist, eps);
        }
    }
    Ok(best.1)
}

/// Completed value `Lambda(s) = Gamma_C(s + (k-1)/2) L(s, f)` through the
/// rapidly convergent split integral. Only the `sym^1` kind is completed;
/// other kinds are a documented limitation.
pub fn completed_lambda(form: &HeckeEigenform, kind: LKind, s: Complex64) -> Result<Complex64> {
    if kind != LKind::Sym(1) {
        return Err(Error::UnsupportedKind(format!(
            "completed evaluation covers sym1 only, not {}",
            kind.label()
        )));
    }
    let eps = determine_epsilon(form)?;
    Ok(lambda_split_integral(form, s, eps))
}

/// Determine the sign numerically and measure the symmetry residual
/// `max |Lambda(s) - eps Lambda(1-s)|` over fixed test points.
pub fn functional_equation_check(form: &HeckeEigenform) -> Result<FunctionalEquationData> {
    let eps = determine_epsilon(form)?;
    let one = Complex64::new(1.0, 0.0);
    let test_points = [
        Complex64::new(0.3, 2.0),
        Complex64::new(0.75, 0.0),
        Complex64::new(0.6, 5.0),
    ];
    let mut residual = 0.0f64;
    for s in test_points {
        let lhs = lambda_split_integral(form, s, eps);
        let rhs = lambda_split_integral(form, one - s, eps) * eps;
        residual = residual.max((lhs - rhs).norm());
    }
    Ok(FunctionalEquationData {
        epsilon: eps as i32,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modform::qexp_newform;

    fn delta_lseries(kind: LKind, n: usize) -> LSeries {
        let f = qexp_newform(12, n).unwrap();
        LSeries::new(&f, kind, n).unwrap()
    }

    #[test]
    fn sigma_strip_values() {
        assert_eq!(sigma_strip(LKind::Sym(1)), 0.5);
        assert!((sigma_strip(LKind::Sym(4)) - 0.8).abs() < 1e-15);
        assert!((sigma_strip(LKind::RankinSelberg(4)) - 0.96).abs() < 1e-15);
    }

    #[test]
    fn gamma_shapes_all_eight() {
        use GammaKind::{C, R};
        let expect = |kind: LKind, shape: &[(GammaKind, f64)]| {
            let spec = gamma_spec(kind, 12);
            let got: Vec<(GammaKind, f64)> =
                spec.factors.iter().map(|f| (f.kind, f.shift)).collect();
            assert_eq!(got, shape, "{kind:?}");
            assert_eq!(spec.degree(), kind.degree(), "{kind:?}");
        };
        expect(LKind::Sym(1), &[(C, 5.5)]);
        expect(LKind::Sym(2), &[(R, 1.0), (C, 11.0)]);
        expect(LKind::Sym(3), &[(C, 5.5), (C, 16.5)]);
        expect(LKind::Sym(4), &[(R, 0.0), (C, 11.0), (C, 22.0)]);
        expect(LKind::RankinSelberg(1), &[(C, 0.0), (C, 11.0)]);
        expect(
            LKind::RankinSelberg(2),
            &[(R, 0.0), (C, 0.0), (C, 11.0), (C, 11.0), (C, 22.0)],
        );
        expect(
            LKind::RankinSelberg(3),
            &[
                (C, 0.0),
                (C, 0.0),
                (C, 11.0),
                (C, 11.0),
                (C, 11.0),
                (C, 22.0),
                (C, 22.0),
                (C, 33.0),
            ],
        );
        let rs4 = gamma_spec(LKind::RankinSelberg(4), 12);
        assert_eq!(rs4.degree(), 25);
        assert_eq!(rs4.factors[0].kind, R);
        assert_eq!(
            rs4.factors.iter().filter(|f| f.shift == 11.0).count(),
            4
        );
    }

    #[test]
    fn large_sigma_tends_to_one() {
        let l = delta_lseries(LKind::Sym(2), 2000);
        // leading Dirichlet term dominates: deviation ~ |lambda(2)| 2^{-30}
        let v = l
            .eval_value(Complex64::new(30.0, 0.0), &EvalParams::euler(2000))
            .unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        // the smoothed route carries its Gaussian weight exp(-1/X^2) on
        // the n = 1 term, so it approaches 1 only at the 1/X^2 scale
        let s = l
            .eval_value(Complex64::new(30.0, 0.0), &EvalParams::smoothed(50.0))
            .unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn modes_agree_in_absolute_convergence_region() {
        let l = delta_lseries(LKind::Sym(2), 40_000);
        for s in [Complex64::new(6.0, 0.0), Complex64::new(4.0, 1.5)] {
            let smooth = l.eval_value(s, &EvalParams::smoothed(2000.0)).unwrap();
            let euler = l.eval_value(s, &EvalParams::euler(20_000)).unwrap();
            assert!(
                (smooth - euler).norm() < 1e-6,
                "s = {s}: {:.3e}",
                (smooth - euler).norm()
            );
        }
    }

    #[test]
    fn modes_agree_to_1e9_well_inside_absolute_convergence() {
        // At sigma = 6 the smoothing bias |L(4)|/X^2 needs X ~ 4e4 to
        // push the two routes together at the 1e-9 scale.
        let l = delta_lseries(LKind::Sym(1), 400_000);
        let s = Complex64::new(6.0, 0.0);
        let smooth = l.eval_value(s, &EvalParams::smoothed(40_000.0)).unwrap();
        let euler = l.eval_value(s, &EvalParams::euler(200_000)).unwrap();
        assert!(
            (smooth - euler).norm() < 1e-9,
            "{:.3e}",
            (smooth - euler).norm()
        );
    }

    #[test]
    fn out_of_region_is_rejected() {
        let l = delta_lseries(LKind::Sym(2), 1000);
        assert!(matches!(
            l.eval_value(Complex64::new(0.6, 0.0), &EvalParams::smoothed(50.0)),
            Err(Error::OutOfRegion(_))
        ));
        assert!(matches!(
            l.eval_value(Complex64::new(0.9, 0.0), &EvalParams::euler(500)),
            Err(Error::OutOfRegion(_))
        ));
    }

    #[test]
    fn params_tail_rule_is_enforced() {
        let p = EvalParams {
            x_smoothing: 100.0,
            n_terms: 500,
            mode: EvalMode::Smoothed,
        };
        let l = delta_lseries(LKind::Sym(1), 1000);
        assert!(matches!(
            l.eval_value(Complex64::new(2.0, 0.0), &p),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn stability_estimate_is_small_when_converged() {
        // the X -> 2X difference tracks the leading smoothing bias
        // |L(s-2)| (3/4) / X^2, about 6e-5 at X = 100
        let l = delta_lseries(LKind::Sym(1), 4000);
        let e = l
            .eval(Complex64::new(3.0, 0.7), &EvalParams::smoothed(100.0))
            .unwrap();
        assert!(e.stability < 1e-3, "stability {:.3e}", e.stability);
        assert!(e.stability > 1e-7, "stability {:.3e}", e.stability);
    }

    #[test]
    fn mean_square_absolute_region() {
        let l = delta_lseries(LKind::Sym(1), 4000);
        let r = l.mean_square(2.0, 120.0, 0.05).unwrap();
        assert!(
            r.ratio > 0.99 && r.ratio < 1.01,
            "ratio {:.4} (emp {:.6}, ref {:.6})",
            r.ratio,
            r.m_emp,
            r.m_ref
        );
        // halving the grid step moves the estimate by well under 1%
        let r2 = l.mean_square(2.0, 120.0, 0.025).unwrap();
        assert!((r2.m_emp - r.m_emp).abs() / r.m_emp < 0.01);
    }

    #[test]
    fn growth_diagnostic_flat_at_large_sigma() {
        let l = delta_lseries(LKind::Sym(2), 2000);
        let ts: Vec<f64> = (1..=10).map(|i| 4.0 * i as f64).collect();
        let g = l.growth_diagnostic(3.0, &ts).unwrap();
        assert!(g.fitted_exponent.abs() < 0.05, "slope {}", g.fitted_exponent);
        assert!((g.convexity_exponent - 0.75).abs() < 1e-15);
        assert!(l.growth_diagnostic(3.0, &ts[..5]).is_err());
        let bad = [4.0, 3.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
        assert!(l.growth_diagnostic(3.0, &bad).is_err());
    }

    #[test]
    fn completed_lambda_rejects_other_kinds() {
        let f = qexp_newform(12, 2000).unwrap();
        assert!(matches!(
            completed_lambda(&f, LKind::Sym(2), Complex64::new(0.8, 0.0)),
            Err(Error::UnsupportedKind(_))
        ));
    }

    #[test]
    fn functional_equation_for_delta() {
        let f = qexp_newform(12, 4000).unwrap();
        let fe = functional_equation_check(&f).unwrap();
        assert_eq!(fe.epsilon, 1);
        assert!(fe.residual < 1e-8, "residual {:.3e}", fe.residual);
    }

    #[test]
    fn completed_value_matches_dirichlet_route() {
        let f = qexp_newform(12, 4000).unwrap();
        let s = Complex64::new(2.0, 0.0);
        let lam = completed_lambda(&f, LKind::Sym(1), s).unwrap();
        let reference = ln_gamma_c(s + 5.5).exp() * plain_dirichlet(&f, s, 4000);
        assert!(
            (lam - reference).norm() < 1e-6,
            "{:.3e}",
            (lam - reference).norm()
        );
    }

    #[test]
    fn completed_conjugate_symmetry() {
        let f = qexp_newform(12, 2000).unwrap();
        let s = Complex64::new(0.7, 1.3);
        let a = completed_lambda(&f, LKind::Sym(1), s).unwrap();
        let b = completed_lambda(&f, LKind::Sym(1), s.conj()).unwrap();
        assert!((a.conj() - b).norm() < 1e-10);
    }
}
