//! Random Euler products over independent Haar-uniform phases, and the
//! comparison of their value distribution against vertical shifts of the
//! deterministic function.
//!
//! Phases come from a counter-based generator keyed by `(seed, sample,
//! prime index)`: every phase is a pure function of its key, so any
//! parallel schedule reproduces exactly the multiset of samples the
//! sequential one would produce.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lvalue::{EvalParams, LSeries};
use crate::numeric::keyed_unit;
use crate::stats::{complex_moments, ks_statistic, Moments};
use crate::sympower::local_factor_from_theta;

/// One sample point of the phase torus: a unit-modulus value per prime,
/// stored as an angle so the modulus is exactly 1.
#[derive(Debug, Clone)]
pub struct PhaseAssignment {
    pub seed: u64,
    pub sample_index: u64,
    pub p_max: u64,
    /// angle of `omega_p` for the i-th prime
    angles: Vec<f64>,
}

impl PhaseAssignment {
    /// `omega_p` for the i-th prime in the supporting table.
    pub fn omega(&self, prime_index: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.angles[prime_index])
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// Draw i.i.d. uniform circle phases for every prime `p <= p_max`,
/// keyed by `(seed, prime index)` and independent of evaluation order.
pub fn sample_phases(seed: u64, primes: &[u64], p_max: u64) -> Result<PhaseAssignment> {
    sample_phases_indexed(seed, 0, primes, p_max)
}

/// As [`sample_phases`] with an extra sample counter, for batches.
pub fn sample_phases_indexed(
    seed: u64,
    sample_index: u64,
    primes: &[u64],
    p_max: u64,
) -> Result<PhaseAssignment> {
    if p_max < 2 {
        return Err(Error::invalid("phase assignment needs p_max >= 2"));
    }
    let angles = primes
        .iter()
        .take_while(|&&p| p <= p_max)
        .enumerate()
        .map(|(i, _)| 2.0 * std::f64::consts::PI * keyed_unit(seed, sample_index, i as u64))
        .collect();
    Ok(PhaseAssignment {
        seed,
        sample_index,
        p_max,
        angles,
    })
}

/// One draw of the random Euler product at a fixed point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelSample {
    pub re: f64,
    pub im: f64,
    pub log_re: f64,
    pub log_im: f64,
    pub p_max: u64,
}

impl ModelSample {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn log_value(&self) -> Complex64 {
        Complex64::new(self.log_re, self.log_im)
    }
}

/// Evaluator for the random products of one L-function: per-prime
/// coefficient tables `lambda(p^nu)` cut where the dropped tail falls
/// below 1e-14 at the lowest supported abscissa.
#[derive(Debug, Clone)]
pub struct RandomModel {
    primes: Vec<u64>,
    ln_p: Vec<f64>,
    /// `lambda(p^nu)` for `nu = 0..` per prime
    lambda_pp: Vec<Vec<f64>>,
    p_max: u64,
    sigma_floor: f64,
}

const TAIL_CUTOFF: f64 = 1e-14;
const SIGMA_FLOOR: f64 = 0.51;

impl RandomModel {
    pub fn new(lser: &LSeries, p_max: u64) -> Result<Self> {
        if p_max < 2 {
            return Err(Error::invalid("random model needs p_max >= 2"));
        }
        if p_max as usize > lser.bound() {
            return Err(Error::InsufficientCache {
                needed: p_max as usize,
                available: lser.bound(),
            });
        }
        let kind = lser.kind();
        let mut primes = Vec::new();
        let mut ln_p = Vec::new();
        let mut lambda_pp = Vec::new();
        let z = kind.degree() as f64;
        for &(p, theta) in lser.prime_thetas() {
            if p > p_max {
                break;
            }
            let factor = local_factor_from_theta(p, theta, kind)?;
            // extend until d_z(p^nu) p^{-nu sigma} is safely below the
            // cutoff at the lowest abscissa this model supports, using
            // d_z(p^{nu+1})/d_z(p^nu) = (z + nu)/(nu + 1)
            let psf = (p as f64).powf(-SIGMA_FLOOR);
            let mut nu_max = 1usize;
            let mut bound = z * psf;
            while bound > TAIL_CUTOFF * 1e-2 && nu_max < 800 {
                bound *= (z + nu_max as f64) / (nu_max as f64 + 1.0) * psf;
                nu_max += 1;
            }
            lambda_pp.push(factor.invert(nu_max));
            primes.push(p);
            ln_p.push((p as f64).ln());
        }
        Ok(RandomModel {
            primes,
            ln_p,
            lambda_pp,
            p_max,
            sigma_floor: SIGMA_FLOOR,
        })
    }

    pub fn p_max(&self) -> u64 {
        self.p_max
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn check_region(&self, s: Complex64) -> Result<()> {
        if s.re <= 0.5 {
            return Err(Error::OutOfRegion(format!(
                "random products need Re s > 1/2, got {:.4}",
                s.re
            )));
        }
        if s.re < self.sigma_floor {
            return Err(Error::OutOfRegion(format!(
                "coefficient tables support Re s >= {:.2}",
                self.sigma_floor
            )));
        }
        Ok(())
    }

    /// `L(s, F; omega)` as the finite product of truncated local sums,
    /// with `log` accumulated factor by factor so `exp(log) == value`.
    pub fn sample(&self, phases: &PhaseAssignment, s: Complex64) -> Result<ModelSample> {
        self.check_region(s)?;
        let mut value = Complex64::new(1.0, 0.0);
        let mut log_value = Complex64::new(0.0, 0.0);
        for (i, lams) in self.lambda_pp.iter().enumerate() {
            let omega = phases.omega(i);
            let z = (-s * self.ln_p[i]).exp();
            let mut local = Complex64::new(1.0, 0.0);
            let mut w = Complex64::new(1.0, 0.0);
            for &lam in &lams[1..] {
                w *= omega * z;
                if lam != 0.0 {
                    local += lam * w;
                }
            }
            value *= local;
            log_value += local.ln();
        }
        Ok(ModelSample {
            re: value.re,
            im: value.im,
            log_re: log_value.re,
            log_im: log_value.im,
            p_max: self.p_max,
        })
    }

    /// First-order log series `-sum_p log(1 - omega_p lambda(p) p^{-s})`.
    pub fn log_first_order(&self, phases: &PhaseAssignment, s: Complex64) -> Result<Complex64> {
        self.check_region(s)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.primes.len() {
            let lam = self.lambda_pp[i].get(1).copied().unwrap_or(0.0);
            let z = (-s * self.ln_p[i]).exp();
            acc -= (Complex64::new(1.0, 0.0) - phases.omega(i) * lam * z).ln();
        }
        Ok(acc)
    }

    /// Flat series `-sum_{p0 < p} omega_p log(1 - lambda(p) p^{-s})`.
    pub fn log_flat(&self, phases: &PhaseAssignment, s: Complex64, p0: u64) -> Result<Complex64> {
        if p0 < 3 {
            return Err(Error::invalid("flat series needs p0 >= 3"));
        }
        self.check_region(s)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.primes.len() {
            if self.primes[i] <= p0 {
                continue;
            }
            let lam = self.lambda_pp[i].get(1).copied().unwrap_or(0.0);
            let z = (-s * self.ln_p[i]).exp();
            acc -= phases.omega(i) * (Complex64::new(1.0, 0.0) - lam * z).ln();
        }
        Ok(acc)
    }

    /// Exact second moment of the model at `s`:
    /// `prod_p sum_nu lambda(p^nu)^2 p^{-2 nu sigma}` over the same
    /// truncated support the samples use.
    pub fn expected_second_moment(&self, s: Complex64) -> Result<f64> {
        self.check_region(s)?;
        let sigma = s.re;
        let mut acc = 1.0f64;
        for (i, lams) in self.lambda_pp.iter().enumerate() {
            let p2s = (self.primes[i] as f64).powf(-2.0 * sigma);
            let mut local = 0.0;
            let mut w = 1.0;
            for &lam in lams.iter() {
                local += lam * lam * w;
                w *= p2s;
            }
            acc *= local;
        }
        Ok(acc)
    }

    /// Deterministic batch of `n` samples at `s`, keyed by `seed`.
    pub fn sample_batch(&self, seed: u64, n: usize, s: Complex64) -> Result<Vec<ModelSample>> {
        self.check_region(s)?;
        let primes = &self.primes;
        (0..n as u64)
            .into_par_iter()
            .map(|j| {
                let phases = sample_phases_indexed(seed, j, primes, self.p_max)?;
                self.sample(&phases, s)
            })
            .collect()
    }
}

/// Options for [`distribution_compare`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CompareOptions {
    pub t_span: f64,
    pub n_shift: usize,
    pub n_model: usize,
    pub seed: u64,
    pub p_max: u64,
}

/// Two-sample comparison report between vertical-shift values and random
/// model values at a fixed `s`.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionReport {
    pub kind: String,
    pub weight: u32,
    pub s_re: f64,
    pub s_im: f64,
    pub t_span: f64,
    pub n_shift: usize,
    pub n_model: usize,
    pub ks_re: f64,
    pub ks_im: f64,
    pub ks_abs: f64,
    pub moments_shift: Moments,
    pub moments_model: Moments,
    pub p_max: u64,
    pub seed: u64,
    pub x_smoothing: f64,
}

/// Draw `n_shift` values `L(s + it)` with `t` uniform on `[0, T]` and
/// `n_model` random-product samples; compare `Re log`, `Im log` and `|L|`
/// by the two-sample KS statistic and report both sets of moments.
///
/// Shift values use one fixed smoothing length for the whole batch so the
/// two populations are identically processed.
pub fn distribution_compare(
    lser: &LSeries,
    s: Complex64,
    opts: &CompareOptions,
) -> Result<DistributionReport> {
    if opts.n_shift < 100 || opts.n_model < 100 {
        return Err(Error::invalid("comparison needs at least 100 samples per side"));
    }
    if s.re <= lser.sigma_strip() {
        return Err(Error::OutOfRegion(format!(
            "comparison needs Re s > {:.4}",
            lser.sigma_strip()
        )));
    }
    let params = EvalParams::for_height(opts.t_span);
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    let ts: Vec<f64> = (0..opts.n_shift)
        .map(|_| rng.gen::<f64>() * opts.t_span)
        .collect();
    let shift_values: Vec<Complex64> = ts
        .par_iter()
        .map(|&t| lser.eval_value(s + Complex64::new(0.0, t), &params))
        .collect::<Result<_>>()?;

    let model = RandomModel::new(lser, opts.p_max)?;
    let model_values: Vec<Complex64> = model
        .sample_batch(opts.seed, opts.n_model, s)?
        .iter()
        .map(|m| m.value())
        .collect();

    let log_of = |v: &Complex64| v.ln();
    let shift_logs: Vec<Complex64> = shift_values.iter().map(log_of).collect();
    let model_logs: Vec<Complex64> = model_values.iter().map(log_of).collect();
    let re_a: Vec<f64> = shift_logs.iter().map(|z| z.re).collect();
    let re_b: Vec<f64> = model_logs.iter().map(|z| z.re).collect();
    let im_a: Vec<f64> = shift_logs.iter().map(|z| z.im).collect();
    let im_b: Vec<f64> = model_logs.iter().map(|z| z.im).collect();
    let abs_a: Vec<f64> = shift_values.iter().map(|z| z.norm()).collect();
    let abs_b: Vec<f64> = model_values.iter().map(|z| z.norm()).collect();

    Ok(DistributionReport {
        kind: lser.kind().label(),
        weight: lser.weight(),
        s_re: s.re,
        s_im: s.im,
        t_span: opts.t_span,
        n_shift: opts.n_shift,
        n_model: opts.n_model,
        ks_re: ks_statistic(&re_a, &re_b),
        ks_im: ks_statistic(&im_a, &im_b),
        ks_abs: ks_statistic(&abs_a, &abs_b),
        moments_shift: complex_moments(&shift_values),
        moments_model: complex_moments(&model_values),
        p_max: opts.p_max,
        seed: opts.seed,
        x_smoothing: params.x_smoothing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modform::qexp_newform;
    use crate::sympower::LKind;

    fn sym2_series(n: usize) -> LSeries {
        let f = qexp_newform(12, n).unwrap();
        LSeries::new(&f, LKind::Sym(2), n).unwrap()
    }

    #[test]
    fn phases_are_deterministic_and_unit() {
        let l = sym2_series(2000);
        let primes: Vec<u64> = l.prime_thetas().iter().map(|&(p, _)| p).collect();
        let a = sample_phases(42, &primes, 2000).unwrap();
        let b = sample_phases(42, &primes, 2000).unwrap();
        assert_eq!(a.angles(), b.angles());
        let c = sample_phases(43, &primes, 2000).unwrap();
        assert_ne!(a.angles(), c.angles());
        for i in 0..a.angles().len() {
            assert!((a.omega(i).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn phase_mean_obeys_clt_scale() {
        let table = crate::prime_stats::PrimeTable::new(100_000);
        let phases = sample_phases(7, table.primes(), 100_000).unwrap();
        let n = phases.angles().len();
        assert_eq!(n, 9592);
        let mean = (0..n).map(|i| phases.omega(i)).sum::<Complex64>() / n as f64;
        assert!(
            mean.norm() <= 3.0 / (n as f64).sqrt(),
            "|mean| = {:.5}",
            mean.norm()
        );
    }

    #[test]
    fn unit_phases_collapse_to_euler_product() {
        let l = sym2_series(4000);
        let model = RandomModel::new(&l, 4000).unwrap();
        let primes: Vec<u64> = model.primes().to_vec();
        let mut phases = sample_phases(1, &primes, 4000).unwrap();
        phases.angles = vec![0.0; primes.len()];
        let s = Complex64::new(1.5, 0.3);
        let sample = model.sample(&phases, s).unwrap();
        let euler = l.eval_value(s, &EvalParams::euler(4000)).unwrap();
        assert!(
            (sample.value() - euler).norm() < 1e-9,
            "{:.3e}",
            (sample.value() - euler).norm()
        );
    }

    #[test]
    fn exp_of_log_recovers_value() {
        let l = sym2_series(2000);
        let model = RandomModel::new(&l, 2000).unwrap();
        let primes: Vec<u64> = model.primes().to_vec();
        for seed in 0..20 {
            let phases = sample_phases(seed, &primes, 2000).unwrap();
            let m = model.sample(&phases, Complex64::new(0.8, 0.0)).unwrap();
            assert!((m.log_value().exp() - m.value()).norm() < 1e-8);
            assert!(m.value().norm() > 0.0);
        }
    }

    #[test]
    fn model_mean_is_near_one() {
        let l = sym2_series(2000);
        let model = RandomModel::new(&l, 2000).unwrap();
        let batch = model
            .sample_batch(11, 4000, Complex64::new(0.8, 0.0))
            .unwrap();
        let values: Vec<Complex64> = batch.iter().map(|m| m.value()).collect();
        let mom = complex_moments(&values);
        assert!(
            mom.mean_re > 1.0 - 3.0 * mom.se_re && mom.mean_re < 1.0 + 3.0 * mom.se_re,
            "mean {} +- {}",
            mom.mean_re,
            mom.se_re
        );
        let expected = model
            .expected_second_moment(Complex64::new(0.8, 0.0))
            .unwrap();
        assert!(
            (mom.second_abs - expected).abs() < 3.0 * mom.se_second,
            "second {} vs {} (se {})",
            mom.second_abs,
            expected,
            mom.se_second
        );
    }

    #[test]
    fn batches_are_schedule_independent() {
        let l = sym2_series(1000);
        let model = RandomModel::new(&l, 1000).unwrap();
        let s = Complex64::new(0.9, 0.0);
        let a = model.sample_batch(5, 64, s).unwrap();
        let b = model.sample_batch(5, 64, s).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value(), y.value());
        }
    }

    #[test]
    fn null_self_test_two_model_batches() {
        let l = sym2_series(2000);
        let model = RandomModel::new(&l, 2000).unwrap();
        let s = Complex64::new(0.8, 0.0);
        let n = 500;
        let mut passes = 0;
        for rep in 0..20u64 {
            let a: Vec<f64> = model
                .sample_batch(1000 + rep, n, s)
                .unwrap()
                .iter()
                .map(|m| m.value().norm())
                .collect();
            let b: Vec<f64> = model
                .sample_batch(5000 + rep, n, s)
                .unwrap()
                .iter()
                .map(|m| m.value().norm())
                .collect();
            if ks_statistic(&a, &b) < crate::stats::ks_critical_value(0.01, n, n) {
                passes += 1;
            }
        }
        assert!(passes >= 19, "only {passes}/20 under the 1% critical value");
    }

    #[test]
    fn degenerate_comparison_is_zero() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(ks_statistic(&a, &a), 0.0);
    }

    #[test]
    fn region_is_enforced() {
        let l = sym2_series(1000);
        let model = RandomModel::new(&l, 1000).unwrap();
        let primes: Vec<u64> = model.primes().to_vec();
        let phases = sample_phases(1, &primes, 1000).unwrap();
        assert!(matches!(
            model.sample(&phases, Complex64::new(0.5, 0.0)),
            Err(Error::OutOfRegion(_))
        ));
        assert!(matches!(
            distribution_compare(
                &l,
                Complex64::new(0.8, 0.0),
                &CompareOptions {
                    t_span: 100.0,
                    n_shift: 10,
                    n_model: 10,
                    seed: 1,
                    p_max: 1000
                }
            ),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn tail_stability_under_p_max_growth() {
        // The tail a fixed-seed sample gains when p_max grows 10x has
        // typical size sqrt(sum lambda(p)^2 p^{-2 sigma}) over the new
        // primes, a few times 1e-2 at sigma = 0.9; assert a safe multiple.
        let l = sym2_series(40_000);
        let small = RandomModel::new(&l, 10_000).unwrap();
        let large = RandomModel::new(&l, 40_000).unwrap();
        let primes_small: Vec<u64> = small.primes().to_vec();
        let primes_large: Vec<u64> = large.primes().to_vec();
        let s = Complex64::new(0.9, 0.0);
        for seed in 0..5 {
            let a = small
                .sample(&sample_phases(seed, &primes_small, 10_000).unwrap(), s)
                .unwrap();
            let b = large
                .sample(&sample_phases(seed, &primes_large, 40_000).unwrap(), s)
                .unwrap();
            // shared prefix of phases, so the difference is the new tail
            assert!(
                (a.value() - b.value()).norm() < 5e-2,
                "{:.3e}",
                (a.value() - b.value()).norm()
            );
        }
    }

    #[test]
    fn flat_series_converges_reasonably() {
        let l = sym2_series(2000);
        let model = RandomModel::new(&l, 2000).unwrap();
        let primes: Vec<u64> = model.primes().to_vec();
        let phases = sample_phases(3, &primes, 2000).unwrap();
        let v = model
            .log_flat(&phases, Complex64::new(0.9, 0.0), 3)
            .unwrap();
        assert!(v.norm() < 50.0);
        assert!(model
            .log_flat(&phases, Complex64::new(0.9, 0.0), 2)
            .is_err());
    }
}
