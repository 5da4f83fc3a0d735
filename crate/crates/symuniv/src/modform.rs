//! Level-1 Hecke eigenforms as exact q-expansions.
//!
//! For the six even weights k in {12, 16, 18, 20, 22, 26} the cusp space is
//! one-dimensional, so the normalized generator is automatically a Hecke
//! eigenform. It is produced exactly, as the discriminant form times a
//! monomial in the Eisenstein series E4 and E6, with big-integer
//! coefficients; normalized eigenvalues `lambda(n) = c(n) / n^{(k-1)/2}`
//! are derived afterwards as floats.
//!
//! The discriminant expansion itself goes through the eighth power of the
//! sparse theta series `sum (-1)^k (2k+1) q^{k(k+1)/2}`, which keeps the
//! cost at O(N^{3/2}) coefficient operations. Below [`DELTA_I128_BOUND`]
//! the arithmetic runs in checked `i128` and widens at the end; above it,
//! or on (impossible at that bound) overflow, it falls back to `BigInt`.

use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::chebyshev_u;
use crate::qseries::{theta_cube_terms, Coeff, QSeries};

/// Weights whose level-1 cusp space is one-dimensional.
pub const ADMISSIBLE_WEIGHTS: &[u32] = &[12, 16, 18, 20, 22, 26];

/// Largest truncation for which the tau expansion provably fits in i128:
/// |tau(n)| <= d(n) n^{11/2} < 2^126 for n <= 2e6, with matching bounds for
/// the intermediate theta powers.
pub const DELTA_I128_BOUND: usize = 2_000_000;

/// Satake angle at a prime: `lambda(p) = 2 cos theta`, `theta` in `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatakeAngle {
    pub p: u64,
    pub theta: f64,
}

/// Normalized Hecke eigenform with exact integer coefficients
/// `c(n) = lambda(n) n^{(k-1)/2}` for `n` up to the truncation bound.
#[derive(Debug, Clone)]
pub struct HeckeEigenform {
    weight: u32,
    exact: QSeries<BigInt>,
    lambda: Vec<f64>,
}

/// q-expansion of the weight-12 discriminant form; the coefficient of
/// `q^n` is tau(n).
pub fn qexp_delta(n: usize) -> Result<QSeries<BigInt>> {
    if n == 0 {
        return Err(Error::invalid("truncation bound must be at least 1"));
    }
    if n <= DELTA_I128_BOUND {
        match delta_series::<i128>(n) {
            Ok(s) => return Ok(s.into_bigint()),
            Err(Error::SeriesOverflow(_)) => {} // fall through to BigInt
            Err(e) => return Err(e),
        }
    }
    delta_series::<BigInt>(n)
}

fn delta_series<C: Coeff>(n: usize) -> Result<QSeries<C>> {
    let t = n - 1; // theta^8 truncation; the q-shift restores degree n
    let terms = theta_cube_terms(t);
    // theta^2 straight from the sparse terms (the pair sums stay far below
    // i128: eta^6 coefficients grow like n^{5/2}), then six sparse passes.
    let mut sq = vec![0i128; t + 1];
    for (i, &(e1, c1)) in terms.iter().enumerate() {
        let d = (c1 * c1) as i128;
        if 2 * e1 <= t {
            sq[2 * e1] += d;
        }
        for &(e2, c2) in &terms[i + 1..] {
            let e = e1 + e2;
            if e > t {
                break;
            }
            sq[e] += 2 * (c1 * c2) as i128;
        }
    }
    let coeffs: Option<Vec<C>> = sq.into_iter().map(C::from_i128).collect();
    let mut acc = QSeries::from_coeffs(
        coeffs.ok_or_else(|| Error::SeriesOverflow("theta square".into()))?,
    );
    for _ in 0..6 {
        acc = acc.mul_sparse(&terms, t)?;
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(C::zero());
    coeffs.extend(acc.into_coeffs());
    Ok(QSeries::from_coeffs(coeffs))
}

/// Eisenstein series `E4 = 1 + 240 sum sigma_3(n) q^n` or
/// `E6 = 1 - 504 sum sigma_5(n) q^n`.
fn eisenstein<C: Coeff>(power: u32, scale: i64, trunc: usize) -> Result<QSeries<C>> {
    // sigma_power by the divisor sieve, accumulated in i128: the scaled
    // values stay below 1.1 * 504 * n^5 < 2^110 for n <= 2e6.
    let mut sums = vec![0i128; trunc + 1];
    for d in 1..=trunc as i128 {
        let dp = d.pow(power);
        let mut m = d as usize;
        while m <= trunc {
            sums[m] += dp;
            m += d as usize;
        }
    }
    let mut coeffs = Vec::with_capacity(trunc + 1);
    coeffs.push(C::one());
    for s in &sums[1..] {
        let v = s
            .checked_mul(scale as i128)
            .and_then(C::from_i128)
            .ok_or_else(|| Error::SeriesOverflow("Eisenstein coefficient".into()))?;
        coeffs.push(v);
    }
    Ok(QSeries::from_coeffs(coeffs))
}

pub fn eisenstein_e4(trunc: usize) -> Result<QSeries<BigInt>> {
    eisenstein::<BigInt>(3, 240, trunc)
}

pub fn eisenstein_e6(trunc: usize) -> Result<QSeries<BigInt>> {
    eisenstein::<BigInt>(5, -504, trunc)
}

/// The unique normalized cusp form of weight `k`, truncated at `q^n`.
///
/// Rejects weights whose cusp space is not one-dimensional: eigenform
/// extraction there would need Hecke-operator diagonalization.
pub fn qexp_newform(k: u32, n: usize) -> Result<HeckeEigenform> {
    if n == 0 {
        return Err(Error::invalid("truncation bound must be at least 1"));
    }
    let delta = qexp_delta(n)?;
    let exact = match k {
        12 => delta,
        16 => delta.mul_trunc(&eisenstein_e4(n)?, n)?,
        18 => delta.mul_trunc(&eisenstein_e6(n)?, n)?,
        20 => {
            let e4 = eisenstein_e4(n)?;
            delta.mul_trunc(&e4, n)?.mul_trunc(&e4, n)?
        }
        22 => delta
            .mul_trunc(&eisenstein_e4(n)?, n)?
            .mul_trunc(&eisenstein_e6(n)?, n)?,
        26 => {
            let e4 = eisenstein_e4(n)?;
            delta
                .mul_trunc(&e4, n)?
                .mul_trunc(&e4, n)?
                .mul_trunc(&eisenstein_e6(n)?, n)?
        }
        _ => {
            return Err(Error::UnsupportedWeight {
                weight: k,
                admissible: ADMISSIBLE_WEIGHTS,
            })
        }
    };
    HeckeEigenform::from_exact(k, exact)
}

impl HeckeEigenform {
    /// Wrap an exact expansion, deriving the normalized eigenvalues.
    pub fn from_exact(weight: u32, exact: QSeries<BigInt>) -> Result<Self> {
        if !ADMISSIBLE_WEIGHTS.contains(&weight) {
            return Err(Error::UnsupportedWeight {
                weight,
                admissible: ADMISSIBLE_WEIGHTS,
            });
        }
        let half = (weight as f64 - 1.0) / 2.0;
        let mut lambda = Vec::with_capacity(exact.truncation() + 1);
        lambda.push(0.0);
        for n in 1..=exact.truncation() {
            let c = big_to_f64(exact.coeff(n));
            lambda.push(c / (n as f64).powf(half));
        }
        if exact.truncation() >= 1 && (lambda[1] - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(
                "expansion is not normalized: lambda(1) != 1",
            ));
        }
        Ok(HeckeEigenform {
            weight,
            exact,
            lambda,
        })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Largest `n` with a stored coefficient.
    pub fn truncation(&self) -> usize {
        self.exact.truncation()
    }

    pub fn exact_coeff(&self, n: usize) -> &BigInt {
        self.exact.coeff(n)
    }

    pub fn exact_series(&self) -> &QSeries<BigInt> {
        &self.exact
    }

    /// Normalized eigenvalue `lambda(n)`.
    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambda
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if n > self.truncation() {
            return Err(Error::InsufficientCache {
                needed: n,
                available: self.truncation(),
            });
        }
        Ok(())
    }

    /// Satake angle at a prime `p <= N`.
    pub fn satake_angle(&self, p: u64) -> Result<SatakeAngle> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        self.check_range(p as usize)?;
        let lam = self.lambda[p as usize];
        if lam.abs() > 2.0 + 1e-12 {
            return Err(Error::DeligneViolation { p, lambda: lam });
        }
        // Clamp so round-off at |lambda| ~ 2 cannot produce NaN.
        let theta = (lam / 2.0).clamp(-1.0, 1.0).acos();
        Ok(SatakeAngle { p, theta })
    }

    /// `lambda(p^nu)` evaluated through the Chebyshev recurrence.
    pub fn lambda_prime_power(&self, p: u64, nu: u32) -> Result<f64> {
        let angle = self.satake_angle(p)?;
        Ok(chebyshev_u(nu, angle.theta.cos()))
    }

    /// Write the coefficient table as CSV `n,c_exact,lambda_norm`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n,c_exact,lambda_norm")?;
        for n in 1..=self.truncation() {
            writeln!(w, "{},{},{:.16e}", n, self.exact.coeff(n), self.lambda[n])?;
        }
        Ok(())
    }

    /// Read a table produced by [`HeckeEigenform::write_csv`].
    pub fn read_csv<R: BufRead>(weight: u32, r: R) -> Result<Self> {
        let mut lines = r.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim() == "n,c_exact,lambda_norm" => {}
            _ => return Err(Error::invalid("missing coefficient CSV header")),
        }
        let mut coeffs = vec![BigInt::zero()];
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.splitn(3, ',');
            let n: usize = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::invalid(format!("bad row {}", i + 2)))?;
            if n != coeffs.len() {
                return Err(Error::invalid(format!(
                    "coefficient rows out of order at n = {n}"
                )));
            }
            let c: BigInt = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::invalid(format!("bad integer in row {}", i + 2)))?;
            coeffs.push(c);
        }
        if coeffs.len() < 2 {
            return Err(Error::invalid("coefficient CSV has no rows"));
        }
        HeckeEigenform::from_exact(weight, QSeries::from_coeffs(coeffs))
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        if v.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Deterministic primality by trial division; callers pass moderate p.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::pentagonal_terms;

    /// Independent route: q * prod_{n<=N} (1 - q^n)^24 expanded term by
    /// term from the Euler-function closed form.
    fn delta_by_direct_product(n: usize) -> QSeries<BigInt> {
        let t = n - 1;
        let euler = pentagonal_terms(t);
        let base = QSeries::<i128>::one(t).mul_sparse(&euler, t).unwrap();
        let pow = base.pow_trunc(24, t).unwrap();
        let mut coeffs = vec![0i128];
        coeffs.extend(pow.into_coeffs());
        QSeries::from_coeffs(coeffs).into_bigint()
    }

    #[test]
    fn tau_initial_values() {
        let d = qexp_delta(12).unwrap();
        let expected: [i64; 12] = [
            1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(d.coeff(i + 1), &BigInt::from(*e), "tau({})", i + 1);
        }
    }

    #[test]
    fn zero_truncation_rejected() {
        assert!(matches!(qexp_delta(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn dual_route_small() {
        let n = 2000;
        let theta_route = qexp_delta(n).unwrap();
        let product_route = delta_by_direct_product(n);
        assert_eq!(theta_route.coeffs(), product_route.coeffs());
    }

    #[test]
    fn weight_16_second_coefficient() {
        // coefficient of q^2 in Delta * E4 is tau(2) + 240 = 216
        let f = qexp_newform(16, 4).unwrap();
        assert_eq!(f.exact_coeff(2), &BigInt::from(216));
    }

    #[test]
    fn weight_12_reduces_to_delta() {
        let f = qexp_newform(12, 10).unwrap();
        let d = qexp_delta(10).unwrap();
        assert_eq!(f.exact_series().coeffs(), d.coeffs());
    }

    #[test]
    fn unsupported_weights_name_the_admissible_set() {
        for k in [2u32, 4, 6, 8, 10, 14, 24, 28, 30] {
            match qexp_newform(k, 4) {
                Err(Error::UnsupportedWeight { weight, admissible }) => {
                    assert_eq!(weight, k);
                    assert_eq!(admissible, ADMISSIBLE_WEIGHTS);
                }
                other => panic!("weight {k} gave {other:?}"),
            }
        }
    }

    #[test]
    fn hecke_relation_exact() {
        for k in [12u32, 16] {
            let f = qexp_newform(k, 300).unwrap();
            let viol = crate::verify::oracles::hecke_violation(&f, 300);
            assert!(viol.is_none(), "weight {k}: {viol:?}");
        }
    }

    #[test]
    fn satake_angle_of_two() {
        let f = qexp_newform(12, 10).unwrap();
        let a = f.satake_angle(2).unwrap();
        // lambda(2) = -24 / 2^{5.5}
        let lam = -24.0 / 2.0f64.powf(5.5);
        assert!((f.lambda(2) - lam).abs() < 1e-15);
        assert!((a.theta - (lam / 2.0).acos()).abs() < 1e-15);
        assert!((2.0 * a.theta.cos() - lam).abs() < 1e-12);
    }

    #[test]
    fn satake_rejects_composites_and_gaps() {
        let f = qexp_newform(12, 10).unwrap();
        assert!(f.satake_angle(4).is_err());
        assert!(matches!(
            f.satake_angle(11),
            Err(Error::InsufficientCache { .. })
        ));
    }

    #[test]
    fn lambda_prime_power_values() {
        let f = qexp_newform(12, 20).unwrap();
        assert_eq!(f.lambda_prime_power(2, 0).unwrap(), 1.0);
        // lambda(4) = tau(4)/4^{5.5} = -1472/2048
        let v = f.lambda_prime_power(2, 2).unwrap();
        assert!((v - (-0.71875)).abs() < 1e-12);
        // Chebyshev route agrees with the normalized table at prime powers
        for (p, max_nu) in [(2u64, 4u32), (3, 2)] {
            for nu in 1..=max_nu {
                let table = f.lambda(p.pow(nu) as usize);
                let cheb = f.lambda_prime_power(p, nu).unwrap();
                assert!(
                    (table - cheb).abs() <= 1e-9 * table.abs().max(1.0),
                    "p={p} nu={nu}"
                );
            }
        }
    }

    #[test]
    fn deligne_bound_small_scan() {
        let f = qexp_newform(12, 10_000).unwrap();
        for p in (2u64..=10_000).filter(|&p| is_prime(p)) {
            assert!(f.lambda(p as usize).abs() <= 2.0 + 1e-12, "p = {p}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let f = qexp_newform(16, 50).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let g = HeckeEigenform::read_csv(16, &buf[..]).unwrap();
        assert_eq!(f.exact_series().coeffs(), g.exact_series().coeffs());
        assert_eq!(f.lambdas(), g.lambdas());
        let first = String::from_utf8(buf).unwrap();
        assert!(first.starts_with("n,c_exact,lambda_norm\n1,1,1.0000000000000000e0"));
    }
}
