//! Prime sieve and the prime-counting statistics attached to normalized
//! eigenvalue tables: the psi/theta/pi sums over Rankin-Selberg von
//! Mangoldt coefficients and the window densities of primes with large
//! `|lambda(p^m)|`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modform::HeckeEigenform;
use crate::numeric::chebyshev_u;
use crate::sympower;

/// Deterministic sieve of Eratosthenes over a bit-packed odd wheel.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let mut primes = Vec::new();
        if limit >= 2 {
            primes.push(2);
        }
        if limit >= 3 {
            // bit i represents the odd number 2i + 3
            let n_odds = ((limit - 1) / 2) as usize;
            let mut composite = vec![0u64; n_odds / 64 + 1];
            let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
            let mut i = 0usize;
            while {
                let p = 2 * i as u64 + 3;
                p * p <= limit
            } {
                if !is_set(&composite, i) {
                    let p = 2 * i as u64 + 3;
                    let mut m = p * p;
                    while m <= limit {
                        let j = ((m - 3) / 2) as usize;
                        composite[j / 64] |= 1 << (j % 64);
                        m += 2 * p;
                    }
                }
                i += 1;
            }
            for i in 0..n_odds {
                if !is_set(&composite, i) {
                    primes.push(2 * i as u64 + 3);
                }
            }
        }
        PrimeTable { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// pi(x) for x up to the sieve limit.
    pub fn count_below(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }
}

/// One-pass report of the three prime sums for `sym^m f x sym^m f`.
#[derive(Debug, Clone, Serialize)]
pub struct PntReport {
    pub m: u32,
    pub x: u64,
    /// sum over prime powers `p^nu <= x` of the von Mangoldt coefficient.
    pub psi: f64,
    /// sum over primes `p <= x` of `|lambda(p^m)|^2 log p`.
    pub theta: f64,
    /// sum over primes `p <= x` of `|lambda(p^m)|^2`.
    pub pi_weighted: f64,
    pub psi_ratio: f64,
    pub theta_ratio: f64,
    pub pi_ratio: f64,
}

/// Compute the psi/theta/pi sums up to `x` in a single pass over primes.
///
/// Prime powers `p^nu <= x` with `nu >= 2` contribute to `psi` only; the
/// exponent is capped at `log2 x`, the exact support bound.
pub fn prime_sums(form: &HeckeEigenform, table: &PrimeTable, m: u32, x: u64) -> Result<PntReport> {
    sympower::validate_power(m)?;
    if x < 2 {
        return Err(Error::invalid("cutoff must be at least 2"));
    }
    if (x as usize) > form.truncation() {
        return Err(Error::InsufficientCache {
            needed: x as usize,
            available: form.truncation(),
        });
    }
    if x > table.limit() {
        return Err(Error::InsufficientCache {
            needed: x as usize,
            available: table.limit() as usize,
        });
    }
    let mut psi = 0.0;
    let mut theta = 0.0;
    let mut pi_weighted = 0.0;
    for &p in table.primes() {
        if p > x {
            break;
        }
        let cos_t = (form.lambda(p as usize) / 2.0).clamp(-1.0, 1.0);
        let log_p = (p as f64).ln();
        let u = chebyshev_u(m, cos_t);
        theta += u * u * log_p;
        pi_weighted += u * u;
        // nu >= 2 prime powers, angle nu*theta through the recurrence
        let theta_p = cos_t.acos();
        let mut pk = p as u128;
        let mut nu = 1u32;
        loop {
            pk *= p as u128;
            nu += 1;
            if pk > x as u128 {
                break;
            }
            let u_nu = chebyshev_u(m, (nu as f64 * theta_p).cos());
            psi += u_nu * u_nu * log_p;
        }
    }
    psi += theta;
    let xf = x as f64;
    Ok(PntReport {
        m,
        x,
        psi,
        theta,
        pi_weighted,
        psi_ratio: psi / xf,
        theta_ratio: theta / xf,
        pi_ratio: pi_weighted / (xf / xf.ln()),
    })
}

/// Count and window-density report for primes with `|lambda(p^m)| >= delta`.
#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub m: u32,
    pub delta: f64,
    pub x: u64,
    pub count: usize,
    pub window: (u64, u64),
    pub window_count: usize,
    pub window_primes: usize,
    /// empirical ratio over the window `(a, b]`.
    pub ratio: f64,
    /// `(1 - delta^2) / ((m+1)^2 - delta^2)`.
    pub lower_bound: f64,
}

/// `#\{p <= x : |lambda(p^m)| >= delta\}` plus the empirical density over
/// a window `(a, b]` against the theoretical lower bound.
pub fn pi_delta(
    form: &HeckeEigenform,
    table: &PrimeTable,
    m: u32,
    delta: f64,
    x: u64,
    window: (u64, u64),
) -> Result<DensityReport> {
    sympower::validate_power(m)?;
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::invalid(format!(
            "delta = {delta} outside [0, 1)"
        )));
    }
    if (x.max(window.1) as usize) > form.truncation() {
        return Err(Error::InsufficientCache {
            needed: x.max(window.1) as usize,
            available: form.truncation(),
        });
    }
    let (a, b) = window;
    if a >= b {
        return Err(Error::invalid("window must satisfy a < b"));
    }
    let mut count = 0usize;
    let mut window_count = 0usize;
    let mut window_primes = 0usize;
    for &p in table.primes() {
        if p > x && p > b {
            break;
        }
        let cos_t = (form.lambda(p as usize) / 2.0).clamp(-1.0, 1.0);
        let big = chebyshev_u(m, cos_t).abs() >= delta;
        if p <= x && big {
            count += 1;
        }
        if p > a && p <= b {
            window_primes += 1;
            if big {
                window_count += 1;
            }
        }
    }
    let mp1 = (m + 1) as f64;
    Ok(DensityReport {
        m,
        delta,
        x,
        count,
        window,
        window_count,
        window_primes,
        ratio: window_count as f64 / window_primes.max(1) as f64,
        lower_bound: (1.0 - delta * delta) / (mp1 * mp1 - delta * delta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modform::qexp_newform;

    #[test]
    fn sieve_counts() {
        let t = PrimeTable::new(1_000_000);
        assert_eq!(t.primes().len(), 78_498);
        assert_eq!(t.count_below(100), 25);
        assert_eq!(&t.primes()[..5], &[2, 3, 5, 7, 11]);
        assert_eq!(PrimeTable::new(1).primes().len(), 0);
        assert_eq!(PrimeTable::new(2).primes(), &[2]);
    }

    #[test]
    fn psi_at_ten_matches_direct_enumeration() {
        // Independent route: Lambda(p^nu) = (lambda(p^nu) - lambda(p^{nu-2}))^2 log p
        // for m = 1, read straight off the normalized coefficient table.
        let f = qexp_newform(12, 16).unwrap();
        let t = PrimeTable::new(16);
        let lam = |n: usize| f.lambda(n);
        let term = |p: u64, nu: u32| {
            let hi = lam(p.pow(nu) as usize);
            let lo = if nu >= 2 { lam(p.pow(nu - 2) as usize) } else { 0.0 };
            (hi - lo).powi(2) * (p as f64).ln()
        };
        let expected = term(2, 1)
            + term(3, 1)
            + term(2, 2)
            + term(5, 1)
            + term(7, 1)
            + term(2, 3)
            + term(3, 2);
        let rep = prime_sums(&f, &t, 1, 10).unwrap();
        assert!((rep.psi - expected).abs() < 1e-10);
        assert!(rep.psi >= rep.theta && rep.theta >= 0.0);
    }

    #[test]
    fn psi_is_monotone_in_x() {
        let f = qexp_newform(12, 200).unwrap();
        let t = PrimeTable::new(200);
        let mut last = 0.0;
        for x in [10u64, 50, 100, 200] {
            let rep = prime_sums(&f, &t, 2, x).unwrap();
            assert!(rep.psi >= last);
            last = rep.psi;
        }
    }

    #[test]
    fn remainder_bound_holds() {
        let f = qexp_newform(12, 10_000).unwrap();
        let t = PrimeTable::new(10_000);
        for m in 1..=4 {
            let rep = prime_sums(&f, &t, m, 10_000).unwrap();
            let bound = ((m + 1) as f64).powi(2)
                * t.count_below(100) as f64
                * (10_000f64).ln();
            assert!(rep.psi - rep.theta <= bound);
            assert!(rep.psi >= rep.theta);
        }
    }

    #[test]
    fn pi_delta_edge_cases() {
        let f = qexp_newform(12, 1000).unwrap();
        let t = PrimeTable::new(1000);
        // delta = 0 counts every prime
        let rep = pi_delta(&f, &t, 1, 0.0, 1000, (100, 200)).unwrap();
        assert_eq!(rep.count, t.count_below(1000));
        assert_eq!(rep.ratio, 1.0);
        // monotone non-increasing in delta
        let mut last = usize::MAX;
        for d in [0.0, 0.25, 0.5, 0.75, 0.99] {
            let c = pi_delta(&f, &t, 1, d, 1000, (100, 200)).unwrap().count;
            assert!(c <= last);
            last = c;
        }
        assert!(matches!(
            pi_delta(&f, &t, 1, 1.0, 1000, (100, 200)),
            Err(Error::InvalidArgument(_))
        ));
    }
}
