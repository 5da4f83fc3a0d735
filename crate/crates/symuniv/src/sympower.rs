//! Local Euler factors and Dirichlet coefficients for the symmetric power
//! L-functions `sym^m f` and their Rankin-Selberg squares (m = 1..4),
//! together with the von Mangoldt closed forms and the local zeta
//! factorization identity.
//!
//! Local factors are expanded in complex arithmetic from their unit roots
//! and realified with an explicit imaginary-residue policy: residues up to
//! 1e-10 are expected float noise and dropped, residues above 1e-8 abort.
//! Sine-ratio expressions are always evaluated through the Chebyshev
//! recurrence, never by dividing sines, which removes the
//! `theta * nu = 0 mod pi` singularity exactly.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modform::HeckeEigenform;
use crate::numeric::{binomial, chebyshev_u};

const IMAG_DROP: f64 = 1e-10;
const IMAG_ABORT: f64 = 1e-8;

pub(crate) fn validate_power(m: u32) -> Result<()> {
    if (1..=4).contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedKind(format!(
            "symmetric power m = {m} is outside 1..=4"
        )))
    }
}

/// Which L-function: the m-th symmetric power or its Rankin-Selberg square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LKind {
    Sym(u32),
    RankinSelberg(u32),
}

impl LKind {
    pub fn sym(m: u32) -> Result<Self> {
        validate_power(m)?;
        Ok(LKind::Sym(m))
    }

    pub fn rankin_selberg(m: u32) -> Result<Self> {
        validate_power(m)?;
        Ok(LKind::RankinSelberg(m))
    }

    /// Parse labels like `sym2` / `rs3`.
    pub fn parse(label: &str) -> Result<Self> {
        let lower = label.to_ascii_lowercase();
        let (ctor, digits): (fn(u32) -> Result<Self>, &str) =
            if let Some(rest) = lower.strip_prefix("sym") {
                (Self::sym, rest)
            } else if let Some(rest) = lower.strip_prefix("rs") {
                (Self::rankin_selberg, rest)
            } else {
                return Err(Error::invalid(format!(
                    "unknown kind '{label}' (expected sym1..sym4 or rs1..rs4)"
                )));
            };
        let m: u32 = digits
            .parse()
            .map_err(|_| Error::invalid(format!("unknown kind '{label}'")))?;
        ctor(m)
    }

    pub fn label(&self) -> String {
        match self {
            LKind::Sym(m) => format!("sym{m}"),
            LKind::RankinSelberg(m) => format!("rs{m}"),
        }
    }

    pub fn m(&self) -> u32 {
        match *self {
            LKind::Sym(m) | LKind::RankinSelberg(m) => m,
        }
    }

    pub fn is_sym(&self) -> bool {
        matches!(self, LKind::Sym(_))
    }

    /// Degree of the Euler factor: `m + 1` or `(m + 1)^2`.
    pub fn degree(&self) -> u32 {
        let m = self.m();
        match self {
            LKind::Sym(_) => m + 1,
            LKind::RankinSelberg(_) => (m + 1) * (m + 1),
        }
    }

    /// Lower abscissa of the strip where shifts are compared.
    pub fn sigma_strip(&self) -> f64 {
        let d = (self.m() + 1) as f64;
        match self {
            LKind::Sym(_) => 1.0 - 1.0 / d,
            LKind::RankinSelberg(_) => 1.0 - 1.0 / (d * d),
        }
    }

    /// Order `z` of the divisor function `d_z` bounding `|lambda_F(n)|`.
    pub fn divisor_order(&self) -> u32 {
        self.degree()
    }

    /// Convexity exponent reported by the growth diagnostic.
    pub fn convexity_exponent(&self) -> f64 {
        let m = self.m() as f64;
        match self {
            LKind::Sym(_) => (m + 1.0 + if self.m() % 2 == 1 { 1.0 } else { 0.0 }) / 4.0,
            LKind::RankinSelberg(_) => (m + 1.0) * (m + 1.0) / 4.0,
        }
    }
}

/// Reciprocal local factor `D_p(x)` with `L_p(s) = D_p(p^{-s})^{-1}`;
/// real coefficients, constant term 1, all roots on the unit circle.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub p: u64,
    pub poly: Vec<f64>,
}

/// Root angles of the local factor: `(m - 2j) theta` for the symmetric
/// power, `2 (m - i - j) theta` for the Rankin-Selberg square.
fn root_angles(theta: f64, kind: LKind) -> Vec<f64> {
    let m = kind.m() as i64;
    match kind {
        LKind::Sym(_) => (0..=m).map(|j| (m - 2 * j) as f64 * theta).collect(),
        LKind::RankinSelberg(_) => (0..=m)
            .flat_map(|i| (0..=m).map(move |j| 2.0 * (m - i - j) as f64 * theta))
            .collect(),
    }
}

fn expand_from_angles(p: u64, angles: &[f64]) -> Result<LocalFactor> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &phi in angles {
        let root = Complex64::from_polar(1.0, phi);
        // multiply by (1 - root * x)
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * root;
        }
        poly = next;
    }
    let residue = poly.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if residue > IMAG_ABORT {
        return Err(Error::NumericInstability(format!(
            "imaginary residue {residue:.3e} in local factor at p = {p}"
        )));
    }
    debug_assert!(residue <= IMAG_DROP, "unexpected residue {residue:.3e}");
    Ok(LocalFactor {
        p,
        poly: poly.into_iter().map(|c| c.re).collect(),
    })
}

/// Local factor from a Satake angle directly.
pub fn local_factor_from_theta(p: u64, theta: f64, kind: LKind) -> Result<LocalFactor> {
    validate_power(kind.m())?;
    expand_from_angles(p, &root_angles(theta, kind))
}

/// Local factor of `L(s, F)` at `p`.
pub fn local_factor(form: &HeckeEigenform, p: u64, kind: LKind) -> Result<LocalFactor> {
    let angle = form.satake_angle(p)?;
    local_factor_from_theta(p, angle.theta, kind)
}

/// Local factor of the auxiliary product: the Rankin-Selberg factor with
/// the `(1 - x)^{m+1}` zeta part removed,
/// `prod_{0 <= l < m} [(1 - a^{2(m-l)} x)(1 - a^{-2(m-l)} x)]^{l+1}`.
pub fn psi_local_factor_from_theta(p: u64, theta: f64, m: u32) -> Result<LocalFactor> {
    validate_power(m)?;
    let mut angles = Vec::new();
    for l in 0..m as i64 {
        let e = 2.0 * (m as i64 - l) as f64 * theta;
        for _ in 0..=l {
            angles.push(e);
            angles.push(-e);
        }
    }
    expand_from_angles(p, &angles)
}

impl LocalFactor {
    /// Coefficients `lambda(p^nu)`, `nu = 0..=nu_max`, by power-series
    /// inversion of the polynomial.
    pub fn invert(&self, nu_max: usize) -> Vec<f64> {
        let d = &self.poly;
        let mut lam = vec![0.0; nu_max + 1];
        lam[0] = 1.0;
        for k in 1..=nu_max {
            let mut acc = 0.0;
            for i in 1..=k.min(d.len() - 1) {
                acc += d[i] * lam[k - i];
            }
            lam[k] = -acc;
        }
        lam
    }

    /// Evaluate `D_p(x)` at a complex point.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for c in self.poly.iter().rev() {
            v = v * x + c;
        }
        v
    }
}

/// Multiplicative coefficient table `lambda_F(n)` for `n <= N`.
#[derive(Debug, Clone)]
pub struct DirichletCoefficients {
    pub kind: LKind,
    pub weight: u32,
    table: Vec<f64>,
}

/// Smallest-prime-factor sieve; `spf[n] == n` exactly when `n` is prime.
pub(crate) fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf: Vec<u32> = (0..=n as u32).collect();
    let mut p = 2usize;
    while p * p <= n {
        if spf[p] == p as u32 {
            let mut m = p * p;
            while m <= n {
                if spf[m] == m as u32 {
                    spf[m] = p as u32;
                }
                m += p;
            }
        }
        p += 1;
    }
    spf
}

/// Build the coefficient table: prime powers by local-factor inversion,
/// everything else by multiplicativity over the factorization.
pub fn dirichlet_coefficients(
    form: &HeckeEigenform,
    kind: LKind,
    n: usize,
) -> Result<DirichletCoefficients> {
    validate_power(kind.m())?;
    if n < 1 {
        return Err(Error::invalid("coefficient bound must be at least 1"));
    }
    if n > form.truncation() {
        return Err(Error::InsufficientCache {
            needed: n,
            available: form.truncation(),
        });
    }
    let spf = spf_sieve(n);
    let mut table = vec![0.0f64; n + 1];
    table[1] = 1.0;
    // prime powers first
    for p in 2..=n {
        if spf[p] != p as u32 {
            continue;
        }
        let lam_p = form.lambda(p);
        if lam_p.abs() > 2.0 + 1e-12 {
            return Err(Error::DeligneViolation {
                p: p as u64,
                lambda: lam_p,
            });
        }
        let theta = (lam_p / 2.0).clamp(-1.0, 1.0).acos();
        let factor = local_factor_from_theta(p as u64, theta, kind)?;
        let mut nu_max = 0;
        let mut pk = p as u128;
        while pk <= n as u128 {
            nu_max += 1;
            pk *= p as u128;
        }
        let lams = factor.invert(nu_max);
        let mut pk = p;
        for lam in lams.iter().skip(1) {
            table[pk] = *lam;
            if pk > n / p {
                break;
            }
            pk *= p;
        }
    }
    // composites by multiplicativity
    for v in 2..=n {
        let p = spf[v] as usize;
        if p == v {
            continue;
        }
        let mut rest = v;
        let mut ppow = 1usize;
        while rest % p == 0 {
            rest /= p;
            ppow *= p;
        }
        if rest > 1 {
            table[v] = table[ppow] * table[rest];
        }
    }
    Ok(DirichletCoefficients {
        kind,
        weight: form.weight(),
        table,
    })
}

impl DirichletCoefficients {
    pub fn bound(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> f64 {
        self.table[n]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// CSV export `n,lambda_F`; metadata travels in the JSON sidecar.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n,lambda_F")?;
        for n in 1..=self.bound() {
            writeln!(w, "{},{:.16e}", n, self.table[n])?;
        }
        Ok(())
    }

    pub fn sidecar(&self) -> CoefficientSidecar {
        CoefficientSidecar {
            weight: self.weight,
            m: self.kind.m(),
            variant: self.kind.label(),
            n: self.bound(),
            generator: format!("symuniv-{}", env!("CARGO_PKG_VERSION")),
        }
    }
}

/// Metadata sidecar for a coefficient export.
#[derive(Debug, Clone, Serialize)]
pub struct CoefficientSidecar {
    pub weight: u32,
    pub m: u32,
    pub variant: String,
    pub n: usize,
    pub generator: String,
}

/// One von Mangoldt coefficient of the Rankin-Selberg square at `p^nu`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VonMangoldtRs {
    pub p: u64,
    pub nu: u32,
    /// `U_m(cos(nu theta))^2 log p`; zero off prime powers, never negative,
    /// at most `(m+1)^2 log p`.
    pub value: f64,
}

/// Closed form of the Rankin-Selberg von Mangoldt coefficient at `p^nu`.
pub fn von_mangoldt_rs(form: &HeckeEigenform, m: u32, p: u64, nu: u32) -> Result<VonMangoldtRs> {
    validate_power(m)?;
    if nu == 0 {
        return Err(Error::invalid("nu must be positive"));
    }
    let theta = form.satake_angle(p)?.theta;
    let u = chebyshev_u(m, (nu as f64 * theta).cos());
    Ok(VonMangoldtRs {
        p,
        nu,
        value: u * u * (p as f64).ln(),
    })
}

/// The oscillating part: `2 sum_{j=1}^{m} (m+1-j) cos(2 j theta nu) log p`.
pub fn von_mangoldt_psi(form: &HeckeEigenform, m: u32, p: u64, nu: u32) -> Result<f64> {
    validate_power(m)?;
    if nu == 0 {
        return Err(Error::invalid("nu must be positive"));
    }
    let theta = form.satake_angle(p)?.theta;
    let mut acc = 0.0;
    for j in 1..=m {
        acc += (m + 1 - j) as f64 * (2.0 * j as f64 * theta * nu as f64).cos();
    }
    Ok(2.0 * acc * (p as f64).ln())
}

/// Von Mangoldt coefficients from the local factor alone: the power-series
/// coefficients of `-x D'(x)/D(x)`, scaled by `log p`. Pure polynomial
/// arithmetic, no trigonometry; this is the independent route against
/// which the closed form is checked.
pub fn log_deriv_oracle(factor: &LocalFactor, nu_max: usize) -> Result<Vec<f64>> {
    if nu_max > 12 {
        return Err(Error::invalid("log-derivative oracle supports nu_max <= 12"));
    }
    let d = &factor.poly;
    // numerator -x D'(x): coefficient of x^j is -j d_j
    let numer: Vec<f64> = (0..d.len()).map(|j| -(j as f64) * d[j]).collect();
    let mut c = vec![0.0; nu_max + 1];
    for k in 1..=nu_max {
        let mut acc = if k < numer.len() { numer[k] } else { 0.0 };
        for i in 1..=k.min(d.len() - 1) {
            acc -= d[i] * c[k - i];
        }
        c[k] = acc;
    }
    let log_p = (factor.p as f64).ln();
    Ok(c[1..].iter().map(|v| v * log_p).collect())
}

/// Max coefficient residual of the local factorization identity
/// `D_rs(x) = (1 - x)^{m+1} * D_psi(x)` at `p`.
///
/// Both sides are expanded in double-double arithmetic over the same
/// Satake angle, with conjugate root pairs grouped into real quadratics:
/// at degree 25 a plain f64 expansion carries re-bracketing noise right
/// at the 1e-12 scale this identity is checked to.
pub fn zeta_factorization_residual(form: &HeckeEigenform, p: u64, m: u32) -> Result<f64> {
    validate_power(m)?;
    let theta = form.satake_angle(p)?.theta;
    let m_i = m as i64;
    let mut rs_angles = Vec::new();
    for i in 0..=m_i {
        for j in 0..=m_i {
            rs_angles.push(2.0 * (m_i - i - j) as f64 * theta);
        }
    }
    let lhs = crate::numeric::dd_expand_symmetric_angles(&rs_angles);
    let mut psi_angles = Vec::new();
    for l in 0..m_i {
        let e = 2.0 * (m_i - l) as f64 * theta;
        for _ in 0..=l {
            psi_angles.push(e);
            psi_angles.push(-e);
        }
    }
    let zeta_part = crate::numeric::dd_expand_symmetric_angles(&vec![0.0; (m + 1) as usize]);
    let psi_part = crate::numeric::dd_expand_symmetric_angles(&psi_angles);
    let rhs = crate::numeric::dd_poly_mul(&zeta_part, &psi_part);
    Ok(lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| a.sub(*b).to_f64().abs())
        .fold(0.0, f64::max))
}

/// Divisor function `d_z(n)`: the n-th coefficient of `zeta(s)^z`,
/// multiplicative with `d_z(p^nu) = binom(z + nu - 1, nu)`.
pub fn divisor_z(z: u32, mut n: u64) -> f64 {
    let mut acc = 1.0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut nu = 0u64;
            while n % p == 0 {
                n /= p;
                nu += 1;
            }
            acc *= binomial(z as u64 + nu - 1, nu);
        }
        p += 1;
    }
    if n > 1 {
        acc *= z as f64;
    }
    acc
}
