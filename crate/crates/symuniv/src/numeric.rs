//! Shared numerical kernels: Chebyshev evaluation, complex log-gamma,
//! Gauss-Legendre nodes, a counter-keyed mixer, and a small polynomial
//! root finder used by the verification suite.

use num_complex::Complex64;

/// Second-kind Chebyshev polynomial `U_m(x)` by the three-term recurrence
/// `U_0 = 1`, `U_1 = 2x`, `U_{m+1} = 2x U_m - U_{m-1}`.
///
/// `U_m(cos t) = sin((m+1)t)/sin(t)` wherever the right side is defined;
/// the recurrence extends it continuously through `sin t = 0`, where the
/// value is `(m+1)` up to sign. Sine-quotient evaluation is never used.
pub fn chebyshev_u(m: u32, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for _ in 1..m {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

// Bernoulli-number coefficients B_{2j} / (2j (2j-1)) for the Stirling tail.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Principal branch of `ln Gamma(z)`.
///
/// Stirling's series after shifting to `Re z >= 12`, with the reflection
/// formula for `Re z < 0.5`. Relative accuracy is well below 1e-13 on
/// `Re z > 0`, which covers the gamma-factor shifts used here (up to 100).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ln Gamma(z) = ln(pi / sin(pi z)) - ln Gamma(1 - z), up to the
        // 2*pi*i branch ambiguity, which exp() downstream does not see.
        let pi = std::f64::consts::PI;
        let s = (Complex64::new(pi, 0.0) * z).sin();
        return Complex64::new(pi, 0.0).ln() - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 12.0 {
        shift += w.ln();
        w += 1.0;
    }
    let half_log_two_pi = 0.918938533204672741780329736406;
    let mut s = (w - 0.5) * w.ln() - w + half_log_two_pi;
    let w2 = w * w;
    let mut zp = w;
    for c in STIRLING {
        s += c / zp;
        zp *= w2;
    }
    s - shift
}

/// `ln Gamma_R(s)` with `Gamma_R(s) = pi^{-s/2} Gamma(s/2)`.
pub fn ln_gamma_r(s: Complex64) -> Complex64 {
    -(s / 2.0) * std::f64::consts::PI.ln() + ln_gamma(s / 2.0)
}

/// `ln Gamma_C(s)` with `Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)`.
pub fn ln_gamma_c(s: Complex64) -> Complex64 {
    Complex64::new(2.0f64.ln(), 0.0) - s * (2.0 * std::f64::consts::PI).ln() + ln_gamma(s)
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrate `f` over `[a, b]` with `panels` composite 24-point
/// Gauss-Legendre panels. Spectrally accurate for smooth integrands.
pub fn integrate_gl<F>(f: F, a: f64, b: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = gauss_legendre(24);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + h / 2.0;
        let half = h / 2.0;
        for (x, w) in nodes.iter().zip(&weights) {
            total += f(mid + half * x) * (*w * half);
        }
    }
    total
}

/// SplitMix64 mixing step: a bijective 64-bit finalizer.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Uniform value in `[0, 1)` keyed by `(seed, a, b)`. Pure function of its
/// key, so parallel consumers reproduce the sequential stream exactly.
pub fn keyed_unit(seed: u64, a: u64, b: u64) -> f64 {
    let x = splitmix64(splitmix64(seed ^ a.wrapping_mul(0xA24BAED4963EE407)) ^ b);
    // take the top 53 bits
    (x >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Binomial coefficient as f64; exact for values below 2^53.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Double-double value: an unevaluated sum `hi + lo` carrying roughly 31
/// significant digits. Used only by verification paths that compare two
/// float-expanded polynomials, where plain f64 re-bracketing error would
/// drown the identity being checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        renorm(s, e)
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(Dd {
            hi: -rhs.hi,
            lo: -rhs.lo,
        })
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        renorm(p, e)
    }

    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        renorm(p, e + self.lo * rhs)
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn renorm(hi: f64, lo: f64) -> Dd {
    let (s, e) = two_sum(hi, lo);
    Dd { hi: s, lo: e }
}

/// Multiply two real polynomials in double-double arithmetic.
pub fn dd_poly_mul(a: &[Dd], b: &[Dd]) -> Vec<Dd> {
    let mut out = vec![Dd::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(x.mul(*y));
        }
    }
    out
}

/// Expand `prod (1 - r x)` over a conjugate-symmetric multiset of unit
/// roots `r = e^{i phi}`, grouping conjugate pairs into real quadratics
/// `1 - 2 cos(phi) x + x^2` so the whole product stays real. Angles are
/// matched as pairs `(phi, -phi)`; unpaired angles must be 0 mod 2 pi up
/// to sign (their factor is linear).
pub fn dd_expand_symmetric_angles(angles: &[f64]) -> Vec<Dd> {
    let mut pos: Vec<f64> = Vec::new();
    let mut zeros = 0usize;
    let mut pis = 0usize;
    for &phi in angles {
        if phi == 0.0 {
            zeros += 1;
        } else if (phi.abs() - std::f64::consts::PI).abs() < 1e-15 {
            pis += 1;
        } else if phi > 0.0 {
            pos.push(phi);
        }
    }
    let mut out = vec![Dd::from_f64(1.0)];
    for _ in 0..zeros {
        out = dd_poly_mul(&out, &[Dd::from_f64(1.0), Dd::from_f64(-1.0)]);
    }
    for _ in 0..pis {
        out = dd_poly_mul(&out, &[Dd::from_f64(1.0), Dd::from_f64(1.0)]);
    }
    for phi in pos {
        let quad = [
            Dd::from_f64(1.0),
            Dd::from_f64(-2.0 * phi.cos()),
            Dd::from_f64(1.0),
        ];
        out = dd_poly_mul(&out, &quad);
    }
    out
}

/// All complex roots of a real-coefficient polynomial by the
/// Durand-Kerner iteration. `coeffs[j]` multiplies `x^j`; the leading
/// coefficient must be nonzero. Accuracy degrades to roughly the
/// `m`-th root of eps at a multiplicity-`m` cluster.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1 && coeffs[deg] != 0.0);
    let monic: Vec<Complex64> = coeffs
        .iter()
        .map(|&c| Complex64::new(c / coeffs[deg], 0.0))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            v = v * x + c;
        }
        v
    };
    // Start on a non-symmetric spiral to break ties between equal roots.
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| Complex64::from_polar(1.0 + 0.1 * i as f64 / deg as f64, 0.7 + 2.1 * i as f64))
        .collect();
    for _ in 0..400 {
        let mut moved: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-13 {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_small_cases() {
        assert_eq!(chebyshev_u(0, 0.3), 1.0);
        assert_eq!(chebyshev_u(1, 0.3), 0.6);
        // U_2(x) = 4x^2 - 1
        assert!((chebyshev_u(2, 0.0) - (-1.0)).abs() < 1e-15);
        // boundary value U_m(1) = m + 1
        for m in 0..8 {
            assert!((chebyshev_u(m, 1.0) - (m as f64 + 1.0)).abs() < 1e-12);
            assert!(
                (chebyshev_u(m, -1.0) - (m as f64 + 1.0) * (-1.0f64).powi(m as i32)).abs() < 1e-12
            );
        }
    }

    #[test]
    fn chebyshev_matches_sine_quotient() {
        for m in 1..6u32 {
            for k in 1..40 {
                let t = 0.07 * k as f64;
                let reference = ((m as f64 + 1.0) * t).sin() / t.sin();
                assert!((chebyshev_u(m, t.cos()) - reference).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ln_gamma_reference_values() {
        // ln Gamma(1/2) = ln sqrt(pi)
        let v = ln_gamma(Complex64::new(0.5, 0.0));
        assert!((v.re - 0.5723649429247001).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
        // Gamma(5) = 24
        let v = ln_gamma(Complex64::new(5.0, 0.0));
        assert!((v.re - 24.0f64.ln()).abs() < 1e-13);
        // |Gamma(i)|^2 = pi / sinh(pi)
        let v = ln_gamma(Complex64::new(0.0, 1.0)).exp();
        let target = std::f64::consts::PI / std::f64::consts::PI.sinh();
        assert!((v.norm_sqr() - target).abs() < 1e-13);
        // recurrence Gamma(z+1) = z Gamma(z) at a complex point
        let z = Complex64::new(3.3, -2.1);
        let lhs = ln_gamma(z + 1.0).exp();
        let rhs = z * ln_gamma(z).exp();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-13);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (nodes, weights) = gauss_legendre(5);
        // exact for degree <= 9: integral of x^8 over [-1,1] = 2/9
        let val: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x.powi(8))
            .sum();
        assert!((val - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn composite_rule_handles_exponential_tail() {
        let v = integrate_gl(
            |y| Complex64::new((-2.0 * std::f64::consts::PI * y).exp(), 0.0),
            1.0,
            12.0,
            8,
        );
        let exact = (-2.0 * std::f64::consts::PI).exp() / (2.0 * std::f64::consts::PI);
        assert!((v.re - exact).abs() < 1e-15);
    }

    #[test]
    fn keyed_unit_is_reproducible_and_spread() {
        assert_eq!(keyed_unit(7, 3, 11), keyed_unit(7, 3, 11));
        assert_ne!(keyed_unit(7, 3, 11), keyed_unit(7, 3, 12));
        let mean: f64 = (0..10_000).map(|i| keyed_unit(1, 0, i)).sum::<f64>() / 10_000.0;
        assert!((mean - 0.5).abs() < 0.02);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(41, 17), 151584480450.0);
        assert_eq!(binomial(3, 5), 0.0);
    }

    #[test]
    fn roots_of_unit_circle_polynomial() {
        // (1 - x)^2 (1 + x^2) has roots {1, 1, i, -i}
        let coeffs = [1.0, -2.0, 2.0, -2.0, 1.0];
        let roots = polynomial_roots(&coeffs);
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!((r.norm() - 1.0).abs() < 1e-6);
        }
    }
}
