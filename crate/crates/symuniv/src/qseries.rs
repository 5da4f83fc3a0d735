//! Exact truncated q-series arithmetic.
//!
//! A [`QSeries`] holds the coefficients of a power series in `q` up to a
//! fixed truncation bound, over an exact integer coefficient ring. Every
//! operation truncates consistently and fails loudly on overflow: the
//! `i128` instantiation checks each multiply-accumulate, and the `BigInt`
//! instantiation never overflows. There is no silent wrap-around anywhere.
//!
//! Multiplication is schoolbook with early truncation. The dense x sparse
//! kernel ([`QSeries::mul_sparse`]) is the workhorse for eta-product
//! expansions, where the sparse factor has O(sqrt(N)) terms.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Exact coefficient ring for [`QSeries`].
///
/// Implementations must detect overflow themselves; the series code treats
/// a `false`/`None` return as a hard error and aborts the computation.
pub trait Coeff:
    Zero + One + Clone + PartialEq + std::fmt::Debug + FromPrimitive + ToPrimitive + Send + Sync
{
    /// `dst[i] += src[i] * c` for all `i`. Returns `false` on overflow.
    fn axpy_scaled(dst: &mut [Self], src: &[Self], c: i64) -> bool;

    /// `acc += a * b`. Returns `false` on overflow.
    fn mul_add_into(acc: &mut Self, a: &Self, b: &Self) -> bool;
}

impl Coeff for i128 {
    fn axpy_scaled(dst: &mut [Self], src: &[Self], c: i64) -> bool {
        if c == 0 {
            return true;
        }
        // Hoist the overflow guard out of the multiply: |src| <= limit
        // guarantees src * c fits, so the product itself can be unchecked.
        let limit = i128::MAX / (c as i128).abs();
        let c = c as i128;
        for (d, s) in dst.iter_mut().zip(src) {
            if s.abs() > limit {
                return false;
            }
            match d.checked_add(s * c) {
                Some(v) => *d = v,
                None => return false,
            }
        }
        true
    }

    fn mul_add_into(acc: &mut Self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| acc.checked_add(p)) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
}

impl Coeff for BigInt {
    fn axpy_scaled(dst: &mut [Self], src: &[Self], c: i64) -> bool {
        if c == 0 {
            return true;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            *d += s * c;
        }
        true
    }

    fn mul_add_into(acc: &mut Self, a: &Self, b: &Self) -> bool {
        *acc += a * b;
        true
    }
}

/// Truncated power series with exact integer coefficients.
///
/// `coeffs[n]` is the coefficient of `q^n`; the truncation bound is
/// `coeffs.len() - 1` and all arithmetic discards terms above it.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries<C = BigInt> {
    coeffs: Vec<C>,
}

/// Output chunk size for the parallel sparse kernel. Each output cell is
/// written by exactly one task, in the same term order as the sequential
/// loop, so results are identical under any schedule.
const PAR_CHUNK: usize = 1 << 15;

impl<C: Coeff> QSeries<C> {
    /// Zero series truncated at `q^truncation`.
    pub fn zeros(truncation: usize) -> Self {
        QSeries {
            coeffs: vec![C::zero(); truncation + 1],
        }
    }

    /// Constant series `1`.
    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zeros(truncation);
        s.coeffs[0] = C::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the q^0 term");
        QSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Schoolbook product, truncated at `q^truncation`.
    pub fn mul_trunc(&self, rhs: &Self, truncation: usize) -> Result<Self> {
        let mut out = vec![C::zero(); truncation + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > truncation {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > truncation {
                    break;
                }
                if !C::mul_add_into(&mut out[i + j], a, b) {
                    return Err(Error::SeriesOverflow(format!(
                        "dense product at q^{}",
                        i + j
                    )));
                }
            }
        }
        Ok(QSeries { coeffs: out })
    }

    /// Product with a sparse polynomial given as `(exponent, coefficient)`
    /// terms, truncated at `q^truncation`.
    ///
    /// Output cells are partitioned across threads; every cell accumulates
    /// its terms in the fixed input order, so the result does not depend on
    /// the schedule.
    pub fn mul_sparse(&self, terms: &[(usize, i64)], truncation: usize) -> Result<Self> {
        let src = &self.coeffs;
        let mut out = vec![C::zero(); truncation + 1];
        let overflowed = out
            .par_chunks_mut(PAR_CHUNK)
            .enumerate()
            .map(|(ci, chunk)| {
                let base = ci * PAR_CHUNK;
                for &(e, c) in terms {
                    let lo = base.max(e);
                    let hi = base + chunk.len();
                    if lo >= hi {
                        continue;
                    }
                    let src_lo = lo - e;
                    let src_hi = (hi - e).min(src.len());
                    if src_lo >= src_hi {
                        continue;
                    }
                    let dst = &mut chunk[lo - base..lo - base + (src_hi - src_lo)];
                    if !C::axpy_scaled(dst, &src[src_lo..src_hi], c) {
                        return true;
                    }
                }
                false
            })
            .reduce(|| false, |a, b| a || b);
        if overflowed {
            return Err(Error::SeriesOverflow("sparse product".into()));
        }
        Ok(QSeries { coeffs: out })
    }

    /// Integer power by repeated squaring, truncated at `q^truncation`.
    pub fn pow_trunc(&self, mut exp: u64, truncation: usize) -> Result<Self> {
        let mut result = Self::one(truncation);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul_trunc(&base, truncation)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_trunc(&base, truncation)?;
            }
        }
        Ok(result)
    }
}

impl QSeries<i128> {
    /// Lossless widening to arbitrary precision.
    pub fn into_bigint(self) -> QSeries<BigInt> {
        QSeries {
            coeffs: self.coeffs.into_iter().map(BigInt::from).collect(),
        }
    }
}

/// Terms of `sum_k (-1)^k (2k+1) q^{k(k+1)/2}` up to `q^truncation`.
///
/// This is the cube of the Euler function by Jacobi's identity; its eighth
/// power expands the discriminant eta-product with a sparse factor of only
/// O(sqrt(N)) terms.
pub fn theta_cube_terms(truncation: usize) -> Vec<(usize, i64)> {
    let mut terms = Vec::new();
    let mut k: usize = 0;
    loop {
        let e = k * (k + 1) / 2;
        if e > truncation {
            break;
        }
        let c = (2 * k + 1) as i64;
        terms.push((e, if k % 2 == 0 { c } else { -c }));
        k += 1;
    }
    terms
}

/// Terms of the Euler function `prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}`
/// (pentagonal number theorem), up to `q^truncation`.
pub fn pentagonal_terms(truncation: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    let mut k: i64 = 1;
    loop {
        let e1 = (k * (3 * k - 1) / 2) as usize;
        let e2 = (k * (3 * k + 1) / 2) as usize;
        if e1 > truncation && e2 > truncation {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if e1 <= truncation {
            terms.push((e1, sign));
        }
        if e2 <= truncation {
            terms.push((e2, sign));
        }
        k += 1;
    }
    terms.sort_unstable();
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series_i128(v: &[i128]) -> QSeries<i128> {
        QSeries::from_coeffs(v.to_vec())
    }

    #[test]
    fn dense_product_truncates() {
        // (1 + q)(1 + q + q^2) = 1 + 2q + 2q^2 + q^3, truncated at q^2
        let a = series_i128(&[1, 1]);
        let b = series_i128(&[1, 1, 1]);
        let p = a.mul_trunc(&b, 2).unwrap();
        assert_eq!(p.coeffs(), &[1, 2, 2]);
    }

    #[test]
    fn sparse_matches_dense() {
        let a = series_i128(&[3, -1, 4, 1, -5, 9, 2, -6]);
        let terms = [(0usize, 2i64), (3, -7), (5, 11)];
        let mut dense = QSeries::<i128>::zeros(7);
        for &(e, c) in &terms {
            dense.coeffs[e] = c as i128;
        }
        let via_sparse = a.mul_sparse(&terms, 7).unwrap();
        let via_dense = a.mul_trunc(&dense, 7).unwrap();
        assert_eq!(via_sparse, via_dense);
    }

    #[test]
    fn overflow_is_detected() {
        let big = i128::MAX / 2;
        let a = series_i128(&[big, big]);
        assert!(matches!(
            a.mul_sparse(&[(0, 3)], 1),
            Err(Error::SeriesOverflow(_))
        ));
        let b = series_i128(&[big, 0]);
        assert!(matches!(
            b.mul_trunc(&b, 1).and_then(|s| s.mul_trunc(&b, 1)),
            Err(Error::SeriesOverflow(_))
        ));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let a = series_i128(&[1, -1, 0, 2]);
        let cubed = a.pow_trunc(3, 3).unwrap();
        let manual = a.mul_trunc(&a, 3).unwrap().mul_trunc(&a, 3).unwrap();
        assert_eq!(cubed, manual);
    }

    #[test]
    fn theta_terms_start_correctly() {
        let t = theta_cube_terms(10);
        assert_eq!(&t[..4], &[(0, 1), (1, -3), (3, 5), (6, -7)]);
    }

    #[test]
    fn pentagonal_product_has_unit_coefficients() {
        // prod (1 - q^n) expanded the slow way versus the closed form.
        let trunc = 60;
        let mut prod = QSeries::<i128>::one(trunc);
        for n in 1..=trunc {
            prod = prod.mul_sparse(&[(0, 1), (n, -1)], trunc).unwrap();
        }
        let mut closed = QSeries::<i128>::zeros(trunc);
        for (e, c) in pentagonal_terms(trunc) {
            closed.coeffs[e] = c as i128;
        }
        assert_eq!(prod, closed);
    }

    proptest! {
        /// Truncating a product at N agrees with computing at a larger
        /// bound and dropping the tail.
        #[test]
        fn truncation_consistency(a in prop::collection::vec(-50i128..50, 1..12),
                                  b in prop::collection::vec(-50i128..50, 1..12)) {
            let sa = QSeries::from_coeffs(a);
            let sb = QSeries::from_coeffs(b);
            let small = sa.mul_trunc(&sb, 6).unwrap();
            let large = sa.mul_trunc(&sb, 24).unwrap();
            prop_assert_eq!(&small.coeffs()[..7], &large.coeffs()[..7]);
        }

        /// i128 and BigInt instantiations agree on small inputs.
        #[test]
        fn rings_agree(a in prop::collection::vec(-9i128..9, 1..10)) {
            let sa = QSeries::from_coeffs(a.clone());
            let sb = QSeries::from_coeffs(a.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
            let pa = sa.pow_trunc(4, 12).unwrap().into_bigint();
            let pb = sb.pow_trunc(4, 12).unwrap();
            prop_assert_eq!(pa.coeffs(), pb.coeffs());
        }
    }
}
