//! Reference constants computed without any polylogarithm code.

use super::real::Real;
use super::PrecisionConfig;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `pi` by the Gauss-Legendre arithmetic-geometric mean iteration.
pub fn pi_reference(prec: &PrecisionConfig) -> Real {
    let bits = prec.bits() + 64;
    let one = Real::one(bits);
    let mut a = one.clone();
    let mut b = Real::from_u64(2, bits).sqrt().recip();
    let mut t = Real::from_f64(0.25, bits);
    let mut p = one.clone();
    for _ in 0..64 {
        let an = (&a + &b).mul_2exp(-1);
        let d = &a - &an;
        b = (&a * &b).sqrt();
        t = &t - &(&p * &d.square());
        p = p.mul_2exp(1);
        a = an;
        if (&a - &b).abs().exponent() < -(bits as i64) {
            break;
        }
    }
    (&a + &b).square().div_by(&t.mul_2exp(2)).round_to(prec.bits())
}

/// Bernoulli numbers `B_0..=B_n`.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::zero(); n + 1];
    b[0] = BigRational::one();
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    for m in 1..=n {
        let mut binom = BigInt::one();
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate().take(m) {
            s += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b[m] = -s / BigRational::from_integer(BigInt::from(m + 1));
    }
    b
}

/// `zeta(k)` by Euler-Maclaurin summation with cutoff `N = 32`.
pub fn zeta_reference(k: u32, prec: &PrecisionConfig) -> Result<Real> {
    if k < 2 {
        return Err(Error::Argument(format!("zeta_reference needs k >= 2, got {k}")));
    }
    let bits = prec.bits() + 64;
    let n_cut: u64 = 32;
    let mut sum = Real::zero(bits);
    for n in 1..n_cut {
        sum += &Real::from_u64(n, bits).powi(k).recip();
    }
    let nr = Real::from_u64(n_cut, bits);
    let n_pow = nr.powi(k).recip(); // N^-k
    sum += &n_pow.mul_u64(n_cut).div_u64(k as u64 - 1);
    sum += &n_pow.mul_2exp(-1);
    let jmax = 80;
    let bern = bernoulli(2 * jmax);
    let n2inv = nr.square().recip();
    // rising factorial s(s+1)...(s+2j-2) / (2j)! * N^{-s-2j+1}
    let mut coef = Real::from_u64(k as u64, bits).div_u64(2); // j = 1: s / 2!
    let mut npow = &n_pow * &nr.recip(); // N^{-s-1}
    let stop = -(bits as i64);
    for j in 1..=jmax {
        let b = Real::from_rational(&bern[2 * j], bits);
        let term = &(&b * &coef) * &npow;
        if term.is_zero() || term.exponent() < stop {
            break;
        }
        sum += &term;
        let jj = j as u64;
        coef = coef.mul_u64(k as u64 + 2 * jj - 1).mul_u64(k as u64 + 2 * jj).div_u64((2 * jj + 1) * (2 * jj + 2));
        npow = &npow * &n2inv;
    }
    Ok(sum.round_to(prec.bits()))
}

/// Catalan's constant from Ramanujan's accelerated series
/// `G = (pi/8) ln(2 + sqrt 3) + (3/8) sum (n!)^2 / ((2n)! (2n+1)^2)`.
pub fn catalan_reference(prec: &PrecisionConfig) -> Real {
    let bits = prec.bits() + 64;
    let pi = pi_reference(&prec.with_bits(bits));
    let l = (&Real::from_u64(2, bits) + &Real::from_u64(3, bits).sqrt()).ln();
    let mut ratio = Real::one(bits); // (n!)^2/(2n)!
    let mut sum = Real::one(bits);
    let stop = -(bits as i64) - 4;
    for n in 1u64.. {
        ratio = ratio.mul_u64(n).div_u64(2 * (2 * n - 1));
        let t = ratio.div_u64((2 * n + 1) * (2 * n + 1));
        if t.exponent() < stop {
            break;
        }
        sum += &t;
    }
    let g = &(&pi * &l).mul_2exp(-3) + &sum.mul_u64(3).mul_2exp(-3);
    g.round_to(prec.bits())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn pi_matches_machin() {
        assert!((&pi_reference(&p()) - &Real::pi(256)).abs().to_f64() < 1e-70);
    }

    #[test]
    fn zeta_even_values() {
        let pi = pi_reference(&p());
        let z2 = zeta_reference(2, &p()).unwrap();
        assert!((&z2 - &pi.square().div_u64(6)).abs().to_f64() < 1e-60);
        let z4 = zeta_reference(4, &p()).unwrap();
        assert!((&z4 - &pi.powi(4).div_u64(90)).abs().to_f64() < 1e-60);
        let z6 = zeta_reference(6, &p()).unwrap();
        assert!((&z6 - &pi.powi(6).div_u64(945)).abs().to_f64() < 1e-60);
    }

    #[test]
    fn zeta_odd_frozen() {
        let z3 = Real::parse_decimal("1.2020569031595942853997381615114499907649862923404988817922715553418382057863131", 256).unwrap();
        assert!((&zeta_reference(3, &p()).unwrap() - &z3).abs().to_f64() < 1e-60);
        let z5 = Real::parse_decimal("1.0369277551433699263313654864570341680570809195019128119741926779038035897862815", 256).unwrap();
        assert!((&zeta_reference(5, &p()).unwrap() - &z5).abs().to_f64() < 1e-60);
        assert!(zeta_reference(1, &p()).is_err());
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli(6);
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        assert_eq!(b[2], BigRational::new(1.into(), 6.into()));
        assert_eq!(b[4], BigRational::new((-1).into(), 30.into()));
        assert_eq!(b[6], BigRational::new(1.into(), 42.into()));
    }

    /// Alternating series sum (-1)^m/(2m+1)^2 accelerated by the
    /// Cohen-Rodriguez Villegas-Zagier weights.
    fn catalan_alternating(bits: u32, n: u64) -> Real {
        let d0 = (&Real::from_u64(3, bits) + &Real::from_u64(8, bits).sqrt()).powi(n as u32);
        let d = (&d0 + &d0.recip()).mul_2exp(-1);
        let mut b = Real::from_i64(-1, bits);
        let mut c = -&d;
        let mut s = Real::zero(bits);
        for k in 0..n {
            c = &b - &c;
            let a = Real::one(bits).div_u64((2 * k + 1) * (2 * k + 1));
            s += &(&c * &a);
            b = -b.mul_u64((k + n) * (n - k)).mul_2exp(1).div_u64((k + 1) * (2 * k + 1));
        }
        s.div_by(&d)
    }

    #[test]
    fn catalan_matches_alternating_series() {
        let g = catalan_reference(&p());
        let alt = catalan_alternating(320, 120);
        assert!((&g - &alt).abs().to_f64() < 1e-60, "{g:?} vs {alt:?}");
        assert!((g.to_f64() - 0.915_965_594_177_219).abs() < 1e-15);
    }
}
