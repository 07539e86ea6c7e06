//! Binary floating point with a fixed number of 64-bit limbs.
//!
//! A nonzero value is `(-1)^neg * M * 2^(exp - 64*L)` where `M` is an
//! `L`-limb integer with its top bit set, so the magnitude lies in
//! `[2^(exp-1), 2^exp)`. Rounding is to nearest on every operation.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use smallvec::{smallvec, SmallVec};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

type Limbs = SmallVec<[u64; 8]>;
type Buf = SmallVec<[u64; 32]>;

/// Number of limbs needed to hold `bits` bits of mantissa.
pub fn limbs_for(bits: u32) -> usize {
    (bits.max(64) as usize).div_ceil(64)
}

#[derive(Clone)]
pub struct Real {
    neg: bool,
    exp: i64,
    limbs: Limbs,
}

#[inline]
fn word_at(src: &[u64], q: i64) -> u64 {
    if q < 0 || q >= src.len() as i64 {
        0
    } else {
        src[q as usize]
    }
}

/// The 64 bits of `src` starting at bit position `pos` (may be negative).
#[inline]
fn get_word(src: &[u64], pos: i64) -> u64 {
    let q = pos.div_euclid(64);
    let r = pos.rem_euclid(64) as u32;
    let lo = word_at(src, q);
    if r == 0 {
        return lo;
    }
    let hi = word_at(src, q + 1);
    (lo >> r) | (hi << (64 - r))
}

fn from_mag(neg: bool, mag: &[u64], lsb: i64, nl: usize) -> Real {
    let top = match mag.iter().rposition(|&w| w != 0) {
        None => return Real::zero_limbs(nl),
        Some(t) => t,
    };
    let bitlen = 64 * top as i64 + 64 - mag[top].leading_zeros() as i64;
    let mut exp = lsb + bitlen;
    let shift = bitlen - 64 * nl as i64;
    let mut out: Limbs = smallvec![0; nl];
    for (i, o) in out.iter_mut().enumerate() {
        *o = get_word(mag, shift + 64 * i as i64);
    }
    if shift > 0 {
        let rb = shift - 1;
        if (word_at(mag, rb / 64) >> (rb % 64)) & 1 == 1 {
            let mut carry = true;
            for o in out.iter_mut() {
                let (v, c) = o.overflowing_add(1);
                *o = v;
                if !c {
                    carry = false;
                    break;
                }
            }
            if carry {
                out[nl - 1] = 1 << 63;
                exp += 1;
            }
        }
    }
    Real { neg, exp, limbs: out }
}

impl Real {
    fn zero_limbs(nl: usize) -> Real {
        Real { neg: false, exp: 0, limbs: smallvec![0; nl] }
    }

    pub fn zero(bits: u32) -> Real {
        Real::zero_limbs(limbs_for(bits))
    }

    pub fn one(bits: u32) -> Real {
        Real::from_u64(1, bits)
    }

    /// Mantissa width in bits.
    pub fn prec(&self) -> u32 {
        64 * self.limbs.len() as u32
    }

    fn nl(&self) -> usize {
        self.limbs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs[self.nl() - 1] == 0
    }

    pub fn is_negative(&self) -> bool {
        self.neg && !self.is_zero()
    }

    /// Binary exponent: nonzero values satisfy `2^(e-1) <= |x| < 2^e`.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn from_u64(v: u64, bits: u32) -> Real {
        from_mag(false, &[v], 0, limbs_for(bits))
    }

    pub fn from_i64(v: i64, bits: u32) -> Real {
        from_mag(v < 0, &[v.unsigned_abs()], 0, limbs_for(bits))
    }

    /// Exact conversion (panics on non-finite input).
    pub fn from_f64(v: f64, bits: u32) -> Real {
        assert!(v.is_finite(), "non-finite f64 {v}");
        let nl = limbs_for(bits);
        if v == 0.0 {
            return Real::zero_limbs(nl);
        }
        let b = v.to_bits();
        let e = ((b >> 52) & 0x7ff) as i64;
        let frac = b & ((1u64 << 52) - 1);
        let (m, e2) = if e == 0 { (frac, -1074) } else { (frac | (1 << 52), e - 1075) };
        from_mag(v < 0.0, &[m], e2, nl)
    }

    pub fn from_ratio(num: i64, den: i64, bits: u32) -> Real {
        Real::from_i64(num, bits + 64).div_by(&Real::from_i64(den, bits + 64)).round_to(bits)
    }

    pub fn from_biguint(v: &BigUint, neg: bool, bits: u32) -> Real {
        let digits = v.to_u64_digits();
        from_mag(neg, &digits, 0, limbs_for(bits))
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Real {
        Real::from_biguint(v.magnitude(), v.sign() == Sign::Minus, bits)
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Real {
        let n = Real::from_bigint(q.numer(), bits + 64);
        let d = Real::from_bigint(q.denom(), bits + 64);
        n.div_by(&d).round_to(bits)
    }

    /// Re-round to a different mantissa width.
    pub fn round_to(&self, bits: u32) -> Real {
        let nl = limbs_for(bits);
        if nl == self.nl() {
            return self.clone();
        }
        from_mag(self.neg, &self.limbs, self.exp - 64 * self.nl() as i64, nl)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let n = self.nl();
        let hi = self.limbs[n - 1] as f64;
        let lo = if n > 1 { self.limbs[n - 2] as f64 } else { 0.0 };
        let m = hi + lo * 2f64.powi(-64);
        let e = self.exp - 64;
        let v = if e > 1100 {
            f64::INFINITY
        } else if e < -1200 {
            0.0
        } else if e < -1000 {
            m * 2f64.powi(-1000) * 2f64.powi((e + 1000) as i32)
        } else {
            m * 2f64.powi(e as i32)
        };
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn abs(&self) -> Real {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_2exp(&self, k: i64) -> Real {
        let mut r = self.clone();
        if !r.is_zero() {
            r.exp += k;
        }
        r
    }

    fn add_signed(&self, other: &Real, flip: bool) -> Real {
        let nl = self.nl().max(other.nl());
        let bneg = other.neg ^ flip;
        if other.is_zero() {
            return if self.nl() == nl { self.clone() } else { self.round_to(64 * nl as u32) };
        }
        if self.is_zero() {
            let mut r = if other.nl() == nl { other.clone() } else { other.round_to(64 * nl as u32) };
            r.neg = bneg;
            return r;
        }
        let gap = 64 * (nl as i64 + 1);
        if self.exp - other.exp > gap {
            return if self.nl() == nl { self.clone() } else { self.round_to(64 * nl as u32) };
        }
        if other.exp - self.exp > gap {
            let mut r = if other.nl() == nl { other.clone() } else { other.round_to(64 * nl as u32) };
            r.neg = bneg;
            return r;
        }
        let lsb_a = self.exp - 64 * self.nl() as i64;
        let lsb_b = other.exp - 64 * other.nl() as i64;
        let base = lsb_a.min(lsb_b);
        let top = self.exp.max(other.exp);
        let w = ((top - base) / 64 + 2) as usize;
        let da = lsb_a - base;
        let db = lsb_b - base;
        let mut buf: Buf = smallvec![0; w];
        if self.neg == bneg {
            let mut carry = 0u64;
            for (i, slot) in buf.iter_mut().enumerate() {
                let p = 64 * i as i64;
                let x = get_word(&self.limbs, p - da);
                let y = get_word(&other.limbs, p - db);
                let (s1, c1) = x.overflowing_add(y);
                let (s2, c2) = s1.overflowing_add(carry);
                *slot = s2;
                carry = (c1 as u64) + (c2 as u64);
            }
            from_mag(self.neg, &buf, base, nl)
        } else {
            let mut borrow = 0u64;
            for (i, slot) in buf.iter_mut().enumerate() {
                let p = 64 * i as i64;
                let x = get_word(&self.limbs, p - da);
                let y = get_word(&other.limbs, p - db);
                let (s1, b1) = x.overflowing_sub(y);
                let (s2, b2) = s1.overflowing_sub(borrow);
                *slot = s2;
                borrow = (b1 as u64) + (b2 as u64);
            }
            let mut neg = self.neg;
            if borrow != 0 {
                // two's complement negate
                let mut carry = 1u64;
                for slot in buf.iter_mut() {
                    let (v, c) = (!*slot).overflowing_add(carry);
                    *slot = v;
                    carry = c as u64;
                }
                neg = bneg;
            }
            from_mag(neg, &buf, base, nl)
        }
    }

    fn mul_impl(&self, other: &Real) -> Real {
        let nl = self.nl().max(other.nl());
        if self.is_zero() || other.is_zero() {
            return Real::zero_limbs(nl);
        }
        let (a, b) = (&self.limbs, &other.limbs);
        let mut prod: Buf = smallvec![0; a.len() + b.len()];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let mut carry = 0u128;
            for (j, &bj) in b.iter().enumerate() {
                let t = (ai as u128) * (bj as u128) + prod[i + j] as u128 + carry;
                prod[i + j] = t as u64;
                carry = t >> 64;
            }
            prod[i + b.len()] = carry as u64;
        }
        let lsb = (self.exp - 64 * a.len() as i64) + (other.exp - 64 * b.len() as i64);
        from_mag(self.neg ^ other.neg, &prod, lsb, nl)
    }

    pub fn mul_u64(&self, d: u64) -> Real {
        let nl = self.nl();
        if self.is_zero() || d == 0 {
            return Real::zero_limbs(nl);
        }
        let mut buf: Buf = smallvec![0; nl + 1];
        let mut carry = 0u128;
        for i in 0..nl {
            let t = self.limbs[i] as u128 * d as u128 + carry;
            buf[i] = t as u64;
            carry = t >> 64;
        }
        buf[nl] = carry as u64;
        from_mag(self.neg, &buf, self.exp - 64 * nl as i64, nl)
    }

    pub fn mul_i64(&self, d: i64) -> Real {
        let r = self.mul_u64(d.unsigned_abs());
        if d < 0 {
            -r
        } else {
            r
        }
    }

    pub fn div_u64(&self, d: u64) -> Real {
        assert!(d != 0, "division by zero");
        let nl = self.nl();
        if self.is_zero() {
            return self.clone();
        }
        let mut q: Buf = smallvec![0; nl + 1];
        let mut rem = 0u128;
        for i in (0..=nl).rev() {
            let w = if i == 0 { 0 } else { self.limbs[i - 1] };
            let cur = (rem << 64) | w as u128;
            q[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        from_mag(self.neg, &q, self.exp - 64 * nl as i64 - 64, nl)
    }

    pub fn div_i64(&self, d: i64) -> Real {
        let r = self.div_u64(d.unsigned_abs());
        if d < 0 {
            -r
        } else {
            r
        }
    }

    pub fn square(&self) -> Real {
        self.mul_impl(self)
    }

    /// Reciprocal by Newton iteration with one guard limb.
    pub fn recip(&self) -> Real {
        assert!(!self.is_zero(), "reciprocal of zero");
        let nl = self.nl();
        let wbits = 64 * (nl as u32 + 1);
        let b = self.round_to(wbits);
        let top = self.limbs[nl - 1] as f64;
        let mut r = Real::from_f64(2f64.powi(64) / top, wbits).mul_2exp(-self.exp);
        if self.neg {
            r = -r;
        }
        let one = Real::one(wbits);
        let mut good = 48u32;
        while good < wbits + 8 {
            let e = &one - &(&b * &r);
            r = &r + &(&r * &e);
            good *= 2;
        }
        r.round_to(64 * nl as u32)
    }

    pub fn div_by(&self, other: &Real) -> Real {
        let nl = self.nl().max(other.nl());
        if self.is_zero() {
            return Real::zero_limbs(nl);
        }
        let wbits = 64 * (nl as u32 + 1);
        let r = other.round_to(64 * nl as u32).recip().round_to(wbits);
        let a = self.round_to(wbits);
        let q = &a * &r;
        // one correction step
        let res = &a - &(&q * &other.round_to(wbits));
        (&q + &(&res * &r)).round_to(64 * nl as u32)
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "sqrt of negative");
        let nl = self.nl();
        if self.is_zero() {
            return self.clone();
        }
        let wbits = 64 * (nl as u32 + 1);
        let x = self.round_to(wbits);
        // x = m * 2^(2k) with m in [1/4, 4)
        let k = self.exp.div_euclid(2);
        let m = x.mul_2exp(-2 * k);
        let mut y = Real::from_f64(1.0 / m.to_f64().sqrt(), wbits);
        let one = Real::one(wbits);
        let mut good = 48u32;
        while good < wbits + 8 {
            let e = &one - &(&m * &y.square());
            y = &y + &(&y * &e).mul_2exp(-1);
            good *= 2;
        }
        let s = &m * &y;
        let s = &s + &(&y * &(&m - &s.square())).mul_2exp(-1);
        s.mul_2exp(k).round_to(64 * nl as u32)
    }

    /// Nearest integer as f64-guided i64 (for range reduction only).
    fn round_i64(&self) -> i64 {
        self.to_f64().round() as i64
    }

    pub fn pi(bits: u32) -> Real {
        cached(&PI_CACHE, bits, compute_pi)
    }

    pub fn ln2(bits: u32) -> Real {
        cached(&LN2_CACHE, bits, compute_ln2)
    }

    pub fn exp(&self) -> Real {
        let nl = self.nl();
        let bits = 64 * nl as u32;
        if self.is_zero() {
            return Real::one(bits);
        }
        let wbits = bits + 64;
        let x = self.round_to(wbits);
        let ln2 = Real::ln2(wbits);
        let k = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
        let r = &x - &ln2.mul_i64(k);
        let h: i64 = 10;
        let s = r.mul_2exp(-h);
        // Taylor series for exp(s) - 1
        let mut term = s.clone();
        let mut sum = s.clone();
        let mut j = 1u64;
        let stop = -(wbits as i64) - 4;
        loop {
            j += 1;
            term = (&term * &s).div_u64(j);
            if term.is_zero() || term.exp < stop {
                break;
            }
            sum += &term;
        }
        // (1+e)^2 = 1 + (2e + e^2)
        for _ in 0..h {
            sum = &sum.mul_2exp(1) + &sum.square();
        }
        let one = Real::one(wbits);
        (&one + &sum).mul_2exp(k).round_to(bits)
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Real {
        assert!(!self.is_zero() && !self.neg, "ln of non-positive value");
        let nl = self.nl();
        let bits = 64 * nl as u32;
        let wbits = bits + 64;
        let x = self.round_to(wbits);
        let mut e = self.exp;
        let mut m = x.mul_2exp(-e);
        if m.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.mul_2exp(1);
            e -= 1;
        }
        let one = Real::one(wbits);
        let z = (&m - &one).div_by(&(&m + &one));
        let z2 = z.square();
        let mut pow = z.clone();
        let mut sum = z.clone();
        let stop = -(wbits as i64) - 4;
        let mut j = 1u64;
        if !z.is_zero() {
            loop {
                pow = &pow * &z2;
                j += 2;
                let t = pow.div_u64(j);
                if t.is_zero() || t.exp < stop {
                    break;
                }
                sum += &t;
            }
        }
        let res = &sum.mul_2exp(1) + &Real::ln2(wbits).mul_i64(e);
        res.round_to(bits)
    }

    pub fn atan(&self) -> Real {
        let nl = self.nl();
        let bits = 64 * nl as u32;
        if self.is_zero() {
            return self.clone();
        }
        let wbits = bits + 64;
        let mut x = self.round_to(wbits).abs();
        let one = Real::one(wbits);
        let inverted = x.exp > 1 || (x.exp == 1 && x > one);
        if inverted {
            x = one.div_by(&x);
        }
        let halvings = 3;
        for _ in 0..halvings {
            let d = &one + &(&one + &x.square()).sqrt();
            x = x.div_by(&d);
        }
        let x2 = x.square();
        let mut pow = x.clone();
        let mut sum = x.clone();
        let stop = -(wbits as i64) - 4;
        let mut j = 1u64;
        let mut sign = false;
        loop {
            pow = &pow * &x2;
            j += 2;
            sign = !sign;
            let t = pow.div_u64(j);
            if t.is_zero() || t.exp < stop {
                break;
            }
            if sign {
                sum -= &t;
            } else {
                sum += &t;
            }
        }
        let mut res = sum.mul_2exp(halvings);
        if inverted {
            res = &Real::pi(wbits).mul_2exp(-1) - &res;
        }
        if self.neg {
            res = -res;
        }
        res.round_to(bits)
    }

    /// Angle of the point `(x, y)` in `(-pi, pi]`.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let bits = y.prec().max(x.prec());
        if x.is_zero() && y.is_zero() {
            return Real::zero(bits);
        }
        let pi = Real::pi(bits);
        if x.is_zero() {
            let h = pi.mul_2exp(-1);
            return if y.neg { -h } else { h };
        }
        if y.is_zero() {
            return if x.neg { pi } else { Real::zero(bits) };
        }
        if y.abs() <= x.abs() {
            let a = y.div(x).atan();
            if !x.neg {
                a
            } else if y.neg {
                &a - &pi
            } else {
                &a + &pi
            }
        } else {
            let a = x.div(y).atan();
            let h = pi.mul_2exp(-1);
            if y.neg {
                &(-h) - &a
            } else {
                &h - &a
            }
        }
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> (Real, Real) {
        let nl = self.nl();
        let bits = 64 * nl as u32;
        if self.is_zero() {
            return (Real::zero(bits), Real::one(bits));
        }
        let wbits = bits + 64;
        let x = self.round_to(wbits);
        let half_pi = Real::pi(wbits).mul_2exp(-1);
        let k = (x.to_f64() / std::f64::consts::FRAC_PI_2).round() as i64;
        let r = &x - &half_pi.mul_i64(k);
        let h: i64 = 8;
        let s = r.mul_2exp(-h);
        let s2 = s.square();
        // sin series and 1 - cos series
        let stop = -(wbits as i64) - 4;
        let mut sin = s.clone();
        let mut term = s.clone();
        let mut j = 1u64;
        let mut sign = false;
        loop {
            term = (&term * &s2).div_u64((j + 1) * (j + 2));
            j += 2;
            sign = !sign;
            if term.is_zero() || term.exp < stop {
                break;
            }
            if sign {
                sin -= &term;
            } else {
                sin += &term;
            }
        }
        let mut vers = s2.mul_2exp(-1); // 1 - cos
        let mut term = vers.clone();
        let mut j = 2u64;
        let mut sign = false;
        loop {
            term = (&term * &s2).div_u64((j + 1) * (j + 2));
            j += 2;
            sign = !sign;
            if term.is_zero() || term.exp < stop {
                break;
            }
            if sign {
                vers -= &term;
            } else {
                vers += &term;
            }
        }
        // double angle: sin 2a = 2 sin a cos a, 1 - cos 2a = 2 sin^2 a
        let one = Real::one(wbits);
        for _ in 0..h {
            let cos = &one - &vers;
            let ns = (&sin * &cos).mul_2exp(1);
            vers = sin.square().mul_2exp(1);
            sin = ns;
        }
        let cos = &one - &vers;
        let (s, c) = match k.rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        };
        (s.round_to(bits), c.round_to(bits))
    }

    pub fn powi(&self, n: u32) -> Real {
        let mut base = self.clone();
        let mut acc = Real::one(self.prec());
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Exact value as a big rational (finite binary fraction).
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut digits = Vec::with_capacity(self.nl());
        digits.extend_from_slice(&self.limbs);
        let m = BigInt::from_biguint(if self.neg { Sign::Minus } else { Sign::Plus }, BigUint::new(to_u32s(&digits)));
        let e = self.exp - 64 * self.nl() as i64;
        let two = BigInt::from(2);
        if e >= 0 {
            BigRational::from_integer(m * num_traits::pow(two, e as usize))
        } else {
            BigRational::new(m, num_traits::pow(two, (-e) as usize))
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let wbits = self.prec() + 64;
        let x = self.round_to(wbits).abs();
        let mut e10 = ((self.exp - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let ten = Real::from_u64(10, wbits);
        let scaled_int = |e10: i64| -> BigUint {
            let p = digits as i64 - 1 - e10;
            let s = if p >= 0 {
                &x * &ten.powi(p as u32)
            } else {
                x.div_by(&ten.powi((-p) as u32))
            };
            let s = &s + &Real::from_f64(0.5, wbits);
            s.floor_biguint()
        };
        let lo = num_traits::pow(BigUint::from(10u32), digits - 1);
        let hi = &lo * 10u32;
        let mut n = scaled_int(e10);
        for _ in 0..4 {
            if n >= hi {
                e10 += 1;
                n = scaled_int(e10);
            } else if n < lo {
                e10 -= 1;
                n = scaled_int(e10);
            } else {
                break;
            }
        }
        if n >= hi {
            // rounding carried into a new digit
            n /= 10u32;
            e10 += 1;
        }
        let s = n.to_string();
        let sign = if self.neg { "-" } else { "" };
        format_decimal(sign, &s, e10)
    }

    fn floor_biguint(&self) -> BigUint {
        if self.is_zero() || self.neg || self.exp <= 0 {
            return BigUint::zero();
        }
        let nl = self.nl() as i64;
        let shift = 64 * nl - self.exp;
        let w = ((self.exp + 63) / 64) as usize;
        let mut out = vec![0u64; w];
        for (i, o) in out.iter_mut().enumerate() {
            *o = get_word(&self.limbs, shift + 64 * i as i64);
        }
        // mask bits above exp
        let extra = 64 * w as i64 - self.exp;
        if extra > 0 {
            let last = out.last_mut().unwrap();
            *last &= u64::MAX >> extra;
        }
        BigUint::new(to_u32s(&out))
    }

    /// Parse a decimal literal such as `-1.25e-3`.
    pub fn parse_decimal(s: &str, bits: u32) -> Option<Real> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first()? {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
            None => (body, 0),
        };
        let (ip, fp) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if ip.is_empty() && fp.is_empty() {
            return None;
        }
        if !ip.bytes().chain(fp.bytes()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let all = format!("{ip}{fp}");
        let n: BigUint = if all.is_empty() { BigUint::zero() } else { all.parse().ok()? };
        let e10 = exp - fp.len() as i64;
        let wbits = bits + 64;
        let m = Real::from_biguint(&n, neg, wbits);
        let ten = Real::from_u64(10, wbits);
        let v = if e10 >= 0 {
            &m * &ten.powi(e10 as u32)
        } else {
            m.div_by(&ten.powi((-e10) as u32))
        };
        Some(v.round_to(bits))
    }

    pub fn max_abs<'a>(a: &'a Real, b: &'a Real) -> &'a Real {
        if a.abs() >= b.abs() {
            a
        } else {
            b
        }
    }

    fn cmp_abs(&self, other: &Real) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        if self.exp != other.exp {
            return self.exp.cmp(&other.exp);
        }
        let n = self.nl().max(other.nl()) as i64;
        for i in (0..n).rev() {
            let a = word_at(&self.limbs, i - (n - self.nl() as i64));
            let b = word_at(&other.limbs, i - (n - other.nl() as i64));
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

fn to_u32s(words: &[u64]) -> Vec<u32> {
    let mut v = Vec::with_capacity(2 * words.len());
    for &w in words {
        v.push(w as u32);
        v.push((w >> 32) as u32);
    }
    v
}

fn format_decimal(sign: &str, ds: &str, e10: i64) -> String {
    let trimmed = ds.trim_end_matches('0');
    let ds = if trimmed.is_empty() { "0" } else { trimmed };
    if (-6..21).contains(&e10) {
        if e10 < 0 {
            format!("{sign}0.{}{}", "0".repeat((-e10 - 1) as usize), ds)
        } else {
            let ip = (e10 + 1) as usize;
            if ds.len() <= ip {
                format!("{sign}{}{}", ds, "0".repeat(ip - ds.len()))
            } else {
                format!("{sign}{}.{}", &ds[..ip], &ds[ip..])
            }
        }
    } else if ds.len() == 1 {
        format!("{sign}{ds}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &ds[..1], &ds[1..])
    }
}

thread_local! {
    static PI_CACHE: RefCell<Vec<Option<Real>>> = const { RefCell::new(Vec::new()) };
    static LN2_CACHE: RefCell<Vec<Option<Real>>> = const { RefCell::new(Vec::new()) };
}

fn cached(
    cache: &'static std::thread::LocalKey<RefCell<Vec<Option<Real>>>>,
    bits: u32,
    f: fn(u32) -> Real,
) -> Real {
    let nl = limbs_for(bits);
    if let Some(v) = cache.with(|c| c.borrow().get(nl).cloned().flatten()) {
        return v;
    }
    let v = f(64 * (nl as u32 + 1)).round_to(64 * nl as u32);
    cache.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() <= nl {
            c.resize(nl + 1, None);
        }
        c[nl] = Some(v.clone());
    });
    v
}

/// `atan(1/k)` or `atanh(1/k)` by its Taylor series.
fn arc_series(k: u64, bits: u32, hyperbolic: bool) -> Real {
    let k2 = k * k;
    let mut pow = Real::one(bits).div_u64(k);
    let mut sum = pow.clone();
    let stop = -(bits as i64) - 4;
    let mut j = 1u64;
    let mut sign = false;
    loop {
        pow = pow.div_u64(k2);
        j += 2;
        sign = !sign;
        let t = pow.div_u64(j);
        if t.is_zero() || t.exp < stop {
            break;
        }
        if sign && !hyperbolic {
            sum -= &t;
        } else {
            sum += &t;
        }
    }
    sum
}

fn compute_pi(bits: u32) -> Real {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a = arc_series(5, bits, false).mul_u64(16);
    let b = arc_series(239, bits, false).mul_u64(4);
    &a - &b
}

fn compute_ln2(bits: u32) -> Real {
    arc_series(3, bits, true).mul_2exp(1)
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        let sa = !self.is_zero() && self.neg;
        let sb = !other.is_zero() && other.neg;
        Some(match (sa, sb) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_abs(other),
            (true, true) => other.cmp_abs(self),
        })
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec() as f64) * std::f64::consts::LOG10_2) as usize - 2);
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl ToPrimitive for Real {
    fn to_i64(&self) -> Option<i64> {
        Some(self.round_i64())
    }
    fn to_u64(&self) -> Option<u64> {
        let v = self.round_i64();
        (v >= 0).then_some(v as u64)
    }
    fn to_f64(&self) -> Option<f64> {
        Some(Real::to_f64(self))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(mut self) -> Real {
        self.neg = !self.neg;
        self
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        -self.clone()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let f: fn(&Real, &Real) -> Real = $body;
                f(self, rhs)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_signed(b, false));
binop!(Sub, sub, |a, b| a.add_signed(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.div_by(b));

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        *self = self.add_signed(rhs, false);
    }
}

impl SubAssign<&Real> for Real {
    fn sub_assign(&mut self, rhs: &Real) {
        *self = self.add_signed(rhs, true);
    }
}

impl MulAssign<&Real> for Real {
    fn mul_assign(&mut self, rhs: &Real) {
        *self = self.mul_impl(rhs);
    }
}
