use super::real::Real;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Complex number with [`Real`] parts.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn zero(bits: u32) -> Complex {
        Complex::new(Real::zero(bits), Real::zero(bits))
    }

    pub fn one(bits: u32) -> Complex {
        Complex::new(Real::one(bits), Real::zero(bits))
    }

    pub fn i(bits: u32) -> Complex {
        Complex::new(Real::zero(bits), Real::one(bits))
    }

    pub fn from_real(re: Real) -> Complex {
        let bits = re.prec();
        Complex::new(re, Real::zero(bits))
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Complex {
        Complex::new(Real::from_f64(re, bits), Real::from_f64(im, bits))
    }

    pub fn from_i64(v: i64, bits: u32) -> Complex {
        Complex::from_real(Real::from_i64(v, bits))
    }

    /// `2 pi i`.
    pub fn two_pi_i(bits: u32) -> Complex {
        Complex::new(Real::zero(bits), Real::pi(bits).mul_2exp(1))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn round_to(&self, bits: u32) -> Complex {
        Complex::new(self.re.round_to(bits), self.im.round_to(bits))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Magnitude as f64, for step control and error estimates.
    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Complex {
        assert!(!self.is_zero(), "log of zero");
        Complex::new(self.norm_sqr().ln().mul_2exp(-1), self.arg())
    }

    pub fn exp(&self) -> Complex {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Complex::new(&m * &c, &m * &s)
    }

    /// `e^{i t}`.
    pub fn cis(t: &Real) -> Complex {
        let (s, c) = t.sin_cos();
        Complex::new(c, s)
    }

    pub fn recip(&self) -> Complex {
        let d = self.norm_sqr().recip();
        Complex::new(&self.re * &d, -(&self.im * &d))
    }

    pub fn div(&self, other: &Complex) -> Complex {
        self * &other.recip()
    }

    pub fn scale(&self, r: &Real) -> Complex {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn mul_i64(&self, k: i64) -> Complex {
        Complex::new(self.re.mul_i64(k), self.im.mul_i64(k))
    }

    pub fn div_i64(&self, k: i64) -> Complex {
        Complex::new(self.re.div_i64(k), self.im.div_i64(k))
    }

    pub fn div_u64(&self, k: u64) -> Complex {
        Complex::new(self.re.div_u64(k), self.im.div_u64(k))
    }

    pub fn mul_2exp(&self, k: i64) -> Complex {
        Complex::new(self.re.mul_2exp(k), self.im.mul_2exp(k))
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Complex {
        Complex::new(-&self.im, self.re.clone())
    }

    pub fn square(&self) -> Complex {
        let re = &self.re.square() - &self.im.square();
        let im = (&self.re * &self.im).mul_2exp(1);
        Complex::new(re, im)
    }

    pub fn powi(&self, n: u32) -> Complex {
        let mut base = self.clone();
        let mut acc = Complex::one(self.prec());
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

    /// Parse `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`, `a+i`).
    pub fn parse(s: &str, bits: u32) -> Option<Complex> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let Some(body) = s.strip_suffix(['i', 'j']) else {
            return Real::parse_decimal(&s, bits).map(Complex::from_real);
        };
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let imag = |t: &str| -> Option<Real> {
            match t {
                "" | "+" => Some(Real::one(bits)),
                "-" => Some(-Real::one(bits)),
                _ => Real::parse_decimal(t, bits),
            }
        };
        match split {
            Some(k) => Some(Complex::new(Real::parse_decimal(&body[..k], bits)?, imag(&body[k..])?)),
            None => Some(Complex::new(Real::zero(bits), imag(body)?)),
        }
    }

    /// `a+bi` rendering with the given significant digits per part.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.im.is_zero() {
            return self.re.to_decimal(digits);
        }
        let im = self.im.to_decimal(digits);
        let (sign, mag) = match im.strip_prefix('-') {
            Some(m) => ("-", m.to_string()),
            None => ("+", im),
        };
        if self.re.is_zero() {
            return format!("{}{}i", if sign == "-" { "-" } else { "" }, mag);
        }
        format!("{}{}{}i", self.re.to_decimal(digits), sign, mag)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(25))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec() as f64) * std::f64::consts::LOG10_2) as usize - 2);
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

fn cmul(a: &Complex, b: &Complex) -> Complex {
    if b.im.is_zero() {
        return Complex::new(&a.re * &b.re, &a.im * &b.re);
    }
    if a.im.is_zero() {
        return Complex::new(&a.re * &b.re, &a.re * &b.im);
    }
    let re = &(&a.re * &b.re) - &(&a.im * &b.im);
    let im = &(&a.re * &b.im) + &(&a.im * &b.re);
    Complex::new(re, im)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Complex> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                let f: fn(&Complex, &Complex) -> Complex = $body;
                f(self, rhs)
            }
        }
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Complex::new(&a.re + &b.re, &a.im + &b.im));
binop!(Sub, sub, |a, b| Complex::new(&a.re - &b.re, &a.im - &b.im));
binop!(Mul, mul, cmul);

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u32 = 256;

    #[test]
    fn exp_log_round_trip() {
        let z = Complex::from_f64(-0.75, 2.5, B);
        let w = z.ln().exp();
        assert!((&w - &z).abs_f64() < 1e-70);
        let two_pi_i = Complex::two_pi_i(B);
        assert!((&two_pi_i.exp() - &Complex::one(B)).abs_f64() < 1e-70);
    }

    #[test]
    fn principal_branch_cut() {
        let z = Complex::from_f64(-1.0, 0.0, B);
        assert!((z.arg().to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let z = Complex::from_f64(-1.0, -1e-40, B);
        assert!(z.arg().to_f64() < 0.0);
    }

    #[test]
    fn division() {
        let a = Complex::from_f64(1.5, -2.0, B);
        let b = Complex::from_f64(0.25, 3.0, B);
        assert!((&a.div(&b) * &b - &a).abs_f64() < 1e-70);
    }

    #[test]
    fn parsing() {
        let p = |s| Complex::parse(s, B).unwrap().to_f64();
        assert_eq!(p("0.5"), (0.5, 0.0));
        assert_eq!(p("i"), (0.0, 1.0));
        assert_eq!(p("-i"), (0.0, -1.0));
        assert_eq!(p("1-2.5i"), (1.0, -2.5));
        assert_eq!(p("-1e-3+2e1i"), (-0.001, 20.0));
        assert_eq!(p("3+i"), (3.0, 1.0));
        assert!(Complex::parse("1+xi", B).is_none());
        assert_eq!(Complex::from_f64(1.0, -2.5, B).to_decimal(5), "1-2.5i");
    }
}
