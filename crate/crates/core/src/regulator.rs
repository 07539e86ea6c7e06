//! Rational functions over `Q`, valuations, tame symbols and the holonomy
//! of the Heisenberg bundle attached to a pair of functions.
//!
//! `I(f, g, gamma) = int dlog f dlog g - log g(p) int dlog f + log f(p) int dlog g`
//! is defined modulo `Z(2) = (2 pi i)^2 Z`, which is the real lattice
//! `4 pi^2 Z`. Values are normalised by reducing the real part into
//! `(-2 pi^2, 2 pi^2]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::itint::{iterated_integrals, FormWord, LogForm};
use crate::numerics::complex::Complex;
use crate::numerics::real::Real;
use crate::numerics::PrecisionConfig;
use crate::paths::{Path, PathSegment};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn from_coeffs(mut c: Vec<BigRational>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: BigRational) -> Poly {
        Poly::from_coeffs(vec![v])
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    /// The variable `t`.
    pub fn t() -> Poly {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `t - a`.
    pub fn linear(a: &BigRational) -> Poly {
        Poly::from_coeffs(vec![-a.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        Poly::from_coeffs((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let lead = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let coef = &r[k + dd] / &lead;
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &coef * b;
            }
            quo[k] = coef;
        }
        r.truncate(dd);
        (Poly::from_coeffs(quo), Poly::from_coeffs(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(self.c.iter().enumerate().skip(1).map(|(i, x)| x * q(i as i64)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: &Complex) -> Complex {
        let bits = z.prec();
        let mut acc = Complex::zero(bits);
        for c in self.c.iter().rev() {
            acc = &(&acc * z) + &Complex::from_real(Real::from_rational(c, bits));
        }
        acc
    }

    /// Multiplicity of the root `a`.
    pub fn multiplicity(&self, a: &BigRational) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = Poly::linear(a);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (quo, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return k;
            }
            p = quo;
            k += 1;
        }
    }

    /// Square-free decomposition `self = lead * prod_k P_k^k` (Yun).
    pub fn squarefree(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let a0 = f.gcd(&d);
        let mut b = f.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            dd = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Distinct rational roots with multiplicities.
    pub fn rational_roots(&self) -> Vec<(BigRational, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        // clear denominators, strip the root 0
        let lcm = self.c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let z = ints.iter().take_while(|x| x.is_zero()).count();
        if z > 0 {
            out.push((BigRational::zero(), z as u32));
        }
        let ints = &ints[z..];
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints[ints.len() - 1].abs();
            for p in divisors(&a0) {
                for qd in divisors(&an) {
                    if p.gcd(&qd) != BigInt::one() {
                        continue;
                    }
                    for s in [1, -1] {
                        let r = BigRational::new(&p * BigInt::from(s), qd.clone());
                        let m = self.multiplicity(&r);
                        if m > 0 {
                            out.push((r, m));
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// All complex roots with multiplicities.
    pub fn complex_roots(&self, bits: u32) -> Vec<(Complex, u32)> {
        let mut out = Vec::new();
        for (factor, k) in self.squarefree() {
            let mut rest = factor.clone();
            for (r, _) in factor.rational_roots() {
                out.push((Complex::from_real(Real::from_rational(&r, bits)), k));
                rest = rest.div_rem(&Poly::linear(&r)).0;
            }
            if rest.degree().unwrap_or(0) > 0 {
                for z in simple_roots(&rest, bits) {
                    out.push((z, k));
                }
            }
        }
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Roots of a square-free polynomial: Durand-Kerner in double precision,
/// then Newton polishing at `bits`.
fn simple_roots(p: &Poly, bits: u32) -> Vec<Complex> {
    let n = p.degree().unwrap_or(0);
    let monic = p.monic();
    let cf: Vec<(f64, f64)> = monic.c.iter().map(|x| (x.to_f64().unwrap_or(0.0), 0.0)).collect();
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for c in cf.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + c.0, acc.0 * z.1 + acc.1 * z.0 + c.1);
        }
        acc
    };
    let radius = 1.0 + cf.iter().take(n).map(|c| c.0.abs()).fold(0.0, f64::max);
    let mut zs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            (radius * th.cos(), radius * th.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0f64;
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (zs[i].0 - zs[j].0, zs[i].1 - zs[j].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let num = eval(zs[i]);
            let m = den.0 * den.0 + den.1 * den.1;
            if m == 0.0 {
                continue;
            }
            let step = ((num.0 * den.0 + num.1 * den.1) / m, (num.1 * den.0 - num.0 * den.1) / m);
            zs[i] = (zs[i].0 - step.0, zs[i].1 - step.1);
            moved = moved.max(step.0.hypot(step.1));
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    let dp = p.derivative();
    zs.into_iter()
        .map(|z0| {
            let mut z = Complex::from_f64(z0.0, z0.1, bits);
            for _ in 0..64 {
                let step = p.eval_complex(&z).div(&dp.eval_complex(&z));
                z = &z - &step;
                let s = step.abs_f64();
                if s == 0.0 || s < z.abs_f64().max(1.0) * 2f64.powi(-(bits as i32) + 8) {
                    break;
                }
            }
            z
        })
        .collect()
}

fn fmt_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", fmt_rational(c))?,
                1 => write!(f, "({})t", fmt_rational(c))?,
                _ => write!(f, "({})t^{}", fmt_rational(c), k)?,
            }
        }
        Ok(())
    }
}

/// Element of `Q(t)`, stored as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::Argument("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (n, d) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let l = d.lead().recip();
        Ok(RationalFunction { num: n.scale(&l), den: d.scale(&l) })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        RationalFunction::new(p, Poly::one()).expect("nonzero denominator")
    }

    pub fn constant(c: BigRational) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn t() -> RationalFunction {
        RationalFunction::from_poly(Poly::t())
    }

    /// `c * prod (t - a_i)^{e_i}`.
    pub fn from_factors(c: BigRational, factors: &[(BigRational, i32)]) -> RationalFunction {
        let mut num = Poly::constant(c);
        let mut den = Poly::one();
        for (a, e) in factors {
            let lin = Poly::linear(a);
            if *e >= 0 {
                num = num.mul(&lin.pow(*e as u32));
            } else {
                den = den.mul(&lin.pow(e.unsigned_abs()));
            }
        }
        RationalFunction::new(num, den).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn div(&self, o: &RationalFunction) -> Result<RationalFunction> {
        if o.is_zero() {
            return Err(Error::ZeroFunction);
        }
        RationalFunction::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RationalFunction::new(n, self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalFunction) -> RationalFunction {
        self.add(&o.neg())
    }

    pub fn pow(&self, k: i32) -> Result<RationalFunction> {
        if k >= 0 {
            let e = k as u32;
            RationalFunction::new(self.num.pow(e), self.den.pow(e))
        } else {
            if self.is_zero() {
                return Err(Error::ZeroFunction);
            }
            let e = k.unsigned_abs();
            RationalFunction::new(self.den.pow(e), self.num.pow(e))
        }
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_complex(&self, z: &Complex) -> Complex {
        self.num.eval_complex(z).div(&self.den.eval_complex(z))
    }

    /// Zeros (positive multiplicity) and poles (negative) over `C`.
    pub fn divisor_complex(&self, bits: u32) -> Vec<(Complex, i64)> {
        let mut out: Vec<(Complex, i64)> =
            self.num.complex_roots(bits).into_iter().map(|(z, k)| (z, k as i64)).collect();
        out.extend(self.den.complex_roots(bits).into_iter().map(|(z, k)| (z, -(k as i64))));
        out
    }

    /// Rational zeros and poles.
    pub fn rational_support(&self) -> Vec<BigRational> {
        let mut s: Vec<BigRational> = self.num.rational_roots().into_iter().map(|r| r.0).collect();
        s.extend(self.den.rational_roots().into_iter().map(|r| r.0));
        s.sort();
        s.dedup();
        s
    }

    /// Whether numerator and denominator split into linear factors over `Q`.
    pub fn splits_over_q(&self) -> bool {
        let deg = |p: &Poly, roots: Vec<(BigRational, u32)>| {
            roots.iter().map(|r| r.1 as usize).sum::<usize>() == p.degree().unwrap_or(0)
        };
        deg(&self.num, self.num.rational_roots()) && deg(&self.den, self.den.rational_roots())
    }

    pub fn parse(s: &str) -> Result<RationalFunction> {
        let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let f = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected '{}' in \"{s}\"", p.chars[p.pos])));
        }
        Ok(f)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                '/' => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                // implicit product, as in `3t^2` or `(1/2)(t-1)`
                '(' | 't' | '0'..='9' | '.' => acc = acc.mul(&self.power()?),
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: i32 = digits.parse().map_err(|_| Error::Parse(format!("bad exponent '{digits}'")))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(RationalFunction::t())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                Ok(RationalFunction::constant(parse_rational(&lit)?))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Parse `p`, `p/q` or a decimal such as `-1.25` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal '{s}'"));
    if let Some((a, b)) = s.split_once('/') {
        let n = parse_rational(a)?;
        let d = parse_rational(b)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if (ip.is_empty() && fp.is_empty()) || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), fp.len());
    let v = BigRational::new(n, d);
    Ok(if neg { -v } else { v })
}

/// A place of `Q(t)`: a rational point or infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ValuationPoint {
    Finite(BigRational),
    Infinity,
}

impl ValuationPoint {
    pub fn parse(s: &str) -> Result<ValuationPoint> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ValuationPoint::Infinity),
            other => Ok(ValuationPoint::Finite(parse_rational(other)?)),
        }
    }
}

impl fmt::Display for ValuationPoint {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            ValuationPoint::Finite(a) => write!(f, "{}", fmt_rational(a)),
            ValuationPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Order of vanishing of `f` at `p`.
pub fn order_at(f: &RationalFunction, p: &ValuationPoint) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(match p {
        ValuationPoint::Finite(a) => f.num.multiplicity(a) as i64 - f.den.multiplicity(a) as i64,
        ValuationPoint::Infinity => f.den.degree().unwrap() as i64 - f.num.degree().unwrap() as i64,
    })
}

/// Value at `p` of `f / pi^{ord_p f}` for the uniformiser `pi = t - a`
/// (or `1/t` at infinity).
fn unit_value(f: &RationalFunction, p: &ValuationPoint) -> BigRational {
    match p {
        ValuationPoint::Finite(a) => {
            let strip = |poly: &Poly| {
                let k = poly.multiplicity(a);
                poly.div_rem(&Poly::linear(a).pow(k)).0.eval(a)
            };
            strip(&f.num) / strip(&f.den)
        }
        ValuationPoint::Infinity => f.num.lead() / f.den.lead(),
    }
}

fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    let r = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// `(-1)^{ab} f^b / g^a` at `p`, where `a = ord_p f`, `b = ord_p g`.
pub fn tame_symbol(f: &RationalFunction, g: &RationalFunction, p: &ValuationPoint) -> Result<BigRational> {
    let a = order_at(f, p)?;
    let b = order_at(g, p)?;
    let sign = if (a * b).rem_euclid(2) == 1 { q(-1) } else { q(1) };
    Ok(sign * rational_pow(&unit_value(f, p), b) / rational_pow(&unit_value(g, p), a))
}

/// Product of the tame symbols over every zero and pole of `f` and `g`
/// and the point at infinity. Both functions must split over `Q`.
pub fn tame_product(f: &RationalFunction, g: &RationalFunction) -> Result<BigRational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !f.splits_over_q() || !g.splits_over_q() {
        return Err(Error::Domain("functions must split into linear factors over Q".into()));
    }
    let mut pts: Vec<BigRational> = f.rational_support();
    pts.extend(g.rational_support());
    pts.sort();
    pts.dedup();
    let mut acc = BigRational::one();
    for a in pts {
        acc *= tame_symbol(f, g, &ValuationPoint::Finite(a))?;
    }
    acc *= tame_symbol(f, g, &ValuationPoint::Infinity)?;
    Ok(acc)
}

/// A class in `C / (2 pi i)^2 Z`.
#[derive(Clone, Debug)]
pub struct RegulatorValue {
    pub representative: Complex,
    /// Representative with real part in `(-2 pi^2, 2 pi^2]`.
    pub normalized: Complex,
}

impl RegulatorValue {
    pub fn new(rep: Complex) -> RegulatorValue {
        let bits = rep.prec();
        let period = Real::pi(bits).square().mul_2exp(2);
        let k = (&rep.re / &period).to_f64().round();
        let mut re = &rep.re - &period.mul_i64(k as i64);
        let half = period.mul_2exp(-1);
        if re > half {
            re = &re - &period;
        } else if re <= -&half {
            re = &re + &period;
        }
        let normalized = Complex::new(re, rep.im.clone());
        RegulatorValue { representative: rep, normalized }
    }

    /// Distance from the lattice `(2 pi i)^2 Z`.
    pub fn lattice_distance(&self) -> f64 {
        self.normalized.abs_f64()
    }

    /// `exp(I / 2 pi i)`, well defined on the class.
    pub fn exponential(&self) -> Complex {
        self.representative.div(&Complex::two_pi_i(self.representative.prec())).exp()
    }

    pub fn distance(&self, other: &RegulatorValue) -> f64 {
        RegulatorValue::new(&self.representative - &other.representative).lattice_distance()
    }
}

/// `I(f, g, loop)` for a closed loop avoiding the zeros and poles of `f`
/// and `g`; principal logarithms are taken at the basepoint.
pub fn heisenberg_holonomy(
    f: &RationalFunction,
    g: &RationalFunction,
    lp: &Path,
    prec: &PrecisionConfig,
) -> Result<RegulatorValue> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !lp.is_closed() {
        return Err(Error::Argument("holonomy needs a closed loop".into()));
    }
    let bits = prec.bits();
    let p = lp.basepoint.round_to(bits);
    let fp = f.eval_complex(&p);
    let gp = g.eval_complex(&p);
    let tiny = 2f64.powi(-(bits as i32) / 2);
    for v in [&fp, &gp] {
        if !(v.abs_f64() > tiny && v.abs_f64().is_finite()) {
            return Err(Error::Domain("zero or pole at the basepoint".into()));
        }
    }
    let df = LogForm::dlog(f.clone());
    let dg = LogForm::dlog(g.clone());
    let words = [
        FormWord::new(vec![df.clone(), dg.clone()]),
        FormWord::new(vec![df]),
        FormWord::new(vec![dg]),
    ];
    let v = iterated_integrals(&words, lp, prec)?;
    let rep = &(&v[0] - &(&gp.ln() * &v[1])) + &(&fp.ln() * &v[2]);
    Ok(RegulatorValue::new(rep))
}

/// Small positively oriented loop about `p` in the local coordinate, free
/// of the other zeros and poles of `f` and `g`.
pub fn local_loop(f: &RationalFunction, g: &RationalFunction, p: &ValuationPoint, bits: u32) -> Path {
    let mut pts: Vec<Complex> = f.divisor_complex(bits).into_iter().map(|r| r.0).collect();
    pts.extend(g.divisor_complex(bits).into_iter().map(|r| r.0));
    let tau = Real::pi(bits).mul_2exp(1);
    let zero = Real::zero(bits);
    match p {
        ValuationPoint::Finite(a) => {
            let center = Complex::from_real(Real::from_rational(a, bits));
            let others = pts
                .iter()
                .map(|z| (z - &center).abs_f64())
                .filter(|&d| d > 2f64.powi(-(bits as i32) / 2))
                .fold(f64::INFINITY, f64::min);
            let r = (others / 2.0).min(0.5);
            let arc = PathSegment::arc(center, Real::from_f64(r, bits), zero, tau);
            Path::from_segments(arc.start(), vec![arc]).expect("arc is continuous")
        }
        ValuationPoint::Infinity => {
            let far = pts.iter().map(|z| z.abs_f64()).fold(1.0, f64::max);
            let r = (2.0 * far).ceil();
            // clockwise in t is counterclockwise in 1/t
            let arc = PathSegment::arc(Complex::zero(bits), Real::from_f64(r, bits), zero, -tau);
            Path::from_segments(arc.start(), vec![arc]).expect("arc is continuous")
        }
    }
}

/// `(exp(I / 2 pi i), tame symbol)` for a small loop about `p`.
pub fn holonomy_vs_tame(
    f: &RationalFunction,
    g: &RationalFunction,
    p: &ValuationPoint,
    prec: &PrecisionConfig,
) -> Result<(Complex, BigRational)> {
    let tame = tame_symbol(f, g, p)?;
    let lp = local_loop(f, g, p, prec.bits());
    let hol = heisenberg_holonomy(f, g, &lp, prec)?;
    Ok((hol.exponential(), tame))
}

/// Distance of `I(1 - t, t, loop)` from the lattice.
pub fn steinberg_residual(lp: &Path, prec: &PrecisionConfig) -> Result<f64> {
    let t = RationalFunction::t();
    let one_minus = RationalFunction::constant(BigRational::one()).sub(&t);
    Ok(heisenberg_holonomy(&one_minus, &t, lp, prec)?.lattice_distance())
}

/// Rational functions as exponent vectors over their rational zeros and
/// poles: `c * prod (t - a)^e`.
pub fn factor_table(f: &RationalFunction) -> Result<(BigRational, BTreeMap<BigRational, i64>)> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !f.splits_over_q() {
        return Err(Error::Domain("function does not split over Q".into()));
    }
    let mut m = BTreeMap::new();
    for a in f.rational_support() {
        let e = order_at(f, &ValuationPoint::Finite(a.clone()))?;
        m.insert(a, e);
    }
    Ok((f.num.lead() / f.den.lead(), m))
}
