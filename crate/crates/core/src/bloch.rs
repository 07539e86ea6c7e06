//! Scissors-congruence combinations, the map `[x] -> (1-x) ^ x` into
//! `Lambda^2 Q^*`, the function `rho`, cross ratios and ideal
//! tetrahedron volumes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::complex::Complex;
use crate::numerics::real::Real;
use crate::numerics::PrecisionConfig;
use crate::polylog::{d2, row0_along, standard_path};
use crate::regulator::parse_rational;

/// A point of `P^1(C)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjectivePoint {
    Finite(Complex),
    Infinity,
}

impl ProjectivePoint {
    pub fn parse(s: &str, bits: u32) -> Result<ProjectivePoint> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ProjectivePoint::Infinity),
            t => Complex::parse(t, bits)
                .map(ProjectivePoint::Finite)
                .ok_or_else(|| Error::Parse(format!("bad point '{t}'"))),
        }
    }

    /// Homogeneous coordinates `(z : 1)` or `(1 : 0)`.
    fn homogeneous(&self, bits: u32) -> (Complex, Complex) {
        match self {
            ProjectivePoint::Finite(z) => (z.round_to(bits), Complex::one(bits)),
            ProjectivePoint::Infinity => (Complex::one(bits), Complex::zero(bits)),
        }
    }

    pub fn finite(&self) -> Option<&Complex> {
        match self {
            ProjectivePoint::Finite(z) => Some(z),
            ProjectivePoint::Infinity => None,
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(z) => write!(f, "{}", z.to_decimal(20)),
            ProjectivePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Cross ratio `(a0 - a2)(a1 - a3) / ((a0 - a3)(a1 - a2))`, normalised so
/// that `[z : 1 : 0 : inf] = z`.
pub fn cross_ratio(pts: &[ProjectivePoint; 4], bits: u32) -> Result<ProjectivePoint> {
    let h: Vec<(Complex, Complex)> = pts.iter().map(|p| p.homogeneous(bits)).collect();
    let det = |i: usize, j: usize| &(&h[i].0 * &h[j].1) - &(&h[i].1 * &h[j].0);
    let tiny = 2f64.powi(-(bits as i32) + 16);
    let ds = [det(0, 2), det(1, 3), det(0, 3), det(1, 2), det(0, 1), det(2, 3)];
    if ds.iter().any(|d| d.abs_f64() <= tiny) {
        return Err(Error::CoincidentPoints);
    }
    let num = &ds[0] * &ds[1];
    let den = &ds[2] * &ds[3];
    Ok(ProjectivePoint::Finite(num.div(&den)))
}

/// `D2` of the cross ratio: the volume of the ideal tetrahedron.
pub fn tetra_volume(pts: &[ProjectivePoint; 4], prec: &PrecisionConfig) -> Result<Real> {
    match cross_ratio(pts, prec.bits())? {
        ProjectivePoint::Finite(z) => d2(&z, prec),
        ProjectivePoint::Infinity => Ok(Real::zero(prec.bits())),
    }
}

fn omit(pts: &[ProjectivePoint; 5], j: usize) -> [ProjectivePoint; 4] {
    let v: Vec<ProjectivePoint> = pts.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, p)| p.clone()).collect();
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

/// Difference between the three-piece and two-piece decompositions of
/// the ideal polyhedron on five points:
/// `|V(1234) + V(0134) + V(0123) - V(0234) - V(0124)|`.
pub fn polyhedron_check(pts: &[ProjectivePoint; 5], prec: &PrecisionConfig) -> Result<f64> {
    let v: Vec<Real> = (0..5).map(|j| tetra_volume(&omit(pts, j), prec)).collect::<Result<_>>()?;
    let three = &(&v[0] + &v[2]) + &v[4];
    let two = &v[1] + &v[3];
    Ok((&three - &two).abs().to_f64())
}

/// Field operations used to build five-term elements.
pub trait BlochField: Clone + PartialEq + fmt::Debug {
    fn one_like(&self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_div(&self, o: &Self) -> Self;
    fn near_zero(&self) -> bool;
}

impl BlochField for BigRational {
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_div(&self, o: &Self) -> Self {
        self / o
    }
    fn near_zero(&self) -> bool {
        self.is_zero()
    }
}

impl BlochField for Complex {
    fn one_like(&self) -> Self {
        Complex::one(self.prec())
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_div(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn near_zero(&self) -> bool {
        self.abs_f64() <= 2f64.powi(-(self.prec() as i32) / 2)
    }
}

/// Integer combination of symbols `[x]` with `x` outside `{0, 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochCombo<T> {
    pub terms: Vec<(i64, T)>,
}

impl<T: BlochField> BlochCombo<T> {
    pub fn new() -> BlochCombo<T> {
        BlochCombo { terms: Vec::new() }
    }

    pub fn push(&mut self, c: i64, x: T) -> Result<()> {
        let one = x.one_like();
        if x.near_zero() || x.f_sub(&one).near_zero() {
            return Err(Error::Degenerate(format!("symbol [{x:?}] is 0 or 1")));
        }
        self.terms.push((c, x));
        Ok(())
    }

    pub fn add(&self, o: &BlochCombo<T>) -> BlochCombo<T> {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        BlochCombo { terms }
    }
}

impl<T: BlochField> Default for BlochCombo<T> {
    fn default() -> Self {
        BlochCombo::new()
    }
}

impl BlochCombo<BigRational> {
    /// Merge equal symbols and drop zero coefficients.
    pub fn normalized(&self) -> BlochCombo<BigRational> {
        let mut m: BTreeMap<BigRational, i64> = BTreeMap::new();
        for (c, x) in &self.terms {
            *m.entry(x.clone()).or_default() += c;
        }
        BlochCombo { terms: m.into_iter().filter(|(_, c)| *c != 0).map(|(x, c)| (c, x)).collect() }
    }

    /// Lines `<coeff> <rational>`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<BlochCombo<BigRational>> {
        let mut out = BlochCombo::new();
        for (c, lit) in combo_lines(text)? {
            out.push(c, parse_rational(lit)?)?;
        }
        Ok(out)
    }

    pub fn to_complex(&self, bits: u32) -> BlochCombo<Complex> {
        BlochCombo {
            terms: self.terms.iter().map(|(c, x)| (*c, Complex::from_real(Real::from_rational(x, bits)))).collect(),
        }
    }
}

impl BlochCombo<Complex> {
    /// Lines `<coeff> <rational or complex literal>`.
    pub fn parse_complex(text: &str, bits: u32) -> Result<BlochCombo<Complex>> {
        let mut out = BlochCombo::new();
        for (c, lit) in combo_lines(text)? {
            let x = match parse_rational(lit) {
                Ok(q) => Complex::from_real(Real::from_rational(&q, bits)),
                Err(_) => Complex::parse(lit, bits).ok_or_else(|| Error::Parse(format!("bad literal '{lit}'")))?,
            };
            out.push(c, x)?;
        }
        Ok(out)
    }
}

fn combo_lines(text: &str) -> Result<Vec<(i64, &str)>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (c, lit) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("expected '<coeff> <value>', got '{line}'")))?;
        let c: i64 = c.parse().map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))?;
        out.push((c, lit.trim()));
    }
    Ok(out)
}

impl<T: fmt::Display> fmt::Display for BlochCombo<T> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        for (c, x) in &self.terms {
            writeln!(f, "{c} {x}")?;
        }
        Ok(())
    }
}

/// `[x] - [y] + [y/x] - [(1-y)/(1-x)] + [(1-1/y)/(1-1/x)]`.
pub fn five_term_element<T: BlochField>(x: &T, y: &T) -> Result<BlochCombo<T>> {
    let one = x.one_like();
    let bad = |v: &T| v.near_zero() || v.f_sub(&one).near_zero();
    if bad(x) || bad(y) || x.f_sub(y).near_zero() {
        return Err(Error::Degenerate("x, y must be distinct and outside {0, 1}".into()));
    }
    let args = [
        (1, x.clone()),
        (-1, y.clone()),
        (1, y.f_div(x)),
        (-1, one.f_sub(y).f_div(&one.f_sub(x))),
        (1, one.f_sub(&one.f_div(y)).f_div(&one.f_sub(&one.f_div(x)))),
    ];
    let mut out = BlochCombo::new();
    for (c, v) in args {
        out.push(c, v)?;
    }
    Ok(out)
}

/// `sum c D2(x)`.
pub fn d2_eval(c: &BlochCombo<Complex>, prec: &PrecisionConfig) -> Result<Real> {
    let mut acc = Real::zero(prec.bits());
    for (k, x) in &c.terms {
        acc = &acc + &d2(x, prec)?.mul_i64(*k);
    }
    Ok(acc)
}

/// Basis symbol of `Q^*`: the sign or a prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    MinusOne,
    Prime(BigUint),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Generator::MinusOne => write!(f, "(-1)"),
            Generator::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn factor_uint(n: &BigUint, out: &mut BTreeMap<Generator, i64>, sign: i64) {
    let mut n = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            *out.entry(Generator::Prime(p.clone())).or_default() += sign;
            n /= &p;
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigUint::one() {
        *out.entry(Generator::Prime(n)).or_default() += sign;
    }
}

/// Exponent vector of a nonzero rational over `{-1} u primes`, the sign
/// exponent taken mod 2.
pub fn factor_rational(x: &BigRational) -> BTreeMap<Generator, i64> {
    assert!(!x.is_zero(), "zero has no factorization");
    let mut out = BTreeMap::new();
    if x.is_negative() {
        out.insert(Generator::MinusOne, 1);
    }
    factor_uint(&x.numer().abs().to_biguint().expect("nonnegative"), &mut out, 1);
    factor_uint(&x.denom().abs().to_biguint().expect("nonnegative"), &mut out, -1);
    out.retain(|_, e| *e != 0);
    out
}

/// Element of `Lambda^2 Q^*` in normal form: keys `(a, b)` with `a < b`;
/// coefficients of `(-1) ^ p` live in `Z/2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WedgeElement {
    pub terms: BTreeMap<(Generator, Generator), BigInt>,
}

impl WedgeElement {
    pub fn zero() -> WedgeElement {
        WedgeElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c (a ^ b)`.
    pub fn add_pair(&mut self, a: &Generator, b: &Generator, c: &BigInt) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, c) = if a < b { ((a.clone(), b.clone()), c.clone()) } else { ((b.clone(), a.clone()), -c) };
        let torsion = key.0 == Generator::MinusOne;
        let e = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if torsion {
            *e = e.mod_floor(&BigInt::from(2));
        }
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &WedgeElement) -> WedgeElement {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_pair(a, b, c);
        }
        r
    }

    pub fn scale(&self, k: i64) -> WedgeElement {
        let mut r = WedgeElement::zero();
        for ((a, b), c) in &self.terms {
            r.add_pair(a, b, &(c * k));
        }
        r
    }

    /// `x ^ y` expanded bilinearly.
    pub fn wedge(x: &BigRational, y: &BigRational) -> WedgeElement {
        let fx = factor_rational(x);
        let fy = factor_rational(y);
        let mut r = WedgeElement::zero();
        for (a, ea) in &fx {
            for (b, eb) in &fy {
                r.add_pair(a, b, &BigInt::from(ea * eb));
            }
        }
        r
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{a}^{b}")?;
        }
        Ok(())
    }
}

/// `sum c (1 - x) ^ x`.
pub fn wedge_map(c: &BlochCombo<BigRational>) -> WedgeElement {
    let one = BigRational::one();
    let mut acc = WedgeElement::zero();
    for (k, x) in &c.terms {
        acc = acc.add(&WedgeElement::wedge(&(&one - x), x).scale(*k));
    }
    acc
}

/// Formal sum `sum c_k (a_k ^ b_k)` in `Lambda^2 C`, unnormalised.
#[derive(Clone, Debug, Default)]
pub struct FormalWedge {
    pub terms: Vec<(BigRational, Complex, Complex)>,
}

impl FormalWedge {
    pub fn add(&self, o: &FormalWedge) -> FormalWedge {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        FormalWedge { terms }
    }

    pub fn scale(&self, k: i64) -> FormalWedge {
        let k = BigRational::from_integer(k.into());
        FormalWedge { terms: self.terms.iter().map(|(c, a, b)| (c * &k, a.clone(), b.clone())).collect() }
    }
}

/// `rho(x) = 1/2 [log x ^ log(1-x) + 2 pi i ^ (Li2(1-x) - Li2(x) - pi^2/6) / (2 pi i)]`
/// with the values reached along the standard paths from `1/2`.
pub fn rho(x: &Complex, prec: &PrecisionConfig) -> Result<FormalWedge> {
    let bits = prec.bits();
    let x = x.round_to(bits);
    let one = Complex::one(bits);
    let y = &one - &x;
    if x.is_zero() || y.is_zero() {
        return Err(Error::Domain("rho is undefined at 0 and 1".into()));
    }
    let li2 = |z: &Complex| -> Result<Complex> { Ok(row0_along(&standard_path(z, bits), 2, prec)?[2].clone()) };
    let tpi = Complex::two_pi_i(bits);
    let pi = Real::pi(bits);
    let zeta2 = Complex::from_real(pi.square().div_u64(6));
    let w = (&(&li2(&y)? - &li2(&x)?) - &zeta2).div(&tpi);
    let half = BigRational::new(1.into(), 2.into());
    Ok(FormalWedge { terms: vec![(half.clone(), x.ln(), y.ln()), (half, tpi, w)] })
}

/// `beta(a, b) = Re a Im b - Im a Re b` applied termwise.
pub fn rho_probe(w: &FormalWedge) -> Real {
    let bits = w.terms.first().map(|t| t.1.prec()).unwrap_or(64);
    let mut acc = Real::zero(bits);
    for (c, a, b) in &w.terms {
        let beta = &(&a.re * &b.im) - &(&a.im * &b.re);
        acc = &acc + &(&beta * &Real::from_rational(c, bits));
    }
    acc
}

/// Parse a whitespace or comma separated list of points.
pub fn parse_points(s: &str, bits: u32) -> Result<Vec<ProjectivePoint>> {
    s.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| ProjectivePoint::parse(t, bits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::reference::catalan_reference;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn fin(re: f64, im: f64, bits: u32) -> ProjectivePoint {
        ProjectivePoint::Finite(Complex::from_f64(re, im, bits))
    }

    #[test]
    fn five_term_two_three() {
        let e = five_term_element(&r(2, 1), &r(3, 1)).unwrap();
        let args: Vec<(i64, BigRational)> = e.terms.clone();
        assert_eq!(
            args,
            vec![(1, r(2, 1)), (-1, r(3, 1)), (1, r(3, 2)), (-1, r(2, 1)), (1, r(4, 3))]
        );
        assert_eq!(e.normalized().terms, vec![(1, r(4, 3)), (1, r(3, 2)), (-1, r(3, 1))]);
        // the displayed relation is killed only up to the torsion class (-1) ^ (x/y)
        let w = wedge_map(&e);
        assert_eq!(w, WedgeElement::wedge(&r(-1, 1), &r(2, 3)));
        assert!(w.scale(2).is_zero());
        assert!(five_term_element(&r(2, 1), &r(2, 1)).is_err());
        assert!(five_term_element(&r(2, 1), &r(1, 1)).is_err());
    }

    #[test]
    fn wedge_examples() {
        let mut c = BlochCombo::new();
        c.push(1, r(2, 1)).unwrap();
        let w = wedge_map(&c);
        let mut e = WedgeElement::zero();
        e.add_pair(&Generator::MinusOne, &Generator::Prime(2u32.into()), &BigInt::one());
        assert_eq!(w, e);
        let mut c = BlochCombo::new();
        c.push(1, r(-1, 1)).unwrap();
        // 2 ^ (-1) = -((-1) ^ 2), which is (-1) ^ 2 again mod 2
        assert_eq!(wedge_map(&c), e);
        assert!(e.add(&e).is_zero());
    }

    #[test]
    fn factorization() {
        let f = factor_rational(&r(-12, 35));
        assert_eq!(f[&Generator::MinusOne], 1);
        assert_eq!(f[&Generator::Prime(2u32.into())], 2);
        assert_eq!(f[&Generator::Prime(7u32.into())], -1);
    }

    #[test]
    fn cross_ratio_normalisation() {
        let bits = 128;
        let z = Complex::from_f64(0.3, 1.7, bits);
        let pts = [ProjectivePoint::Finite(z.clone()), fin(1.0, 0.0, bits), fin(0.0, 0.0, bits), ProjectivePoint::Infinity];
        assert_eq!(cross_ratio(&pts, bits).unwrap(), ProjectivePoint::Finite(z));
        let bad = [fin(1.0, 0.0, bits), fin(1.0, 0.0, bits), fin(0.0, 0.0, bits), ProjectivePoint::Infinity];
        assert_eq!(cross_ratio(&bad, bits), Err(Error::CoincidentPoints));
    }

    #[test]
    fn omitted_cross_ratios_give_five_term_arguments() {
        let bits = 192;
        let x = Complex::from_f64(0.7, -1.3, bits);
        let y = Complex::from_f64(-2.1, 0.4, bits);
        let pts = [
            ProjectivePoint::Finite(y.clone()),
            ProjectivePoint::Finite(x.clone()),
            fin(1.0, 0.0, bits),
            fin(0.0, 0.0, bits),
            ProjectivePoint::Infinity,
        ];
        let e = five_term_element(&x, &y).unwrap();
        for j in 0..5 {
            let cr = cross_ratio(&omit(&pts, j), bits).unwrap();
            let v = cr.finite().unwrap();
            assert!((v - &e.terms[j].1).abs_f64() < 1e-50, "slot {j}");
        }
    }

    #[test]
    fn volumes() {
        let prec = PrecisionConfig::default();
        let bits = prec.bits();
        let pts = [fin(0.0, 1.0, bits), fin(1.0, 0.0, bits), fin(0.0, 0.0, bits), ProjectivePoint::Infinity];
        let v = tetra_volume(&pts, &prec).unwrap();
        assert!((&v - &catalan_reference(&prec)).abs().to_f64() < 1e-28);
        let swapped = [pts[1].clone(), pts[0].clone(), pts[2].clone(), pts[3].clone()];
        let w = tetra_volume(&swapped, &prec).unwrap();
        assert!((&v + &w).abs().to_f64() < 1e-28);
        let flat = [fin(0.25, 0.0, bits), fin(1.0, 0.0, bits), fin(0.0, 0.0, bits), ProjectivePoint::Infinity];
        assert!(tetra_volume(&flat, &prec).unwrap().abs().to_f64() < 1e-40);
    }

    #[test]
    fn polyhedron_small() {
        let prec = PrecisionConfig::default();
        let bits = prec.bits();
        let pts = [fin(0.3, 0.9, bits), fin(-1.2, 0.4, bits), fin(2.0, -0.7, bits), fin(0.1, -1.5, bits), ProjectivePoint::Infinity];
        assert!(polyhedron_check(&pts, &prec).unwrap() < 1e-27);
    }

    #[test]
    fn probe_properties() {
        let prec = PrecisionConfig::default();
        let bits = prec.bits();
        let a = Complex::from_f64(1.5, -0.25, bits);
        let w = FormalWedge { terms: vec![(r(1, 1), a.clone(), a)] };
        assert!(rho_probe(&w).is_zero());
        let x = Complex::from_f64(0.4, 0.0, bits);
        let p = rho_probe(&rho(&x, &prec).unwrap());
        assert!(p.abs().to_f64() < 1e-28);
        assert!(rho(&Complex::one(bits), &prec).is_err());
    }

    #[test]
    fn combo_text_round_trip() {
        let c = BlochCombo::parse("2 3/4\n-1 5 # five\n\n1 -0.5\n").unwrap();
        assert_eq!(c.terms, vec![(2, r(3, 4)), (-1, r(5, 1)), (1, r(-1, 2))]);
        assert_eq!(BlochCombo::parse(&c.to_string()).unwrap(), c);
        assert!(BlochCombo::parse("1 1").is_err());
        let z = BlochCombo::parse_complex("1 0.5+2i\n3 7/2", 128).unwrap();
        assert_eq!(z.terms.len(), 2);
    }
}
