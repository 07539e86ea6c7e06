//! Exact monodromy of `Lambda`, residues and local logarithms, the weight
//! and Hodge filtrations, limit period matrices and extension matrices.

use crate::error::{Error, Result};
use crate::numerics::complex::Complex;
use crate::numerics::matrix::CMatrix;
use crate::numerics::real::Real;
use crate::numerics::PrecisionConfig;
use crate::paths::{word_to_path, Letter, MonodromyWord, Path};
use crate::polylog::{continue_branch, principal_lambda};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Square matrix of size `n+1` with rational entries.
///
/// The numeric value is `(2 pi i)^twist` times the entries. Monodromy
/// matrices act directly on the rows of `Lambda` and have twist 0; local
/// monodromy logarithms `N_P = log(T_P) / 2 pi i` carry twist -1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    pub n: usize,
    pub entries: Vec<BigRational>,
    pub twist: i32,
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> ExactMatrix {
        ExactMatrix { n, entries: vec![BigRational::zero(); (n + 1) * (n + 1)], twist: 0 }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n);
        for i in 0..=n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * (self.n + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        let s = self.n + 1;
        self.entries[i * s + j] = v;
    }

    pub fn with_twist(mut self, twist: i32) -> ExactMatrix {
        self.twist = twist;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let s = self.n + 1;
        let mut out = ExactMatrix::zeros(self.n);
        for i in 0..s {
            for k in 0..s {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * s + j] += a * b;
                    }
                }
            }
        }
        out.twist = self.twist + other.twist;
        out
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        ExactMatrix { n: self.n, entries, twist: self.twist }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        ExactMatrix { n: self.n, entries, twist: self.twist }
    }

    pub fn scale(&self, c: &BigRational) -> ExactMatrix {
        ExactMatrix { n: self.n, entries: self.entries.iter().map(|a| a * c).collect(), twist: self.twist }
    }

    pub fn neg(&self) -> ExactMatrix {
        self.scale(&-BigRational::one())
    }

    /// Lie bracket `AB - BA`.
    pub fn bracket(&self, other: &ExactMatrix) -> ExactMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u32 + 1).is_zero()
    }

    pub fn is_unipotent(&self) -> bool {
        self.sub(&ExactMatrix::identity(self.n)).is_nilpotent()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        let s = self.n + 1;
        let mut a = self.clone();
        let mut inv = ExactMatrix::identity(self.n);
        for c in 0..s {
            let p = (c..s).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..s {
                    a.entries.swap(p * s + j, c * s + j);
                    inv.entries.swap(p * s + j, c * s + j);
                }
            }
            let r = a.get(c, c).recip();
            for j in 0..s {
                a.entries[c * s + j] *= &r;
                inv.entries[c * s + j] *= &r;
            }
            for i in 0..s {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..s {
                    let t = &f * a.get(c, j);
                    a.entries[i * s + j] -= t;
                    let t = &f * inv.get(c, j);
                    inv.entries[i * s + j] -= t;
                }
            }
        }
        inv.twist = -self.twist;
        Some(inv)
    }

    /// `exp` of a nilpotent matrix (finite sum).
    pub fn exp_nilpotent(&self) -> ExactMatrix {
        assert!(self.is_nilpotent(), "exp of non-nilpotent matrix");
        let mut acc = ExactMatrix::identity(self.n);
        let mut term = ExactMatrix::identity(self.n);
        for k in 1..=self.n + 1 {
            term = term.mul(self).scale(&q(1, k as i64));
            acc = acc.add(&term);
        }
        acc.twist = 0;
        acc
    }

    /// `log` of a unipotent matrix (finite sum).
    pub fn log_unipotent(&self) -> ExactMatrix {
        let id = ExactMatrix::identity(self.n);
        let x = self.sub(&id);
        assert!(x.is_nilpotent(), "log of non-unipotent matrix");
        let mut acc = ExactMatrix::zeros(self.n);
        let mut term = id;
        for k in 1..=self.n + 1 {
            term = term.mul(&x);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&term.scale(&q(sign, k as i64)));
        }
        acc.twist = 0;
        acc
    }

    /// Numeric value `(2 pi i)^twist * entries`.
    pub fn to_numeric(&self, bits: u32) -> CMatrix {
        let s = self.n + 1;
        let tpi = Complex::two_pi_i(bits);
        let factor = if self.twist >= 0 { tpi.powi(self.twist as u32) } else { tpi.powi((-self.twist) as u32).recip() };
        CMatrix::from_fn(s, s, |i, j| factor.scale(&Real::from_rational(self.get(i, j), bits)))
    }

    /// Recover rational entries with denominators at most `max_den` from a
    /// numeric matrix with the given twist; `None` if an entry is not
    /// within `tol` of such a rational.
    pub fn from_numeric(m: &CMatrix, twist: i32, max_den: u64, tol: f64) -> Option<ExactMatrix> {
        assert_eq!(m.rows, m.cols);
        let bits = m.prec();
        let tpi = Complex::two_pi_i(bits);
        let factor = if twist >= 0 { tpi.powi(twist as u32).recip() } else { tpi.powi((-twist) as u32) };
        let n = m.rows - 1;
        let mut out = ExactMatrix::zeros(n);
        out.twist = twist;
        for i in 0..=n {
            for j in 0..=n {
                let v = m.get(i, j) * &factor;
                if v.im.abs().to_f64() > tol {
                    return None;
                }
                let r = best_rational(&v.re, max_den);
                if (&Real::from_rational(&r, bits) - &v.re).abs().to_f64() > tol {
                    return None;
                }
                out.set(i, j, r);
            }
        }
        Some(out)
    }
}

/// Closest rational with bounded denominator, by continued fractions.
fn best_rational(x: &Real, max_den: u64) -> BigRational {
    let bits = x.prec();
    let mut best = BigRational::zero();
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut y = x.clone();
    for _ in 0..64 {
        let a = y.to_f64().floor();
        if !a.is_finite() || a.abs() > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > BigInt::from(max_den) {
            break;
        }
        best = BigRational::new(p2.clone(), q2.clone());
        let frac = &y - &Real::from_f64(a, bits);
        if frac.abs().to_f64() < 1e-60 {
            break;
        }
        y = frac.recip();
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    best
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let w = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        let s = self.n + 1;
        for i in 0..s {
            let row: Vec<String> = (0..s).map(|j| format!("{:>w$}", cells[i * s + j])).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        if self.twist != 0 {
            writeln!(f, "(times (2 pi i)^{})", self.twist)?;
        }
        Ok(())
    }
}

/// Monodromy matrix of one generator.
pub fn generator_matrix(letter: Letter, n: usize) -> ExactMatrix {
    match letter {
        Letter::S1 | Letter::S1Inv => {
            let mut m = ExactMatrix::identity(n);
            if n >= 1 {
                m.set(0, 1, q(if letter == Letter::S1 { -1 } else { 1 }, 1));
            }
            m
        }
        Letter::S0 => {
            let mut m = ExactMatrix::identity(n);
            let mut fact = BigInt::one();
            let mut inv_fact = vec![BigRational::one()];
            for k in 1..=n {
                fact *= k;
                inv_fact.push(BigRational::new(BigInt::one(), fact.clone()));
            }
            for i in 1..=n {
                for j in i..=n {
                    m.set(i, j, inv_fact[j - i].clone());
                }
            }
            m
        }
        Letter::S0Inv => generator_matrix(Letter::S0, n).inverse().expect("unipotent"),
    }
}

/// Product of generator matrices along the word.
pub fn monodromy_exact(word: &MonodromyWord, n: usize) -> ExactMatrix {
    word.letters.iter().fold(ExactMatrix::identity(n), |acc, &l| acc.mul(&generator_matrix(l, n)))
}

/// `Lambda_end * Lambda(1/2)^{-1}` after transport around the word.
pub fn monodromy_numeric(word: &MonodromyWord, n: usize, prec: &PrecisionConfig) -> Result<CMatrix> {
    let bits = prec.bits();
    let start = principal_lambda(&Complex::from_f64(0.5, 0.0, bits), n, prec)?;
    let end = continue_branch(&start, &word_to_path(word, bits), prec)?;
    let inv = start.lambda.inverse().ok_or_else(|| Error::Degenerate("Lambda(1/2) is singular".into()))?;
    Ok(end.lambda.matmul(&inv))
}

/// Residues of the connection at 0, 1 and infinity (the last in the
/// chart `w = 1/z`).
pub fn connection_residues(n: usize) -> (ExactMatrix, ExactMatrix, ExactMatrix) {
    let mut r0 = ExactMatrix::zeros(n);
    for j in 1..n {
        r0.set(j, j + 1, BigRational::one());
    }
    let mut r1 = ExactMatrix::zeros(n);
    if n >= 1 {
        r1.set(0, 1, q(-1, 1));
    }
    let rinf = r0.add(&r1).neg();
    (r0, r1, rinf)
}

/// `N_P = log(T_P) / (2 pi i)`: entries of `log T_P`, twist -1.
pub fn local_log(letter: Letter, n: usize) -> ExactMatrix {
    generator_matrix(letter, n).log_unipotent().with_twist(-1)
}

/// Weight and Hodge filtrations on `span{e_0, ..., e_n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationSpec {
    pub n: usize,
}

impl FiltrationSpec {
    pub fn new(n: usize) -> FiltrationSpec {
        FiltrationSpec { n }
    }

    /// First index of `W_l = span{e_f, ..., e_n}`; `n+1` means `W_l = 0`.
    pub fn weight_start(&self, l: i64) -> usize {
        let f = (-l).div_euclid(2) + (-l).rem_euclid(2);
        f.clamp(0, self.n as i64 + 1) as usize
    }

    pub fn weight(&self, l: i64) -> Vec<usize> {
        (self.weight_start(l)..=self.n).collect()
    }

    /// `F^{-p} = span{e_0, ..., e_p}`.
    pub fn hodge(&self, minus_p: i64) -> Vec<usize> {
        let p = (-minus_p).clamp(-1, self.n as i64);
        (0..=p).map(|i| i as usize).collect()
    }

    /// Range of weight indices where the filtration changes.
    pub fn weight_range(&self) -> std::ops::RangeInclusive<i64> {
        -2 * self.n as i64 - 2..=2
    }
}

/// True iff `L` maps `W_l` into `W_{l-2}` for every `l`, with vectors as
/// rows acting by `c -> c L`.
pub fn check_relative_weight(l: &ExactMatrix, w: &FiltrationSpec) -> bool {
    assert_eq!(l.n, w.n, "size mismatch");
    for lev in w.weight_range() {
        let src = w.weight_start(lev);
        let dst = w.weight_start(lev - 2);
        for j in src..=w.n {
            for k in 0..dst.min(w.n + 1) {
                if !l.get(j, k).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Puncture {
    Zero,
    One,
}

impl Puncture {
    pub fn letter(self) -> Letter {
        match self {
            Puncture::Zero => Letter::S0,
            Puncture::One => Letter::S1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimitMhsResult {
    pub puncture: Puncture,
    /// +1 for `d/dz` at 0, -1 for `-d/dz` at 1.
    pub tangent_sign: i32,
    pub n: usize,
    /// Rows are the limits `s_0, ..., s_n` in the frame `e_0, ..., e_n`.
    pub matrix: CMatrix,
    /// Estimated distance of `matrix` from the limit.
    pub residual: f64,
    pub t0: f64,
}

/// Regularised flat frame `exp(-(log t / 2 pi i) L_P) Lambda` at parameter
/// `t` (`t = z` at 0, `t = 1 - z` at 1), reached along the real segment.
fn regularised_frame(p: Puncture, n: usize, t: &Real, prec: &PrecisionConfig) -> Result<CMatrix> {
    let bits = prec.bits();
    let one = Real::one(bits);
    let x = match p {
        Puncture::Zero => Complex::from_real(t.clone()),
        Puncture::One => Complex::from_real(&one - t),
    };
    let half = Complex::from_f64(0.5, 0.0, bits);
    let start = principal_lambda(&half, n, prec)?;
    let lam = if x.abs_f64() <= 0.75 {
        principal_lambda(&x, n, prec)?.lambda
    } else {
        continue_branch(&start, &Path::new(half).line_to(x), prec)?.lambda
    };
    let l = local_log(p.letter(), n);
    let c = Complex::from_real(t.ln()).div(&Complex::two_pi_i(bits));
    let lnum = ExactMatrix { twist: 0, ..l }.to_numeric(bits).scale(&-c);
    // exp of the nilpotent numeric matrix
    let mut e = CMatrix::identity(n + 1, bits);
    let mut term = CMatrix::identity(n + 1, bits);
    for k in 1..=n + 1 {
        term = term.matmul(&lnum).scale(&Complex::one(bits).div_u64(k as u64));
        e = e.add(&term);
    }
    Ok(e.matmul(&lam))
}

/// Exponent `e` of the evaluation point `t0 = 10^-e`: the smallest `e` with
/// `t0 |log t0|^n` well below `tol`, capped so that `1 - t0` still carries
/// `tol` digits at the working precision.
fn limit_exponent(n: usize, prec: &PrecisionConfig) -> i64 {
    let digits = prec.tol_digits() as i64;
    let cap = (prec.bits() as f64 * std::f64::consts::LOG10_2).floor() as i64 - digits;
    let mut e = (prec.working_bits as i64 + 7) / 8;
    while e < cap {
        let log_t = e as f64 * std::f64::consts::LN_10;
        if -(e as f64) + n as f64 * log_t.log10() + 3.0 < -(digits as f64) {
            break;
        }
        e += 1;
    }
    e.min(cap.max(1))
}

/// Limit period matrix at a puncture, evaluated at a small `t0 = 10^-e`
/// chosen from `n` and the tolerance.
pub fn limit_mhs(p: Puncture, n: usize, prec: &PrecisionConfig) -> Result<LimitMhsResult> {
    if n < 1 {
        return Err(Error::Argument("order n must be at least 1".into()));
    }
    let bits = prec.bits();
    let inner = prec.with_tol(prec.target_tol * 1e-2);
    let e = limit_exponent(n, prec);
    let t0 = Real::one(bits).div_by(&Real::from_u64(10, bits).powi(e as u32));
    let s1 = regularised_frame(p, n, &t0, &inner)?;
    let s2 = regularised_frame(p, n, &t0.mul_2exp(1), &inner)?;
    let residual = s1.max_abs_diff(&s2);
    if residual > prec.target_tol {
        return Err(Error::PrecisionTooLow { residual, tol: prec.target_tol });
    }
    Ok(LimitMhsResult {
        puncture: p,
        tangent_sign: if p == Puncture::Zero { 1 } else { -1 },
        n,
        matrix: s1,
        residual,
        t0: t0.to_f64(),
    })
}

/// Period matrix `[[1, lambda], [0, (2 pi i)^m]]` of an extension of
/// `Z(0)` by `Z(m)`.
pub fn ext_class_matrix(lambda: &Complex, m: u32) -> Result<CMatrix> {
    if m < 1 {
        return Err(Error::Argument("m must be at least 1".into()));
    }
    let bits = lambda.prec();
    let mut out = CMatrix::zeros(2, 2, bits);
    out.set(0, 0, Complex::one(bits));
    out.set(0, 1, lambda.clone());
    out.set(1, 1, Complex::two_pi_i(bits).powi(m));
    Ok(out)
}

/// Largest `|entry|` of the exact matrix, as f64 (for reporting).
pub fn max_abs_entry(m: &ExactMatrix) -> f64 {
    m.entries.iter().map(|e| e.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::reference::zeta_reference;

    fn p() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn generators() {
        let m = generator_matrix(Letter::S1, 3);
        let mut e = ExactMatrix::identity(3);
        e.set(0, 1, q(-1, 1));
        assert_eq!(m, e);
        let m = generator_matrix(Letter::S0, 2);
        let mut e = ExactMatrix::identity(2);
        e.set(1, 2, q(1, 1));
        assert_eq!(m, e);
        let m = generator_matrix(Letter::S0, 4);
        assert_eq!(m.get(1, 4), &q(1, 6));
        assert_eq!(m.get(2, 4), &q(1, 2));
        for l in [Letter::S0, Letter::S1] {
            assert_eq!(generator_matrix(l, 5).mul(&generator_matrix(l.inverse(), 5)), ExactMatrix::identity(5));
        }
    }

    #[test]
    fn commutator_by_hand() {
        let w: MonodromyWord = "s0 s1 s0^-1 s1^-1".parse().unwrap();
        let m = monodromy_exact(&w, 2);
        // explicit fourfold product
        let a = generator_matrix(Letter::S0, 2);
        let b = generator_matrix(Letter::S1, 2);
        let expect = a.mul(&b).mul(&a.inverse().unwrap()).mul(&b.inverse().unwrap());
        assert_eq!(m, expect);
        let mut byhand = ExactMatrix::identity(2);
        byhand.set(0, 2, q(1, 1));
        assert_eq!(m, byhand);
        assert!(m.is_unipotent());
        assert_eq!(monodromy_exact(&MonodromyWord::default(), 3), ExactMatrix::identity(3));
    }

    #[test]
    fn numeric_generators() {
        for (w, l) in [("s1", Letter::S1), ("s0", Letter::S0)] {
            let num = monodromy_numeric(&w.parse().unwrap(), 3, &p()).unwrap();
            let ex = generator_matrix(l, 3).to_numeric(256);
            assert!(num.max_abs_diff(&ex) < 1e-25, "{w}");
        }
        let num = monodromy_numeric(&MonodromyWord::default(), 3, &p()).unwrap();
        assert!(num.max_abs_diff(&CMatrix::identity(4, 256)) < 1e-60);
    }

    #[test]
    fn residues() {
        for n in 1..=6 {
            let (r0, r1, ri) = connection_residues(n);
            assert!(r0.is_nilpotent() && r1.is_nilpotent() && ri.is_nilpotent());
            assert!(r0.add(&r1).add(&ri).is_zero());
            assert_eq!(r1.get(0, 1), &q(-1, 1));
        }
    }

    #[test]
    fn residues_match_connection() {
        let bits = 256;
        let conn = crate::polylog::lambda_connection(4, bits);
        let (r0, r1, _) = connection_residues(4);
        assert!(conn.residue(&Complex::zero(bits), bits).max_abs_diff(&r0.to_numeric(bits)) == 0.0);
        assert!(conn.residue(&Complex::one(bits), bits).max_abs_diff(&r1.to_numeric(bits)) == 0.0);
    }

    #[test]
    fn local_logs() {
        let l1 = local_log(Letter::S1, 4);
        let mut e = ExactMatrix::zeros(4);
        e.set(0, 1, q(-1, 1));
        assert_eq!(ExactMatrix { twist: 0, ..l1.clone() }, e);
        assert_eq!(l1.twist, -1);
        let l0 = local_log(Letter::S0, 4);
        let (r0, _, _) = connection_residues(4);
        assert_eq!(l0.entries, r0.entries);
        for l in [Letter::S0, Letter::S1] {
            let ll = local_log(l, 5);
            assert_eq!(ExactMatrix { twist: 0, ..ll }.exp_nilpotent(), generator_matrix(l, 5));
        }
    }

    #[test]
    fn relative_weight() {
        for n in 1..=8 {
            let w = FiltrationSpec::new(n);
            assert!(check_relative_weight(&local_log(Letter::S0, n), &w));
            assert!(check_relative_weight(&local_log(Letter::S1, n), &w));
        }
        let mut bad = ExactMatrix::zeros(3);
        bad.set(3, 0, q(1, 1));
        assert!(!check_relative_weight(&bad, &FiltrationSpec::new(3)));
    }

    #[test]
    fn filtrations() {
        let w = FiltrationSpec::new(3);
        assert_eq!(w.weight(0), vec![0, 1, 2, 3]);
        assert_eq!(w.weight(-2), vec![1, 2, 3]);
        assert_eq!(w.weight(-1), vec![1, 2, 3]);
        assert_eq!(w.weight(-6), vec![3]);
        assert!(w.weight(-7).is_empty());
        assert_eq!(w.hodge(-1), vec![0, 1]);
        assert_eq!(w.hodge(0), vec![0]);
    }

    #[test]
    fn numeric_round_trip() {
        let m = monodromy_exact(&"s0 s1 s0 s0".parse().unwrap(), 4);
        let back = ExactMatrix::from_numeric(&m.to_numeric(256), 0, 1000, 1e-40).unwrap();
        assert_eq!(back, m);
        let l = local_log(Letter::S0, 3);
        let back = ExactMatrix::from_numeric(&l.to_numeric(256), -1, 1000, 1e-40).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn limit_at_zero_is_diagonal() {
        let r = limit_mhs(Puncture::Zero, 3, &p()).unwrap();
        let bits = 256;
        let tpi = Complex::two_pi_i(bits);
        let expect = CMatrix::from_fn(4, 4, |i, j| if i == j { tpi.powi(i as u32) } else { Complex::zero(bits) });
        assert!(r.matrix.max_abs_diff(&expect) < 1e-25);
    }

    #[test]
    fn limit_at_one_has_zeta_row() {
        let r = limit_mhs(Puncture::One, 3, &p()).unwrap();
        assert!(r.matrix.get(0, 1).abs_f64() < 1e-25);
        for k in 2..=3 {
            let z = zeta_reference(k, &p()).unwrap();
            assert!((r.matrix.get(0, k as usize) - &Complex::from_real(z)).abs_f64() < 1e-25);
        }
        assert!(r.residual < 1e-30);
    }

    #[test]
    fn limit_point_scales_with_order() {
        let prec = PrecisionConfig::new(128, 1e-30).unwrap();
        assert!(limit_exponent(6, &prec) > limit_exponent(2, &prec));
        let r = limit_mhs(Puncture::One, 6, &prec).unwrap();
        assert!(r.residual < 1e-30);
        assert!(r.t0 < 1e-32);
    }

    #[test]
    fn extension_matrices() {
        let bits = 256;
        let m = ext_class_matrix(&Complex::zero(bits), 1).unwrap();
        assert!((m.get(1, 1) - &Complex::two_pi_i(bits)).abs_f64() < 1e-70);
        assert!(m.get(0, 1).is_zero());
        let lx = Complex::from_f64(2.0, 0.0, bits).ln();
        let m = ext_class_matrix(&lx, 2).unwrap();
        assert_eq!(m.get(0, 1), &lx);
        assert!((m.get(1, 1) - &Complex::two_pi_i(bits).square()).abs_f64() < 1e-70);
        assert!(ext_class_matrix(&lx, 0).is_err());
    }
}
